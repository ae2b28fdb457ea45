#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "pncf/evaluation.hpp"
#include "pncf/interactions.hpp"
#include "pncf/training.hpp"

namespace pncf {

/// Fixed-precision decimal formatting; all CSV and report output goes
/// through this so reruns are byte-identical.
std::string format_double(double value, int precision = 6);

// interactions: `user_id,item_id` rows plus an index sidecar that pins the
// dense index assignment (`kind,index,id`)
void write_interactions_csv(const InteractionSet& set, std::ostream& main_out,
                            std::ostream& index_out);
InteractionSet load_interactions_csv(std::istream& main_in,
                                     std::istream& index_in);

/// Sidecar path for an interactions CSV: foo.csv -> foo.index.csv.
std::string sidecar_path(const std::string& interactions_path);

// user documents as JSON-lines
void write_documents_jsonl(std::span<const UserDocument> docs,
                           std::ostream& out);
std::vector<UserDocument> load_documents_jsonl(std::istream& in);

void write_stats_csv(const DatasetStats& stats, std::ostream& out);
void write_stats_table(const DatasetStats& stats, std::ostream& out);

void write_filter_report_csv(const FilterCounts& counts, std::ostream& out);

// `metric,K,value`
void write_metrics_csv(const MetricReport& report, std::ostream& out);
void write_metrics_table(const MetricReport& report, std::ostream& out);

// `trait,count,hr,ndcg`
void write_breakdown_csv(const TraitBreakdown& breakdown, std::ostream& out);
void write_breakdown_table(const TraitBreakdown& breakdown, std::ostream& out);

// per-user ranks: `user_id,rank` (consumed by the breakdown stage)
void write_ranks_csv(std::span<const PerUserRank> ranks,
                     std::span<const std::string> user_ids, std::ostream& out);
std::vector<std::pair<std::string, std::size_t>> load_ranks_csv(std::istream& in);

// `epoch,train_loss,val_hr10,val_ndcg10,seconds`
void write_epoch_log_csv(std::span<const EpochReport> reports,
                         std::ostream& out);

}  // namespace pncf
