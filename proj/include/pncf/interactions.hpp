#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pncf/errors.hpp"
#include "pncf/reviews.hpp"

namespace pncf {

/// One user's qualifying-review concatenation plus counts.
struct UserDocument {
  std::string user_id;
  std::string text;  // qualifying reviews in input order, single-space joined
  std::size_t qualifying_review_count = 0;
  std::size_t total_words = 0;
  std::vector<std::string> reviewed_items;  // sorted, distinct

  bool operator==(const UserDocument&) const = default;
};

/// Dense-indexed user-item interactions. `items_by_user` is sorted and
/// deduplicated; `order_by_user` keeps first-interaction input order so a
/// "last" hold-out policy stays meaningful.
struct InteractionSet {
  std::vector<std::string> user_ids;  // dense index -> id
  std::vector<std::string> item_ids;
  std::unordered_map<std::string, std::size_t> user_index;
  std::unordered_map<std::string, std::size_t> item_index;
  std::vector<std::vector<std::size_t>> items_by_user;
  std::vector<std::vector<std::size_t>> order_by_user;

  std::size_t user_count() const { return user_ids.size(); }
  std::size_t item_count() const { return item_ids.size(); }
  std::size_t interaction_count() const;

  std::size_t add_user(const std::string& id);
  std::size_t add_item(const std::string& id);
  /// Inserts (user,item) once; duplicates collapse.
  void add_interaction(std::size_t user, std::size_t item);
  bool has(std::size_t user, std::size_t item) const;
};

struct FilterOptions {
  std::size_t min_words = 30;
  std::size_t max_words = 80;
  std::size_t min_items = 10;
};

struct FilterCounts {
  std::size_t users_total = 0;
  std::size_t users_retained = 0;
  std::size_t reviews_total = 0;
  std::size_t reviews_qualifying = 0;
};

struct FilterResult {
  std::vector<UserDocument> documents;  // retained users, input order
  InteractionSet interactions;
  FilterCounts counts;
};

/// Active-user filter: a review qualifies iff its word count is within
/// [min_words, max_words]; a user is retained iff qualifying reviews cover
/// at least min_items distinct items. Interactions of retained users keep
/// all their reviewed items, qualifying or not.
FilterResult filter_active(std::span<const ReviewRecord> records,
                           const FilterOptions& options = {});

struct DatasetStats {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t ratings = 0;
  double density_percent = 0.0;
  double avg_words_per_user = 0.0;
  double avg_words_per_review = 0.0;
};

double density_percent(std::size_t users, std::size_t items, std::size_t ratings);

/// Word averages cover retained users and their qualifying reviews; an
/// empty interaction set is an error. `documents` may be empty (synthetic
/// data), in which case the word averages are zero.
DatasetStats dataset_stats(const InteractionSet& interactions,
                           std::span<const UserDocument> documents);

enum class HoldoutPolicy { random, last };

/// Per-user train/held-out partition. held_out[u] is -1 for users with a
/// single interaction; they stay train-only.
struct LeaveOneOutSplit {
  InteractionSet train;
  std::vector<std::ptrdiff_t> held_out;
  std::uint64_t seed = 0;

  std::size_t eligible_users() const;
};

LeaveOneOutSplit leave_one_out_split(const InteractionSet& interactions,
                                     std::uint64_t seed,
                                     HoldoutPolicy policy = HoldoutPolicy::random);

struct TrainingSample {
  std::size_t user;
  std::size_t item;
  int label;  // 1 positive, 0 sampled negative
};

struct NegativeSampleResult {
  std::vector<TrainingSample> samples;
  std::size_t users_without_negatives = 0;
};

/// Emits every train positive followed by `ratio` uniform unobserved items
/// for it. Negatives never collide with the user's train or held-out items.
/// Users whose item universe is exhausted contribute positives only and are
/// counted in users_without_negatives.
NegativeSampleResult sample_train_negatives(const LeaveOneOutSplit& split,
                                            std::size_t ratio,
                                            std::uint64_t seed);

}  // namespace pncf
