#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pncf/errors.hpp"

namespace pncf {

/// Canonical trait order; every vector layout and CSV column follows it.
enum class Trait {
  openness = 0,
  conscientiousness = 1,
  extroversion = 2,
  agreeableness = 3,
  neuroticism = 4,
};

inline constexpr std::size_t kTraitCount = 5;
inline constexpr std::array<Trait, kTraitCount> kAllTraits{
    Trait::openness, Trait::conscientiousness, Trait::extroversion,
    Trait::agreeableness, Trait::neuroticism};

std::string_view trait_name(Trait t);        // "openness", ...
std::string_view trait_short_name(Trait t);  // "OPEN", "CON", "EXT", "AGR", "NEU"
Trait parse_trait(std::string_view name);    // accepts either form, any case

/// Five real trait scores, each in [0,100]; range enforced on construction.
class OceanScores {
 public:
  explicit OceanScores(const std::array<double, kTraitCount>& values);

  double operator[](Trait t) const { return values_[static_cast<std::size_t>(t)]; }
  double at(std::size_t i) const { return values_[i]; }
  const std::array<double, kTraitCount>& values() const { return values_; }

  bool operator==(const OceanScores&) const = default;

 private:
  std::array<double, kTraitCount> values_;
};

/// Point on the 5-simplex (nonnegative, sums to 1 within 1e-9).
class TraitWeights {
 public:
  explicit TraitWeights(const std::array<double, kTraitCount>& values);

  double operator[](Trait t) const { return values_[static_cast<std::size_t>(t)]; }
  double at(std::size_t i) const { return values_[i]; }
  const std::array<double, kTraitCount>& values() const { return values_; }

 private:
  std::array<double, kTraitCount> values_;
};

/// Trait with the maximum score; ties break to the lowest canonical index.
Trait most_salient(const OceanScores& scores);

/// softmax(score/temperature) in canonical order. temperature must be > 0.
TraitWeights soft_weights(const OceanScores& scores, double temperature = 100.0);

enum class HardVectorPolicy {
  scale_by_100,  // default: element-wise division by 100, not renormalized
  unit_sum,      // divide by the score sum so elements add to 1
};

std::array<double, kTraitCount> hard_vector(
    const OceanScores& scores,
    HardVectorPolicy policy = HardVectorPolicy::scale_by_100);

enum class Provenance { imported, lexicon, synthetic };

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

/// user id -> scores, insertion-ordered for deterministic serialization.
class PersonalityTable {
 public:
  struct Entry {
    std::string user_id;
    OceanScores scores;
    Provenance provenance;
  };

  void insert(std::string user_id, OceanScores scores, Provenance provenance);
  const OceanScores* find(const std::string& user_id) const;
  const Entry* find_entry(const std::string& user_id) const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Imports a score CSV whose header names the five canonical traits (any
/// column order) plus user_id, then affinely rescales [low,high] -> [0,100].
PersonalityTable import_scores_csv(std::istream& in, double low, double high,
                                   Provenance provenance = Provenance::imported);

void save_scores_csv(const PersonalityTable& table, std::ostream& out);

/// Affine rescale of one value from [low,high] to [0,100].
double rescale_score(double value, double low, double high);

// -- lexicon stand-in for the review-text scorer -----------------------------

/// Signed word weights per trait. A stand-in for a commercial text-psychology
/// scorer so the pipeline runs offline; carries no psychometric claims.
class Lexicon {
 public:
  static Lexicon from_rows(
      std::span<const std::tuple<Trait, std::string, double>> rows,
      double squash_k = 10.0);
  /// Plain-text rows `trait,word,weight`.
  static Lexicon load_csv(std::istream& in, double squash_k = 10.0);

  const std::array<double, kTraitCount>* find(const std::string& token) const;
  std::size_t words_for(Trait t) const {
    return words_per_trait_[static_cast<std::size_t>(t)];
  }
  double squash_k() const { return squash_k_; }

 private:
  std::unordered_map<std::string, std::array<double, kTraitCount>> entries_;
  std::array<std::size_t, kTraitCount> words_per_trait_{};
  double squash_k_ = 10.0;
};

/// Per trait: raw = sum of matched token weights / total tokens, squashed to
/// [0,100] by 100*logistic(k*raw). Matching is case-insensitive with
/// punctuation stripped from token edges; empty text scores neutral 50s.
OceanScores lexicon_score(std::string_view text, const Lexicon& lexicon);

// -- baseline label assignment ------------------------------------------------

std::unordered_map<std::string, Trait> assign_random_labels(
    std::span<const std::string> users, std::uint64_t seed);
std::unordered_map<std::string, Trait> assign_same_labels(
    std::span<const std::string> users, Trait trait);

// -- distribution analysis ----------------------------------------------------

struct TraitDistribution {
  Trait trait;
  std::vector<std::size_t> histogram;  // equal-width bins over [0,100]
  double median = 0.0;                 // lower middle value for even counts
  double mean = 0.0;
};

std::array<TraitDistribution, kTraitCount> trait_distribution(
    const PersonalityTable& table, std::size_t bins);

}  // namespace pncf
