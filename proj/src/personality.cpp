#include "pncf/personality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "pncf/rng.hpp"

namespace pncf {
namespace {

constexpr std::array<std::string_view, kTraitCount> kNames{
    "openness", "conscientiousness", "extroversion", "agreeableness",
    "neuroticism"};
constexpr std::array<std::string_view, kTraitCount> kShortNames{
    "OPEN", "CON", "EXT", "AGR", "NEU"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double_field(const std::string& field, std::size_t line_no,
                          const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != trim(field).size() && used != field.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("cannot parse ") + what + " '" +
                                  field + "' as a number");
  }
}

}  // namespace

std::string_view trait_name(Trait t) {
  return kNames[static_cast<std::size_t>(t)];
}

std::string_view trait_short_name(Trait t) {
  return kShortNames[static_cast<std::size_t>(t)];
}

Trait parse_trait(std::string_view name) {
  const std::string lower = lowercase(name);
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    if (lower == kNames[i] || lower == lowercase(kShortNames[i])) {
      return static_cast<Trait>(i);
    }
  }
  throw ConfigError("unknown trait name '" + std::string(name) + "'");
}

OceanScores::OceanScores(const std::array<double, kTraitCount>& values)
    : values_(values) {
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0 || values_[i] > 100.0) {
      throw DataError("OceanScores: " + std::string(kNames[i]) + " score " +
                      std::to_string(values_[i]) + " outside [0,100]");
    }
  }
}

TraitWeights::TraitWeights(const std::array<double, kTraitCount>& values)
    : values_(values) {
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0)) throw DataError("TraitWeights: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DataError("TraitWeights: sum " + std::to_string(sum) + " is not 1");
  }
}

Trait most_salient(const OceanScores& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kTraitCount; ++i) {
    if (scores.at(i) > scores.at(best)) best = i;
  }
  return static_cast<Trait>(best);
}

TraitWeights soft_weights(const OceanScores& scores, double temperature) {
  if (!(temperature > 0.0)) {
    throw ConfigError("soft_weights: temperature must be > 0, got " +
                      std::to_string(temperature));
  }
  // max-shifted softmax; changes nothing mathematically, keeps exp bounded
  double max_score = scores.at(0);
  for (std::size_t i = 1; i < kTraitCount; ++i) {
    max_score = std::max(max_score, scores.at(i));
  }
  std::array<double, kTraitCount> w{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kTraitCount; ++i) {
    w[i] = std::exp((scores.at(i) - max_score) / temperature);
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return TraitWeights(w);
}

std::array<double, kTraitCount> hard_vector(const OceanScores& scores,
                                            HardVectorPolicy policy) {
  std::array<double, kTraitCount> out{};
  if (policy == HardVectorPolicy::scale_by_100) {
    for (std::size_t i = 0; i < kTraitCount; ++i) out[i] = scores.at(i) / 100.0;
    return out;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < kTraitCount; ++i) sum += scores.at(i);
  if (sum <= 0.0) {
    out.fill(1.0 / kTraitCount);
    return out;
  }
  for (std::size_t i = 0; i < kTraitCount; ++i) out[i] = scores.at(i) / sum;
  return out;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::imported: return "imported";
    case Provenance::lexicon: return "lexicon";
    case Provenance::synthetic: return "synthetic";
  }
  return "imported";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "imported") return Provenance::imported;
  if (name == "lexicon") return Provenance::lexicon;
  if (name == "synthetic") return Provenance::synthetic;
  throw ConfigError("unknown provenance '" + std::string(name) + "'");
}

void PersonalityTable::insert(std::string user_id, OceanScores scores,
                              Provenance provenance) {
  auto [it, inserted] = index_.try_emplace(user_id, entries_.size());
  if (!inserted) {
    throw DataError("duplicate personality entry for user '" + user_id + "'");
  }
  entries_.push_back({std::move(user_id), scores, provenance});
}

const OceanScores* PersonalityTable::find(const std::string& user_id) const {
  const Entry* e = find_entry(user_id);
  return e == nullptr ? nullptr : &e->scores;
}

const PersonalityTable::Entry* PersonalityTable::find_entry(
    const std::string& user_id) const {
  const auto it = index_.find(user_id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

double rescale_score(double value, double low, double high) {
  return (value - low) / (high - low) * 100.0;
}

PersonalityTable import_scores_csv(std::istream& in, double low, double high,
                                   Provenance provenance) {
  if (!(low < high)) {
    throw ConfigError("import_scores_csv: need low < high, got [" +
                      std::to_string(low) + "," + std::to_string(high) + "]");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("import_scores_csv: empty file");
  }

  // header: locate user_id and the five canonical trait columns by name,
  // in any order (external exports often use AGR,CON,NEU,EXT,OPEN)
  const auto header = split_csv_row(line);
  std::ptrdiff_t user_col = -1;
  std::array<std::ptrdiff_t, kTraitCount> trait_col;
  trait_col.fill(-1);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = lowercase(trim(header[c]));
    if (name == "user_id" || name == "userid" || name == "user") {
      user_col = static_cast<std::ptrdiff_t>(c);
      continue;
    }
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      if (name == kNames[t] || name == lowercase(kShortNames[t])) {
        trait_col[t] = static_cast<std::ptrdiff_t>(c);
      }
    }
  }
  if (user_col < 0) throw FormatError("import_scores_csv: no user_id column");
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    if (trait_col[t] < 0) {
      throw FormatError("import_scores_csv: missing column for trait '" +
                        std::string(kNames[t]) + "'");
    }
  }

  PersonalityTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() < header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    }
    const std::string user = trim(fields[static_cast<std::size_t>(user_col)]);
    if (user.empty()) throw ParseError(line_no, "empty user_id");

    std::array<double, kTraitCount> values{};
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      const double raw = parse_double_field(
          fields[static_cast<std::size_t>(trait_col[t])], line_no,
          std::string(kNames[t]).c_str());
      if (raw < low || raw > high) {
        throw ParseError(line_no, std::string(kNames[t]) + " score " +
                                      std::to_string(raw) +
                                      " outside source range [" +
                                      std::to_string(low) + "," +
                                      std::to_string(high) + "]");
      }
      values[t] = rescale_score(raw, low, high);
    }
    try {
      table.insert(user, OceanScores(values), provenance);
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (table.empty()) throw DataError("import_scores_csv: no data rows");
  return table;
}

void save_scores_csv(const PersonalityTable& table, std::ostream& out) {
  out << "user_id,openness,conscientiousness,extroversion,agreeableness,"
         "neuroticism,provenance\n";
  char buf[64];
  for (const auto& entry : table.entries()) {
    out << entry.user_id;
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      std::snprintf(buf, sizeof buf, "%.6f", entry.scores.at(t));
      out << ',' << buf;
    }
    out << ',' << provenance_name(entry.provenance) << '\n';
  }
}

// -- lexicon ------------------------------------------------------------------

Lexicon Lexicon::from_rows(
    std::span<const std::tuple<Trait, std::string, double>> rows,
    double squash_k) {
  Lexicon lex;
  lex.squash_k_ = squash_k;
  for (const auto& [trait, word, weight] : rows) {
    auto& weights = lex.entries_[lowercase(word)];
    weights[static_cast<std::size_t>(trait)] += weight;
    ++lex.words_per_trait_[static_cast<std::size_t>(trait)];
  }
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    if (lex.words_per_trait_[t] == 0) {
      throw DataError("lexicon has no words for trait '" +
                      std::string(kNames[t]) + "'");
    }
  }
  return lex;
}

Lexicon Lexicon::load_csv(std::istream& in, double squash_k) {
  std::vector<std::tuple<Trait, std::string, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (line_no == 1 && lowercase(trimmed).starts_with("trait,")) continue;
    const auto fields = split_csv_row(trimmed);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected trait,word,weight");
    }
    Trait trait;
    try {
      trait = parse_trait(trim(fields[0]));
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
    rows.emplace_back(trait, trim(fields[1]),
                      parse_double_field(fields[2], line_no, "weight"));
  }
  return from_rows(rows, squash_k);
}

const std::array<double, kTraitCount>* Lexicon::find(
    const std::string& token) const {
  const auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

OceanScores lexicon_score(std::string_view text, const Lexicon& lexicon) {
  std::array<double, kTraitCount> raw{};
  std::size_t tokens = 0;

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    ++tokens;

    // strip punctuation from the edges, lowercase the core
    std::size_t a = i, b = j;
    while (a < b && !std::isalnum(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && !std::isalnum(static_cast<unsigned char>(text[b - 1]))) --b;
    if (b > a) {
      const std::string token = lowercase(text.substr(a, b - a));
      if (const auto* weights = lexicon.find(token)) {
        for (std::size_t t = 0; t < kTraitCount; ++t) raw[t] += (*weights)[t];
      }
    }
    i = j;
  }

  std::array<double, kTraitCount> scores{};
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    const double ratio = tokens == 0 ? 0.0 : raw[t] / static_cast<double>(tokens);
    scores[t] = 100.0 / (1.0 + std::exp(-lexicon.squash_k() * ratio));
  }
  return OceanScores(scores);
}

// -- baseline labels ----------------------------------------------------------

std::unordered_map<std::string, Trait> assign_random_labels(
    std::span<const std::string> users, std::uint64_t seed) {
  std::unordered_map<std::string, Trait> labels;
  labels.reserve(users.size());
  for (const std::string& user : users) {
    rng::Stream stream(rng::key(seed, 0x6c6162656c, rng::fnv1a(user)));
    labels.emplace(user, static_cast<Trait>(stream.next_below(kTraitCount)));
  }
  return labels;
}

std::unordered_map<std::string, Trait> assign_same_labels(
    std::span<const std::string> users, Trait trait) {
  std::unordered_map<std::string, Trait> labels;
  labels.reserve(users.size());
  for (const std::string& user : users) labels.emplace(user, trait);
  return labels;
}

// -- distribution -------------------------------------------------------------

std::array<TraitDistribution, kTraitCount> trait_distribution(
    const PersonalityTable& table, std::size_t bins) {
  if (table.empty()) throw DataError("trait_distribution: empty table");
  if (bins < 1) throw ConfigError("trait_distribution: bins must be >= 1");

  std::array<TraitDistribution, kTraitCount> out;
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    TraitDistribution& dist = out[t];
    dist.trait = static_cast<Trait>(t);
    dist.histogram.assign(bins, 0);

    std::vector<double> values;
    values.reserve(table.size());
    double sum = 0.0;
    for (const auto& entry : table.entries()) {
      const double v = entry.scores.at(t);
      values.push_back(v);
      sum += v;
      auto bin = static_cast<std::size_t>(v / 100.0 * static_cast<double>(bins));
      if (bin >= bins) bin = bins - 1;  // value 100 lands in the top bin
      ++dist.histogram[bin];
    }
    std::sort(values.begin(), values.end());
    dist.median = values[(values.size() - 1) / 2];
    dist.mean = sum / static_cast<double>(values.size());
  }
  return out;
}

}  // namespace pncf
