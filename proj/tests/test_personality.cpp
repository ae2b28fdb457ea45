#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "pncf/personality.hpp"
#include "pncf/rng.hpp"

using namespace pncf;

namespace {

// AGR=54.05 CON=34.87 NEU=25.96 EXT=54.39 OPEN=42.71, canonical order
const OceanScores kReceptivitiSample({42.71, 34.87, 54.39, 54.05, 25.96});
const OceanScores kWorkedExample({30, 70, 50, 30, 20});

}  // namespace

TEST_SUITE_BEGIN("personality");

TEST_CASE("most_salient picks the maximum trait") {
  CHECK(most_salient(kReceptivitiSample) == Trait::extroversion);
  CHECK(most_salient(OceanScores({50, 50, 50, 50, 50})) == Trait::openness);
  CHECK(most_salient(OceanScores({0, 0, 0, 0, 100})) == Trait::neuroticism);
  // tie between conscientiousness and agreeableness: lowest index wins
  CHECK(most_salient(OceanScores({10, 60, 20, 60, 30})) ==
        Trait::conscientiousness);
}

TEST_CASE("soft_weights at the default temperature") {
  const TraitWeights w = soft_weights(kWorkedExample, 100.0);
  // independent evaluation of exp(0.3)/sum ... exp(0.2)/sum
  const std::array<double, 5> raw{std::exp(0.3), std::exp(0.7), std::exp(0.5),
                                  std::exp(0.3), std::exp(0.2)};
  const double sum = raw[0] + raw[1] + raw[2] + raw[3] + raw[4];
  const std::array<double, 5> frozen{0.17800, 0.26554, 0.21741, 0.17800,
                                     0.16106};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(w.at(i) == doctest::Approx(raw[i] / sum).epsilon(1e-12));
    CHECK(w.at(i) == doctest::Approx(frozen[i]).epsilon(1e-4));
  }
}

TEST_CASE("soft_weights uniform for equal scores") {
  const TraitWeights w = soft_weights(OceanScores({40, 40, 40, 40, 40}), 100.0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(w.at(i) == doctest::Approx(0.2));
}

TEST_CASE("soft_weights concentrates on the salient trait as T -> 0") {
  rng::Stream s(rng::key(5));
  for (int rep = 0; rep < 50; ++rep) {
    std::array<double, 5> values{};
    for (double& v : values) v = 100.0 * s.next_double();
    const OceanScores scores(values);
    const TraitWeights w = soft_weights(scores, 1e-3);
    const auto top = static_cast<std::size_t>(most_salient(scores));
    CHECK(w.at(top) > 0.999);
  }
}

TEST_CASE("soft_weights rejects nonpositive temperature") {
  CHECK_THROWS_AS(soft_weights(kWorkedExample, 0.0), ConfigError);
  CHECK_THROWS_AS(soft_weights(kWorkedExample, -2.0), ConfigError);
}

TEST_CASE("soft_weights stays on the simplex") {
  rng::Stream s(rng::key(6));
  for (int rep = 0; rep < 200; ++rep) {
    std::array<double, 5> values{};
    for (double& v : values) v = 100.0 * s.next_double();
    const double temperature = std::exp(6.0 * (s.next_double() - 0.5));
    const TraitWeights w = soft_weights(OceanScores(values), temperature);
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(w.at(i) >= 0.0);
      sum += w.at(i);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    // argmax consistency for tie-free scores
    const auto top = static_cast<std::size_t>(most_salient(OceanScores(values)));
    for (std::size_t i = 0; i < 5; ++i) {
      if (i != top) CHECK(w.at(top) >= w.at(i));
    }
  }
}

TEST_CASE("hard_vector worked example and variants") {
  const auto v = hard_vector(kWorkedExample);
  CHECK(v == std::array<double, 5>{0.3, 0.7, 0.5, 0.3, 0.2});

  const auto zeros = hard_vector(OceanScores({0, 0, 0, 0, 0}));
  CHECK(zeros == std::array<double, 5>{0, 0, 0, 0, 0});

  const auto sample = hard_vector(kReceptivitiSample);
  CHECK(sample[0] == doctest::Approx(0.4271));
  CHECK(sample[1] == doctest::Approx(0.3487));
  CHECK(sample[2] == doctest::Approx(0.5439));
  CHECK(sample[3] == doctest::Approx(0.5405));
  CHECK(sample[4] == doctest::Approx(0.2596));

  const auto unit = hard_vector(kWorkedExample, HardVectorPolicy::unit_sum);
  double sum = 0.0;
  for (double x : unit) sum += x;
  CHECK(sum == doctest::Approx(1.0));
  CHECK(unit[1] == doctest::Approx(0.7 / 2.0));
}

TEST_CASE("hard_vector is linear in the scores") {
  rng::Stream s(rng::key(7));
  for (int rep = 0; rep < 50; ++rep) {
    std::array<double, 5> values{};
    for (double& v : values) v = 100.0 * s.next_double();
    const double alpha = s.next_double();
    std::array<double, 5> scaled{};
    for (std::size_t i = 0; i < 5; ++i) scaled[i] = alpha * values[i];
    const auto full = hard_vector(OceanScores(values));
    const auto part = hard_vector(OceanScores(scaled));
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(part[i] == doctest::Approx(alpha * full[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("import rescale midpoint and endpoints") {
  CHECK(rescale_score(4.0, 1.0, 7.0) == doctest::Approx(50.0));
  CHECK(rescale_score(1.0, 1.0, 7.0) == 0.0);
  CHECK(rescale_score(7.0, 1.0, 7.0) == 100.0);
  CHECK(rescale_score(54.39, 0.0, 100.0) == doctest::Approx(54.39));
}

TEST_CASE("import_scores_csv remaps external column order") {
  std::istringstream in(
      "User ID,AGR,CON,NEU,EXT,OPEN\n"
      "A2GBIFL43U1LKJ,54.05,34.87,25.96,54.39,42.71\n");
  // no user_id column under that spelling
  CHECK_THROWS_AS(import_scores_csv(in, 0, 100), FormatError);

  std::istringstream ok(
      "user_id,AGR,CON,NEU,EXT,OPEN\n"
      "A2GBIFL43U1LKJ,54.05,34.87,25.96,54.39,42.71\n");
  const PersonalityTable table = import_scores_csv(ok, 0, 100);
  const OceanScores* scores = table.find("A2GBIFL43U1LKJ");
  REQUIRE(scores != nullptr);
  CHECK((*scores)[Trait::openness] == doctest::Approx(42.71));
  CHECK((*scores)[Trait::neuroticism] == doctest::Approx(25.96));
  CHECK(most_salient(*scores) == Trait::extroversion);
}

TEST_CASE("import_scores_csv questionnaire range") {
  std::istringstream in(
      "user_id,openness,conscientiousness,extroversion,agreeableness,neuroticism\n"
      "u1,4,1,7,4,4\n");
  const PersonalityTable table = import_scores_csv(in, 1, 7);
  const OceanScores* s = table.find("u1");
  REQUIRE(s != nullptr);
  CHECK((*s)[Trait::openness] == doctest::Approx(50.0));
  CHECK((*s)[Trait::conscientiousness] == 0.0);
  CHECK((*s)[Trait::extroversion] == 100.0);
}

TEST_CASE("import_scores_csv row-level errors carry the row number") {
  std::istringstream out_of_range(
      "user_id,openness,conscientiousness,extroversion,agreeableness,neuroticism\n"
      "u1,4,4,4,4,4\n"
      "u2,9,4,4,4,4\n");
  try {
    import_scores_csv(out_of_range, 1, 7);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream duplicate(
      "user_id,openness,conscientiousness,extroversion,agreeableness,neuroticism\n"
      "u1,4,4,4,4,4\n"
      "u1,5,5,5,5,5\n");
  CHECK_THROWS_AS(import_scores_csv(duplicate, 1, 7), ParseError);
}

TEST_CASE("rescale preserves order and hits the endpoints") {
  rng::Stream s(rng::key(8));
  const double low = 1.0, high = 7.0;
  double prev_in = low, prev_out = rescale_score(low, low, high);
  CHECK(prev_out == 0.0);
  for (int i = 0; i < 100; ++i) {
    const double x = prev_in + s.next_double() * (high - prev_in) * 0.1;
    const double y = rescale_score(x, low, high);
    CHECK(y >= prev_out);
    prev_in = x;
    prev_out = y;
  }
  CHECK(rescale_score(high, low, high) == 100.0);
}

TEST_CASE("scores csv round-trips through import at identity range") {
  PersonalityTable table;
  table.insert("a", OceanScores({12.5, 80.0, 45.25, 3.0, 99.0}),
               Provenance::lexicon);
  table.insert("b", kReceptivitiSample, Provenance::imported);
  std::ostringstream out;
  save_scores_csv(table, out);

  std::istringstream in(out.str());
  const PersonalityTable again = import_scores_csv(in, 0, 100);
  REQUIRE(again.size() == 2);
  for (const auto& entry : table.entries()) {
    const OceanScores* s = again.find(entry.user_id);
    REQUIRE(s != nullptr);
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      CHECK(s->at(t) == doctest::Approx(entry.scores.at(t)).epsilon(1e-9));
    }
  }
}

namespace {

Lexicon demo_lexicon() {
  const std::vector<std::tuple<Trait, std::string, double>> rows{
      {Trait::openness, "curious", 1.0},
      {Trait::openness, "conventional", -1.0},
      {Trait::conscientiousness, "careful", 1.0},
      {Trait::conscientiousness, "sloppy", -1.0},
      {Trait::extroversion, "love", 1.0},
      {Trait::extroversion, "party", 1.0},
      {Trait::extroversion, "shy", -1.0},
      {Trait::agreeableness, "kind", 1.0},
      {Trait::agreeableness, "rude", -1.0},
      {Trait::neuroticism, "awful", 1.0},
      {Trait::neuroticism, "calm", -1.0},
  };
  return Lexicon::from_rows(rows);
}

}  // namespace

TEST_CASE("lexicon_score neutral on empty text") {
  const Lexicon lex = demo_lexicon();
  const OceanScores s = lexicon_score("", lex);
  for (std::size_t t = 0; t < kTraitCount; ++t) CHECK(s.at(t) == 50.0);
}

TEST_CASE("lexicon_score favors the matched trait") {
  const Lexicon lex = demo_lexicon();
  const OceanScores s = lexicon_score("Love love LOVE this party!!!", lex);
  CHECK(s[Trait::extroversion] > 50.0);
  CHECK(most_salient(s) == Trait::extroversion);
  for (Trait t : {Trait::openness, Trait::conscientiousness,
                  Trait::agreeableness, Trait::neuroticism}) {
    CHECK(s[Trait::extroversion] > s[t]);
  }
}

TEST_CASE("lexicon_score invariant under text duplication") {
  const Lexicon lex = demo_lexicon();
  const std::string text = "I love this curious kind thing, not awful at all";
  const OceanScores once = lexicon_score(text, lex);
  const OceanScores twice = lexicon_score(text + " " + text, lex);
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    CHECK(once.at(t) == doctest::Approx(twice.at(t)).epsilon(1e-12));
  }
}

TEST_CASE("lexicon csv loader") {
  std::istringstream in(
      "trait,word,weight\n"
      "extroversion,love,1\n"
      "EXT,wow,0.5\n"
      "openness,curious,1\n"
      "conscientiousness,careful,1\n"
      "agreeableness,kind,1\n"
      "neuroticism,awful,1\n");
  const Lexicon lex = Lexicon::load_csv(in);
  CHECK(lex.words_for(Trait::extroversion) == 2);
  CHECK(lex.find("love") != nullptr);
  CHECK(lex.find("missing") == nullptr);

  std::istringstream missing(
      "trait,word,weight\n"
      "extroversion,love,1\n");
  CHECK_THROWS_AS(Lexicon::load_csv(missing), DataError);
}

TEST_CASE("baseline label assignment") {
  std::vector<std::string> users{"a", "b", "c"};
  const auto same = assign_same_labels(users, Trait::openness);
  for (const auto& u : users) CHECK(same.at(u) == Trait::openness);

  std::vector<std::string> many;
  many.reserve(100000);
  for (int i = 0; i < 100000; ++i) many.push_back("user" + std::to_string(i));
  const auto random = assign_random_labels(many, 99);
  std::array<double, 5> freq{};
  for (const auto& [_, t] : random) freq[static_cast<std::size_t>(t)] += 1.0;
  for (double f : freq) CHECK(f / 100000.0 == doctest::Approx(0.2).epsilon(0.05));

  const auto random2 = assign_random_labels(many, 99);
  CHECK(random == random2);
  const auto random3 = assign_random_labels(many, 100);
  CHECK(random != random3);
}

TEST_CASE("trait_distribution medians") {
  PersonalityTable one;
  one.insert("u", kReceptivitiSample, Provenance::imported);
  const auto single = trait_distribution(one, 10);
  CHECK(single[static_cast<std::size_t>(Trait::extroversion)].median ==
        doctest::Approx(54.39));

  PersonalityTable two;
  two.insert("a", OceanScores({40, 40, 40, 40, 40}), Provenance::imported);
  two.insert("b", OceanScores({60, 60, 60, 60, 60}), Provenance::imported);
  const auto pair = trait_distribution(two, 4);
  // lower-middle convention for even counts
  CHECK(pair[0].median == 40.0);
  std::size_t total = 0;
  for (std::size_t c : pair[0].histogram) total += c;
  CHECK(total == 2);

  PersonalityTable empty;
  CHECK_THROWS_AS(trait_distribution(empty, 10), DataError);
  CHECK_THROWS_AS(trait_distribution(two, 0), ConfigError);
}

TEST_CASE("trait_distribution recovers a synthetic normal median") {
  PersonalityTable table;
  rng::Stream s(rng::key(10));
  for (int i = 0; i < 10000; ++i) {
    std::array<double, 5> values{};
    for (double& v : values) {
      v = std::clamp(60.0 + 10.0 * s.next_normal(), 0.0, 100.0);
    }
    table.insert("u" + std::to_string(i), OceanScores(values),
                 Provenance::synthetic);
  }
  const auto dists = trait_distribution(table, 20);
  for (const auto& d : dists) {
    CHECK(d.median == doctest::Approx(60.0).epsilon(0.01));
    CHECK(d.mean == doctest::Approx(60.0).epsilon(0.01));
  }
}

TEST_SUITE_END();
