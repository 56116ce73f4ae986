#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vaqw/examples.hpp"
#include "vaqw/group.hpp"

using namespace vaqw;

namespace {

Word random_word(const Alphabet& al, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> letter(0, al.size() - 1);
  Word w;
  for (std::size_t i = len(rng); i > 0; --i) w.push_back(static_cast<GeneratorId>(letter(rng)));
  return w;
}

std::vector<TableRow> rows_with(const TilingData& t, GeneratorId g, std::size_t coset, std::size_t target,
                                LatticeVector shift) {
  auto rows = t.rows();
  for (auto& r : rows) {
    if (r.generator == g && r.coset == coset) {
      r.target = target;
      r.shift = std::move(shift);
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("alphabet ids pair each generator with its inverse") {
  const Alphabet al({{"a", "A"}, {"b", "B"}});
  CHECK(al.size() == 4);
  CHECK(al.positive_count() == 2);
  CHECK(al.inverse(al.id("a")) == al.id("A"));
  CHECK(al.inverse(al.id("B")) == al.id("b"));
  CHECK(al.label(al.id("B")).is_inverse);
  CHECK(al.label(al.id("B")).base == "b");
  CHECK_FALSE(al.find("c").has_value());
  CHECK_THROWS_AS(al.id("c"), UnknownGeneratorError);
  CHECK_THROWS_AS(Alphabet({{"a", "a"}}), std::invalid_argument);
  CHECK(al.format({}) == "e");
  CHECK(al.spell(al.word({"a", "B"})) == std::vector<std::string>{"a", "B"});
}

TEST_CASE("word helpers") {
  const Alphabet al({{"a", "A"}, {"b", "B"}});
  const Word w = al.word({"a", "b", "b"});
  CHECK(inverse_word(w, al) == al.word({"B", "B", "A"}));
  CHECK(power(w, 2, al).size() == 6);
  CHECK(power(w, -1, al) == inverse_word(w, al));
  CHECK(power(w, 0, al).empty());
  CHECK(concat(al.word({"a"}), al.word({"b"})) == al.word({"a", "b"}));
}

TEST_CASE("tiling constructor rejects incomplete or malformed tables") {
  const TilingData t = g2_tiling();
  auto rows = t.rows();
  rows.pop_back();
  CHECK_THROWS_AS(TilingData(t.alphabet(), 2, t.rep_words(), rows), TilingError);
  rows = t.rows();
  rows.push_back(rows.front());
  CHECK_THROWS_AS(TilingData(t.alphabet(), 2, t.rep_words(), rows), TilingError);
  rows = t.rows();
  rows[0].target = 7;
  CHECK_THROWS_AS(TilingData(t.alphabet(), 2, t.rep_words(), rows), TilingError);
  rows = t.rows();
  rows[0].shift = {1};
  CHECK_THROWS_AS(TilingData(t.alphabet(), 2, t.rep_words(), rows), TilingError);
}

TEST_CASE("built-in tilings validate cleanly") {
  const ValidationReport r1 = validate_tiling(g1_tiling(), g1_presentation());
  CHECK_MESSAGE(r1.ok(), r1.summary());
  const ValidationReport r2 = validate_tiling(g2_tiling(), g2_presentation());
  CHECK_MESSAGE(r2.ok(), r2.summary());
  CHECK(g1_tiling().max_shift() == 1);
  CHECK(g2_tiling().max_shift() == 1);
}

TEST_CASE("relators close from every coset") {
  for (const auto& [p, t] : {std::pair{g1_presentation(), g1_tiling()}, std::pair{g2_presentation(), g2_tiling()}}) {
    for (const auto& r : p.relators) {
      for (std::size_t j = 0; j < t.index(); ++j) {
        const GroupElement start{{3, -2}, j};
        CHECK(apply_word(start, r, t) == start);
      }
    }
  }
}

TEST_CASE("G1 coset bookkeeping") {
  const TilingData t = g1_tiling();
  const Alphabet& al = t.alphabet();
  CHECK(evaluate_word(al.word({"a", "a", "a"}), t) == GroupElement{{0, 0}, 3});
  CHECK(evaluate_word(al.word({"a^-1", "b"}), t) == GroupElement{{1, 0}, 0});
  CHECK(evaluate_word(al.word({"b", "a^-1"}), t) == GroupElement{{0, 1}, 0});
  // h_x and h_y commute.
  CHECK(evaluate_word(al.word({"a^-1", "b", "b", "a^-1"}), t) == evaluate_word(al.word({"b", "a^-1", "a^-1", "b"}), t));
}

TEST_CASE("G2 element arithmetic: h_1 = h_2 - h_3") {
  const TilingData t = g2_tiling();
  const Alphabet& al = t.alphabet();
  const GroupElement h1 = evaluate_word(al.word({"b", "a"}), t);
  const GroupElement h2 = evaluate_word(al.word({"a", "a"}), t);
  const GroupElement h3 = evaluate_word(al.word({"a^-1", "b"}), t);
  CHECK(h1 == GroupElement{{1, -1}, 0});
  CHECK(h2 == GroupElement{{1, 0}, 0});
  CHECK(h3 == GroupElement{{0, 1}, 0});
  CHECK(multiply(h2, invert_element(h3, t), t) == h1);
  CHECK(evaluate_word(al.word({"a^-1"}), t) == GroupElement{{0, 0}, 1});
  CHECK(evaluate_word(al.word({"a^-1", "b"}), t) == GroupElement{{0, 1}, 0});
}

TEST_CASE("element arithmetic is a group action (property)") {
  std::mt19937_64 rng(11);
  for (const auto& t : {g1_tiling(), g2_tiling()}) {
    const Alphabet& al = t.alphabet();
    for (int trial = 0; trial < 300; ++trial) {
      const Word u = random_word(al, rng, 12);
      const Word v = random_word(al, rng, 12);
      const Word w = random_word(al, rng, 12);
      const GroupElement eu = evaluate_word(u, t);
      const GroupElement ev = evaluate_word(v, t);
      const GroupElement ew = evaluate_word(w, t);
      CHECK(evaluate_word(concat(u, v), t) == multiply(eu, ev, t));
      CHECK(multiply(multiply(eu, ev, t), ew, t) == multiply(eu, multiply(ev, ew, t), t));
      CHECK(multiply(eu, invert_element(eu, t), t) == identity_element(t));
      CHECK(multiply(invert_element(eu, t), eu, t) == identity_element(t));
      CHECK(evaluate_word(concat(u, inverse_word(u, al)), t) == identity_element(t));
    }
  }
}

TEST_CASE("translation words land on the requested lattice vector") {
  for (const auto& t : {g1_tiling(), g2_tiling()}) {
    for (std::int64_t x = -3; x <= 3; ++x) {
      for (std::int64_t y = -3; y <= 3; ++y) {
        CHECK(evaluate_word(translation_word({x, y}, t), t) == GroupElement{{x, y}, 0});
      }
    }
  }
  const TilingData t = g2_tiling();
  const TilingData bare(t.alphabet(), 2, t.rep_words(), t.rows());
  CHECK_THROWS_AS(translation_word({1, 0}, bare), TilingError);
  CHECK(translation_word({0, 0}, bare).empty());
}

TEST_CASE("validation reports each defect kind") {
  const GroupPresentation p = g1_presentation();
  const TilingData t = g1_tiling();
  const Alphabet& al = t.alphabet();

  SUBCASE("shift typo breaks relator closure and inverse consistency") {
    const TilingData bad(al, 2, t.rep_words(), rows_with(t, al.id("b"), 0, 3, {1, 1}), t.basis_words());
    const auto r = validate_tiling(bad, p);
    CHECK(r.has(TilingIssueKind::relator_not_closed));
    CHECK(r.has(TilingIssueKind::inverse_inconsistent));
    CHECK(r.summary().find("relator-not-closed") != std::string::npos);
  }
  SUBCASE("non-permutation row") {
    const TilingData bad(al, 2, t.rep_words(), rows_with(t, al.id("a"), 0, 0, {0, 0}), t.basis_words());
    CHECK(validate_tiling(bad, p).has(TilingIssueKind::not_permutation));
  }
  SUBCASE("first representative must be e") {
    auto reps = t.rep_words();
    std::swap(reps[0], reps[1]);
    const TilingData bad(al, 2, reps, t.rows(), t.basis_words());
    CHECK(validate_tiling(bad, p).has(TilingIssueKind::identity_representative));
    CHECK(validate_tiling(bad, p).has(TilingIssueKind::representative_mismatch));
  }
  SUBCASE("duplicate representative") {
    auto reps = t.rep_words();
    reps[2] = al.word({"a"});
    const TilingData bad(al, 2, reps, t.rows(), t.basis_words());
    CHECK(validate_tiling(bad, p).has(TilingIssueKind::duplicate_representative));
  }
  SUBCASE("wrong basis word") {
    const TilingData bad(al, 2, t.rep_words(), t.rows(), {al.word({"b", "a^-1"}), al.word({"a^-1", "b"})});
    CHECK(validate_tiling(bad, p).has(TilingIssueKind::basis_mismatch));
  }
  SUBCASE("presentation on another alphabet") {
    const GroupPresentation other{Alphabet({{"x", "X"}, {"y", "Y"}}), {}};
    CHECK(validate_tiling(t, other).has(TilingIssueKind::alphabet_mismatch));
  }
  SUBCASE("a relator that does not hold") {
    GroupPresentation wrong = p;
    wrong.relators.push_back(al.word({"a", "a"}));
    const auto r = validate_tiling(t, wrong);
    CHECK(r.has(TilingIssueKind::relator_not_closed));
    CHECK_FALSE(r.has(TilingIssueKind::inverse_inconsistent));
  }
}

TEST_CASE("formatting") {
  CHECK(format_vector({1, -2}) == "(1,-2)");
  CHECK(format_element({{0, 3}, 2}) == "[(0,3), c2]");
}
