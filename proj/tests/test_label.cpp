#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pclabel/error.hpp"
#include "pclabel/label.hpp"

using namespace pclabel;
using fixtures::kAge;
using fixtures::kGender;
using fixtures::kMarital;
using fixtures::kRace;

namespace {

// Binary dataset over n attributes with every combination appearing once.
Dataset binary_cube(int n) {
  std::vector<AttributeSchema> schema;
  std::vector<std::vector<std::int32_t>> columns(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    schema.push_back({"b" + std::to_string(a), a, {"0", "1"},
                      AttributeKind::Categorical});
  }
  const int rows = 1 << n;
  for (int r = 0; r < rows; ++r) {
    for (int a = 0; a < n; ++a) {
      columns[static_cast<std::size_t>(a)].push_back((r >> a) & 1);
    }
  }
  return Dataset(std::move(schema), std::move(columns),
                 std::vector<std::int64_t>(static_cast<std::size_t>(rows), 1));
}

}  // namespace

TEST_CASE("building the worked-example label") {
  const Dataset d = fixtures::fragment();
  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));
  CHECK(l.pc().size() == 3);
  CHECK(l.dataset_size() == 18);
  for (const auto& g : l.pc()) CHECK(g.weight == 6);
  CHECK(l.vc().count(kGender, 0) == 9);
  CHECK(l.vc().count(kAge, 1) == 12);
  CHECK(l.vc().attribute_count() == 4);

  const Label empty = build_label(d, AttrSubset{});
  REQUIRE(empty.pc().size() == 1);
  CHECK(empty.pc()[0].pattern.empty());
  CHECK(empty.pc()[0].weight == 18);

  const Label full = build_label(d, d.all_attributes());
  CHECK(full.pc().size() == 18);  // all complete rows are distinct
}

TEST_CASE("label sizes on the fragment") {
  const Dataset d = fixtures::fragment();
  const fixtures::OracleTable table = fixtures::OracleTable::from(d);

  CHECK(label_size(d, AttrSubset::of({kGender, kAge})) == 4);
  CHECK(label_size(d, AttrSubset::of({kAge, kMarital})) == 3);

  // brute-force-derived sizes for the remaining pairs
  CHECK(fixtures::oracle_full_pattern_count(table, {kRace, kMarital}) == 9);
  CHECK(label_size(d, AttrSubset::of({kRace, kMarital})) == 9);
  CHECK(label_size(d, AttrSubset::of({kGender, kRace})) == 6);
  CHECK(label_size(d, AttrSubset::of({kGender, kMarital})) == 6);
  CHECK(label_size(d, AttrSubset::of({kAge, kRace})) == 6);

  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      CHECK(label_size(d, AttrSubset::of({a, b})) ==
            fixtures::oracle_full_pattern_count(table, {a, b}));
    }
  }
}

TEST_CASE("estimates of the worked example") {
  const Dataset d = fixtures::fragment();
  // gender = female, age = 20-39, marital = married
  const Pattern p =
      Pattern::from_pairs({{kGender, 0}, {kAge, 1}, {kMarital, 2}});

  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));
  CHECK(l.estimate(p) == 3.0);  // 6 * 9/18
  CHECK(abs_error(l, p, 3) == 0.0);

  const Label l2 = build_label(d, AttrSubset::of({kGender, kAge}));
  CHECK(l2.estimate(p) == 2.0);  // 6 * 6/18
  CHECK(abs_error(l2, p, 3) == 1.0);

  // pattern inside S is answered exactly
  const Pattern inside = Pattern::from_pairs({{kAge, 0}, {kMarital, 0}});
  CHECK(l.estimate(inside) == 6.0);
  CHECK(abs_error(l, inside, 6) == 0.0);
}

TEST_CASE("independence estimate on the binary cube") {
  const Dataset d = binary_cube(4);
  const Label l = build_label(d, AttrSubset{});
  const Pattern p = Pattern::from_pairs({{0, 0}, {1, 0}, {2, 0}});
  CHECK(l.estimate(p) == 2.0);  // 2^n * (1/2)^3 = 2^{n-3}
}

TEST_CASE("estimate validation") {
  const Dataset d = fixtures::fragment();
  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));
  CHECK_THROWS_AS(l.estimate(Pattern::from_pairs({{7, 0}})), ValidationError);
  CHECK_THROWS_AS(l.estimate(Pattern::from_pairs({{kRace, 5}})), ValidationError);
}

TEST_CASE("q_error") {
  CHECK(q_error(3.0, 3) == 1.0);
  CHECK(q_error(2.0, 3) == 1.5);
  CHECK(q_error(0.0, 7) == 7.0);  // est clamped to 1
  CHECK(q_error(0.5, 1) == 2.0);
  CHECK_THROWS_AS(q_error(1.0, 0), ValidationError);
}

TEST_CASE("evaluate in exact mode against a brute-force maximum") {
  const Dataset d = fixtures::fragment();
  const fixtures::OracleTable table = fixtures::OracleTable::from(d);
  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));

  std::vector<Pattern> rows;
  for (auto& g : patterns_over(d, d.all_attributes())) rows.push_back(g.pattern);

  const EvaluationReport report = evaluate(l, d, rows);
  double expected_max = 0.0;
  for (const auto& p : rows) {
    expected_max = std::max(
        expected_max, std::abs(static_cast<double>(fixtures::oracle_count(table, p)) -
                               l.estimate(p)));
  }
  CHECK(report.max_abs_error == expected_max);
  CHECK(report.max_abs_error == 0.0);  // this label is exact on complete rows
  CHECK(*report.mean_abs_error <= report.max_abs_error);
  CHECK(*report.max_q_error >= 1.0);
  CHECK(report.patterns_evaluated == 18);
  CHECK(report.patterns_skipped == 0);

  // a label over everything has zero error by construction
  const Label full = build_label(d, d.all_attributes());
  CHECK(evaluate(full, d, rows).max_abs_error == 0.0);

  // the gender+age label leaves residual error
  const Label l2 = build_label(d, AttrSubset::of({kGender, kAge}));
  const EvaluationReport r2 = evaluate(l2, d, rows);
  double expected2 = 0.0;
  for (const auto& p : rows) {
    expected2 = std::max(
        expected2, std::abs(static_cast<double>(fixtures::oracle_count(table, p)) -
                            l2.estimate(p)));
  }
  CHECK(r2.max_abs_error == expected2);
  CHECK(r2.max_abs_error > 0.0);
}

TEST_CASE("empty pattern set is rejected") {
  const Dataset d = fixtures::fragment();
  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));
  CHECK_THROWS_AS(evaluate(l, d, {}), ValidationError);
}

TEST_CASE("early exit matches exact mode when every estimate under-shoots") {
  // B copies A, so the S={A} label underestimates every complete row.
  std::istringstream in(
      "A,B,C\n"
      "a1,a1,c1\na1,a1,c1\na1,a1,c1\na1,a1,c1\n"
      "a2,a2,c1\na2,a2,c1\na2,a2,c1\na2,a2,c1\n"
      "a2,a2,c2\na2,a2,c2\n");
  const Dataset d = load_csv(in);
  const Label l = build_label(d, AttrSubset::of({0}));

  std::vector<Pattern> rows;
  for (auto& g : patterns_over(d, d.all_attributes())) rows.push_back(g.pattern);
  for (const auto& p : rows) {
    CHECK(l.estimate(p) < static_cast<double>(count_pattern(d, p)));
  }

  const EvaluationReport exact = evaluate(l, d, rows, EvalMode::Exact);
  const EvaluationReport sorted = evaluate(l, d, rows, EvalMode::SortedEarlyExit);
  CHECK(sorted.max_abs_error == exact.max_abs_error);
  CHECK(sorted.patterns_skipped > 0);
  CHECK(sorted.patterns_evaluated + sorted.patterns_skipped ==
        exact.patterns_evaluated);
  CHECK_FALSE(sorted.mean_abs_error.has_value());
  CHECK_FALSE(sorted.max_q_error.has_value());
}

TEST_CASE("exact evaluation is schedule independent") {
  const Dataset d = fixtures::fragment();
  const Label l = build_label(d, AttrSubset::of({kGender, kAge}));
  std::vector<Pattern> rows;
  for (auto& g : patterns_over(d, d.all_attributes())) rows.push_back(g.pattern);
  const EvaluationReport base = evaluate(l, d, rows, EvalMode::Exact, 1);
  for (int threads = 2; threads <= 8; ++threads) {
    const EvaluationReport r = evaluate(l, d, rows, EvalMode::Exact, threads);
    CHECK(r.max_abs_error == base.max_abs_error);
    CHECK(*r.mean_abs_error == *base.mean_abs_error);
    CHECK(*r.max_q_error == *base.max_q_error);
    CHECK(*r.mean_q_error == *base.mean_q_error);
    CHECK(r.max_abs_witness == base.max_abs_witness);
  }
}

TEST_CASE("serialization round trip and canonical bytes") {
  const Dataset d = fixtures::fragment();
  const Label l = build_label(d, AttrSubset::of({kAge, kMarital}));
  const std::string bytes = serialize(l);
  const Label back = deserialize(bytes);
  CHECK(back == l);
  CHECK(serialize(back) == bytes);

  SUBCASE("truncated input is a format error") {
    CHECK_THROWS_AS(deserialize(bytes.substr(0, bytes.size() / 2)), FormatError);
  }
  SUBCASE("version mismatch is a format error") {
    std::string tampered = bytes;
    const auto pos = tampered.find("\"format_version\":1");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 18, "\"format_version\":9");
    CHECK_THROWS_AS(deserialize(tampered), FormatError);
  }
  SUBCASE("fingerprint mismatch against a different dataset") {
    std::istringstream in("Gender,Age group\nFemale,under 20\nMale,20-39\n");
    const Dataset other = load_csv(in);
    CHECK_THROWS_AS(l.validate_against(other), ValidationError);
  }
}

TEST_CASE("estimation properties on random missing-free datasets") {
  std::mt19937_64 rng(77);
  fixtures::RandomDatasetSpec spec;
  spec.max_attrs = 5;
  spec.max_rows = 40;
  int dominance_hits = 0;
  for (int round = 0; round < 120; ++round) {
    const Dataset d = fixtures::random_dataset(rng, spec);
    const int n = d.attribute_count();

    std::vector<int> s2_idx, s1_idx;
    for (int a = 0; a < n; ++a) {
      if (rng() % 2) {
        s2_idx.push_back(a);
        if (rng() % 2) s1_idx.push_back(a);
      }
    }
    const AttrSubset s1{s1_idx}, s2{s2_idx};
    const Label l1 = build_label(d, s1);
    const Label l2 = build_label(d, s2);

    for (int draw = 0; draw < 6; ++draw) {
    // random pattern; then exactness, boundedness, q-error floor
    std::vector<Pattern::Binding> bindings;
    for (int a = 0; a < n; ++a) {
      if (rng() % 2) {
        bindings.push_back(
            {a, static_cast<std::int32_t>(
                    rng() % d.attribute(a).domain.size())});
      }
    }
    const Pattern p{bindings};

    const double est1 = l1.estimate(p);
    const double est2 = l2.estimate(p);
    CHECK(est1 >= 0.0);
    CHECK(est1 <= static_cast<double>(l1.restricted_count(restrict(p, s1))));
    const std::int64_t truth = count_pattern(d, p);
    if (truth > 0) {
      CHECK(q_error(est1, truth) >= 1.0);
    }

    // exactness whenever the pattern stays inside the subset
    const Pattern p_in = restrict(p, s2);
    CHECK(l2.estimate(p_in) == static_cast<double>(count_pattern(d, p_in)));

    // independence subsumption
    const Label l0 = build_label(d, AttrSubset{});
    double manual = static_cast<double>(d.size());
    const ValueCounts vc = value_counts(d);
    for (const auto& b : p.bindings()) {
      manual *= static_cast<double>(vc.count(b.attr, b.value)) /
                static_cast<double>(vc.total(b.attr));
    }
    CHECK(l0.estimate(p) == manual);

    // conditional dominance, antecedent filtered
    bool outside = false;
    for (const auto& b : p.bindings()) outside |= !s2.contains(b.attr);
    if (outside && !p.empty()) {
      const Pattern p_prime = restrict(p, s2);
      const double est1_prime = l1.estimate(p_prime);
      const double truth_prime = static_cast<double>(count_pattern(d, p_prime));
      const double t = static_cast<double>(truth);
      const bool both_over = est1_prime > truth_prime && est2 > t;
      const bool both_under = est1_prime < truth_prime && est2 < t;
      if (both_over || both_under) {
        ++dominance_hits;
        const double err1 = std::abs(t - est1);
        const double err2 = std::abs(t - est2);
        CHECK(err2 <= err1 + 1e-9);  // guard for 1-ulp ties
      }
    }
    }
  }
  CHECK(dominance_hits > 20);  // the filter must actually fire
}
