#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pclabel/dataset.hpp"
#include "pclabel/error.hpp"

using namespace pclabel;
using fixtures::OracleTable;

TEST_CASE("fragment loads with first-occurrence domains") {
  const Dataset d = fixtures::fragment();
  CHECK(d.size() == 18);
  CHECK(d.physical_rows() == 18);
  CHECK(d.attribute_count() == 4);
  CHECK(d.attribute(fixtures::kRace).domain.size() == 3);
  CHECK(d.attribute(fixtures::kGender).domain ==
        std::vector<std::string>{"Female", "Male"});
  CHECK(d.attribute(fixtures::kAge).domain ==
        std::vector<std::string>{"under 20", "20-39"});
  CHECK(d.attribute(fixtures::kMarital).domain ==
        std::vector<std::string>{"single", "divorced", "married"});
}

TEST_CASE("single cell csv") {
  std::istringstream in("A\nx\n");
  const Dataset d = load_csv(in);
  CHECK(d.size() == 1);
  CHECK(d.attribute(0).domain == std::vector<std::string>{"x"});
}

TEST_CASE("empty cells become missing and leave value counts short") {
  std::istringstream in("A,B\nx,1\n,2\ny,1\n");
  const Dataset d = load_csv(in);
  CHECK(d.size() == 3);
  CHECK(d.column(0)[1] == kMissing);
  const ValueCounts vc = value_counts(d);
  CHECK(vc.total(0) == 2);  // row_count - 1
  CHECK(vc.total(1) == 3);
}

TEST_CASE("loader errors") {
  SUBCASE("ragged row names the row") {
    std::istringstream in("A,B\nx,1\ny\n");
    CHECK_THROWS_WITH_AS(load_csv(in), doctest::Contains("row 3"), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_csv(in), ParseError);
  }
  SUBCASE("header only") {
    std::istringstream in("A,B\n");
    CHECK_THROWS_AS(load_csv(in), ParseError);
  }
  SUBCASE("attribute with every cell missing") {
    std::istringstream in("A,B\nx,\ny,\n");
    CHECK_THROWS_WITH_AS(load_csv(in), doctest::Contains("B"), ParseError);
  }
  SUBCASE("bad weight") {
    std::istringstream in("A,n\nx,0\n");
    CsvOptions opt;
    opt.weight_column = "n";
    CHECK_THROWS_AS(load_csv(in, opt), ParseError);
  }
}

TEST_CASE("weight column replicates logical rows") {
  std::istringstream in("A,B,count\nx,1,3\ny,2,2\nx,2,1\n");
  CsvOptions opt;
  opt.weight_column = "count";
  const Dataset d = load_csv(in, opt);
  CHECK(d.attribute_count() == 2);
  CHECK(d.physical_rows() == 3);
  CHECK(d.size() == 6);
  CHECK(count_pattern(d, Pattern::from_pairs({{0, 0}})) == 4);  // A=x
  CHECK(count_pattern(d, Pattern::from_pairs({{0, 0}, {1, 1}})) == 1);
}

TEST_CASE("quoted csv fields") {
  std::istringstream in("A,B\n\"a,b\",\"say \"\"hi\"\"\"\nplain,other\n");
  const Dataset d = load_csv(in);
  CHECK(d.attribute(0).domain[0] == "a,b");
  CHECK(d.attribute(1).domain[0] == "say \"hi\"");
}

TEST_CASE("bucketize equal width") {
  std::ostringstream csv;
  csv << "v\n";
  for (int i = 1; i <= 10; ++i) csv << i << "\n";
  std::istringstream in(csv.str());
  Dataset d = load_csv(in);
  d = bucketize(d, 0, 5, BucketStrategy::EqualWidth);
  CHECK(d.attribute(0).domain.size() == 5);
  CHECK(d.attribute(0).kind == AttributeKind::BucketizedNumeric);
  const ValueCounts vc = value_counts(d);
  for (std::size_t b = 0; b < 5; ++b) CHECK(vc.count(0, static_cast<int>(b)) == 2);
}

TEST_CASE("bucketize constant column collapses to one bucket") {
  std::istringstream in("v\n4\n4\n4\n");
  Dataset d = load_csv(in);
  d = bucketize(d, 0, 3, BucketStrategy::EqualWidth);
  CHECK(d.attribute(0).domain == std::vector<std::string>{"[4,4]"});
}

TEST_CASE("bucketize equal frequency tie rule") {
  // equal values never straddle a boundary; earlier buckets take the surplus
  std::istringstream in("v\n1\n1\n1\n1\n100\n");
  Dataset d = load_csv(in);
  d = bucketize(d, 0, 2, BucketStrategy::EqualFrequency);
  REQUIRE(d.attribute(0).domain.size() == 2);
  const ValueCounts vc = value_counts(d);
  CHECK(vc.count(0, 0) == 4);
  CHECK(vc.count(0, 1) == 1);
}

TEST_CASE("bucketize error and edge handling") {
  SUBCASE("non-numeric label is named") {
    std::istringstream in("v\n1\ntwo\n");
    Dataset d = load_csv(in);
    CHECK_THROWS_WITH_AS(bucketize(d, 0, 2, BucketStrategy::EqualWidth),
                         doctest::Contains("two"), ValidationError);
  }
  SUBCASE("more bins than distinct values reduces silently") {
    std::istringstream in("v\n1\n2\n");
    Dataset d = load_csv(in);
    d = bucketize(d, 0, 5, BucketStrategy::EqualWidth);
    CHECK(d.attribute(0).domain.size() == 2);
  }
  SUBCASE("missing cells survive bucketing") {
    std::istringstream in("v,w\n1,a\n,a\n3,a\n");
    Dataset d = load_csv(in);
    d = bucketize(d, 0, 2, BucketStrategy::EqualWidth);
    CHECK(d.column(0)[1] == kMissing);
    CHECK(value_counts(d).total(0) == 2);
  }
  SUBCASE("empty middle bins are dropped") {
    std::istringstream in("v\n1\n10\n");
    Dataset d = load_csv(in);
    d = bucketize(d, 0, 5, BucketStrategy::EqualWidth);
    CHECK(d.attribute(0).domain.size() == 2);
    const ValueCounts vc = value_counts(d);
    CHECK(vc.count(0, 0) == 1);
    CHECK(vc.count(0, 1) == 1);
  }
}

TEST_CASE("count_pattern on the fragment") {
  const Dataset d = fixtures::fragment();
  // age group = under 20, marital status = single
  CHECK(count_pattern(d, Pattern::from_pairs({{fixtures::kAge, 0},
                                              {fixtures::kMarital, 0}})) == 6);
  CHECK(count_pattern(d, Pattern{}) == 18);
  // age group = under 20, marital status = divorced
  CHECK(count_pattern(d, Pattern::from_pairs({{fixtures::kAge, 0},
                                              {fixtures::kMarital, 1}})) == 0);
}

TEST_CASE("value counts match the worked example") {
  const Dataset d = fixtures::fragment();
  const ValueCounts vc = value_counts(d);
  CHECK(vc.count(fixtures::kGender, 0) == 9);   // female
  CHECK(vc.count(fixtures::kGender, 1) == 9);   // male
  CHECK(vc.count(fixtures::kAge, 0) == 6);      // under 20
  CHECK(vc.count(fixtures::kAge, 1) == 12);     // 20-39
  for (int v = 0; v < 3; ++v) {
    CHECK(vc.count(fixtures::kRace, v) == 6);
    CHECK(vc.count(fixtures::kMarital, v) == 6);
  }
}

TEST_CASE("patterns_over on the fragment") {
  const Dataset d = fixtures::fragment();
  SUBCASE("age + marital has three patterns of six") {
    const auto groups = patterns_over(d, AttrSubset::of({fixtures::kAge,
                                                         fixtures::kMarital}));
    REQUIRE(groups.size() == 3);
    for (const auto& g : groups) CHECK(g.weight == 6);
  }
  SUBCASE("gender + age has four patterns") {
    const auto groups = patterns_over(d, AttrSubset::of({fixtures::kGender,
                                                         fixtures::kAge}));
    REQUIRE(groups.size() == 4);
    std::multiset<std::int64_t> weights;
    for (const auto& g : groups) weights.insert(g.weight);
    CHECK(weights == std::multiset<std::int64_t>{3, 3, 6, 6});
  }
  SUBCASE("empty subset yields the empty pattern with |D|") {
    const auto groups = patterns_over(d, AttrSubset{});
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].pattern.empty());
    CHECK(groups[0].weight == 18);
  }
}

TEST_CASE("restrict") {
  const Pattern p = Pattern::from_pairs({{0, 0}, {1, 1}, {3, 2}});
  CHECK(restrict(p, AttrSubset::of({1, 3})) ==
        Pattern::from_pairs({{1, 1}, {3, 2}}));
  CHECK(restrict(p, AttrSubset{}).empty());
  CHECK(restrict(p, AttrSubset::of({2})).empty());
}

TEST_CASE("pattern and subset validation") {
  const Dataset d = fixtures::fragment();
  CHECK_THROWS_AS(count_pattern(d, Pattern::from_pairs({{9, 0}})), ValidationError);
  CHECK_THROWS_AS(count_pattern(d, Pattern::from_pairs({{0, 7}})), ValidationError);
  CHECK_THROWS_AS(Pattern(std::vector<Pattern::Binding>{{1, 0}, {1, 1}}),
                  ValidationError);
  CHECK_THROWS_AS(AttrSubset(std::vector<int>{2, 1}), ValidationError);
  CHECK_THROWS_AS(patterns_over(d, AttrSubset::of({0, 11})), ValidationError);
}

TEST_CASE("counting invariants on random weighted datasets") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 60; ++round) {
    const Dataset d = fixtures::random_dataset(rng);
    const OracleTable table = OracleTable::from(d);
    const int n = d.attribute_count();

    // random subset pair s1 subseteq s2
    std::vector<int> s2_idx, s1_idx;
    for (int a = 0; a < n; ++a) {
      if (rng() % 2) {
        s2_idx.push_back(a);
        if (rng() % 2) s1_idx.push_back(a);
      }
    }
    const AttrSubset s1{s1_idx}, s2{s2_idx};

    const auto groups1 = patterns_over(d, s1);
    const auto groups2 = patterns_over(d, s2);

    // group-by totals cover every complete row
    std::int64_t total = 0;
    for (const auto& g : groups1) total += g.weight;
    CHECK(total == d.size());  // missing-free data

    // monotone pattern counts along the subset order
    CHECK(groups1.size() <= groups2.size());

    // group-by agrees with count_pattern and the oracle on every key
    for (const auto& g : groups1) {
      CHECK(g.weight == count_pattern(d, g.pattern));
      CHECK(g.weight == fixtures::oracle_count(table, g.pattern));
    }

    // marginalization: c(p) equals the sum over extensions by one attribute
    if (!groups1.empty() && s1.size() < static_cast<std::size_t>(n)) {
      int extra = 0;
      while (s1.contains(extra)) ++extra;
      const auto& p = groups1[rng() % groups1.size()].pattern;
      const auto extended = patterns_over(d, s1.with(extra));
      std::int64_t sum = 0;
      for (const auto& q : extended) {
        if (restrict(q.pattern, s1) == p) sum += q.weight;
      }
      CHECK(sum == count_pattern(d, p));
    }
  }
}

TEST_CASE("patterns_over drops rows missing a subset attribute") {
  std::istringstream in("A,B\nx,1\nx,\ny,1\n");
  const Dataset d = load_csv(in);
  const auto groups = patterns_over(d, AttrSubset::of({0, 1}));
  REQUIRE(groups.size() == 2);
  std::int64_t total = 0;
  for (const auto& g : groups) total += g.weight;
  CHECK(total == 2);

  // the partial restriction still shows up in restriction_groups
  const auto all = restriction_groups(d, AttrSubset::of({0, 1}));
  CHECK(all.size() == 3);
}

TEST_CASE("wide keys fall back to the big-key group-by") {
  // 40 attributes of domain size 3 overflow the packed 64-bit key
  const int attrs = 40;
  std::mt19937_64 rng(5);
  std::vector<AttributeSchema> schema;
  std::vector<std::vector<std::int32_t>> columns(attrs);
  std::vector<std::int64_t> weights;
  for (int a = 0; a < attrs; ++a) {
    schema.push_back({"a" + std::to_string(a), a, {"u", "v", "w"},
                      AttributeKind::Categorical});
  }
  for (int r = 0; r < 50; ++r) {
    for (int a = 0; a < attrs; ++a) {
      columns[static_cast<std::size_t>(a)].push_back(
          static_cast<std::int32_t>(r == 0 ? (a % 3) : rng() % 3));
    }
    weights.push_back(1);
  }
  // force every domain value active
  for (int a = 0; a < attrs; ++a) {
    columns[static_cast<std::size_t>(a)][1] = 0;
    columns[static_cast<std::size_t>(a)][2] = 1;
    columns[static_cast<std::size_t>(a)][3] = 2;
  }
  const Dataset d(std::move(schema), std::move(columns), std::move(weights));
  const auto groups = patterns_over(d, d.all_attributes());
  std::int64_t total = 0;
  for (const auto& g : groups) {
    total += g.weight;
    CHECK(g.weight == count_pattern(d, g.pattern));
  }
  CHECK(total == d.size());
  CHECK(label_group_count(d, d.all_attributes(), 1000) ==
        static_cast<std::int64_t>(groups.size()));
}
