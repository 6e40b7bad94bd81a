#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "isoprod/classify.hpp"

using namespace isoprod;

namespace {

AdmissibleType admitted(std::string_view text) { return *admit(TypeTuple::parse(text)); }

const Catalog& builtin() {
  static const Catalog c = Catalog::builtin();
  return c;
}

std::uint64_t total_n(const std::vector<ClassificationRow>& rows) {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.n;
  return s;
}

}  // namespace

TEST(SurfaceInvariants, PublishedExamples) {
  const SurfaceInvariants expected{2, 16, 8, 0, 1};
  EXPECT_EQ(surface_invariants(60, admitted("[3^2,5]"), admitted("[2^6]")), expected);
  EXPECT_EQ(surface_invariants(8, admitted("[2^6]"), admitted("[2^6]")), expected);
  EXPECT_EQ(surface_invariants(336, admitted("[2,3,14]"), admitted("[4^3]")), expected);
}

TEST(SurfaceInvariants, RejectsMismatchedOrder) {
  EXPECT_THROW(surface_invariants(61, admitted("[3^2,5]"), admitted("[2^6]")),
               std::invalid_argument);
  EXPECT_THROW(surface_invariants(16, admitted("[2^6]"), admitted("[2^6]")),
               std::invalid_argument);
}

TEST(ClassificationRow, InvariantsAndDimension) {
  for (const auto& r : golden_table()) {
    SCOPED_TRACE(r.id.to_string() + " " + r.t1.to_string() + " " + r.t2.to_string());
    EXPECT_EQ(check_row_invariants(r), std::nullopt);
    EXPECT_EQ(check_row_invariants(r.swapped()), std::nullopt);
  }
  ClassificationRow r;
  r.g1 = 17;
  r.g2 = 43;
  r.id = {336, 209};
  r.t1 = TypeTuple::parse("[2,3,14]");
  r.t2 = TypeTuple::parse("[4^3]");
  r.n = 2;
  r.d = 0;
  EXPECT_EQ(check_row_invariants(r), std::nullopt);
  r.d = 1;
  EXPECT_TRUE(check_row_invariants(r).has_value());
  r.d = 0;
  r.n = 0;
  EXPECT_TRUE(check_row_invariants(r).has_value());
  r.n = 2;
  r.g1 = 18;
  EXPECT_TRUE(check_row_invariants(r).has_value());
}

TEST(ClassificationRow, CanonicalOrientation) {
  auto rows = golden_table();
  for (const auto& r : rows) {
    auto c = r.canonical();
    EXPECT_FALSE(c.t2 < c.t1);
    EXPECT_EQ(c.canonical(), c);
    EXPECT_EQ(r.swapped().swapped(), r);
  }
}

TEST(Golden, TableShape) {
  auto rows = golden_table();
  EXPECT_EQ(rows.size(), 32u);
  EXPECT_EQ(total_n(rows), 49u);
  std::size_t dimension_zero = 0;
  for (const auto& r : rows) dimension_zero += r.d == 0;
  EXPECT_GT(dimension_zero, 0u);
  EXPECT_EQ(rows.front().id, (GroupId{336, 209}));
  EXPECT_EQ(rows.front().n, 2u);
}

TEST(Csv, RoundTripAndQuoting) {
  auto rows = golden_table();
  auto text = format_csv(rows);
  EXPECT_EQ(text.substr(0, kCsvHeader.size()), kCsvHeader);
  EXPECT_NE(text.find("\"PSL(2,F7) x Z2\""), std::string::npos);
  EXPECT_NE(text.find("\"<336,209>\""), std::string::npos);
  EXPECT_EQ(parse_csv(text), rows);
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_csv("a,b\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
  std::string bad = std::string(kCsvHeader) + "\n1,2,x,8,\"<8,5>\",[2^6]\n";
  EXPECT_THROW(parse_csv(bad), std::invalid_argument);
  std::string open_quote = std::string(kCsvHeader) + "\n5,5,\"x,8,<8,5>,[2^6],[2^6],1,6\n";
  EXPECT_THROW(parse_csv(open_quote), std::invalid_argument);
}

TEST(Compare, UpToExchangeOfFactors) {
  auto rows = golden_table();
  std::vector<ClassificationRow> swapped;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) swapped.push_back(it->swapped());
  EXPECT_TRUE(compare_rows(swapped, rows).equal);

  auto changed = rows;
  changed[3].n += 1;
  auto cmp = compare_rows(changed, rows);
  EXPECT_FALSE(cmp.equal);
  ASSERT_EQ(cmp.differences.size(), 1u);
  EXPECT_NE(cmp.differences[0].find("mismatch"), std::string::npos);

  auto fewer = rows;
  fewer.pop_back();
  cmp = compare_rows(fewer, rows);
  EXPECT_FALSE(cmp.equal);
  EXPECT_NE(cmp.differences[0].find("missing"), std::string::npos);
}

TEST(Pipeline, EmptyCatalogGivesEmptyTable) {
  auto result = run_pipeline(Catalog{}, PipelineConfig{});
  EXPECT_TRUE(result.rows.empty());
  EXPECT_TRUE(result.tasks.empty());
  EXPECT_GT(result.candidate_triples, 0u);
}

TEST(Pipeline, FullCatalogReproducesTheTable) {
  PipelineConfig config;
  auto result = run_pipeline(builtin(), config);
  EXPECT_TRUE(result.catalog_errors.empty());
  for (const auto& t : result.tasks) EXPECT_EQ(t.status, "ok") << t.group_key << " " << t.detail;
  auto cmp = compare_rows(result.rows, golden_table());
  for (const auto& d : cmp.differences) ADD_FAILURE() << d;
  EXPECT_EQ(total_n(result.rows), 49u);
  for (const auto& r : result.rows) {
    EXPECT_EQ(check_row_invariants(r), std::nullopt);
    EXPECT_FALSE(r.t2 < r.t1);
  }
  for (std::size_t i = 1; i < result.rows.size(); ++i)
    EXPECT_GE(result.rows[i - 1].id.order, result.rows[i].id.order);
  for (const auto& t : result.tasks) {
    if (t.counts.n == 0) continue;
    EXPECT_LE(t.counts.lower_bound, t.counts.n_before_exchange);
    EXPECT_LE(t.counts.n_before_exchange, t.counts.upper_bound);
  }
}

TEST(Pipeline, OutputIndependentOfJobs) {
  PipelineConfig one;
  one.max_order = 64;
  PipelineConfig three = one;
  three.jobs = 3;
  EXPECT_EQ(format_csv(run_pipeline(builtin(), one).rows),
            format_csv(run_pipeline(builtin(), three).rows));
}

TEST(Pipeline, OrderRangeAndBounds) {
  PipelineConfig config;
  config.min_order = 100;
  config.max_order = 200;
  auto result = run_pipeline(builtin(), config);
  for (const auto& t : result.tasks) {
    EXPECT_GE(t.order, 100);
    EXPECT_LE(t.order, 200);
  }
  auto bounds = default_aut_bounds();
  config.bound_table = &bounds;
  auto filtered = run_pipeline(builtin(), config);
  EXPECT_EQ(filtered.pruned_by_bounds, 0u);
  EXPECT_EQ(filtered.rows, result.rows);
}

TEST(Pipeline, CacheReproducesCounts) {
  auto dir = std::filesystem::temp_directory_path() / "isoprod_cache_test";
  std::filesystem::remove_all(dir);
  PipelineConfig config;
  config.max_order = 64;
  config.cache_dir = dir.string();
  auto first = run_pipeline(builtin(), config);
  auto second = run_pipeline(builtin(), config);
  EXPECT_EQ(first.rows, second.rows);
  for (const auto& t : second.tasks) EXPECT_EQ(t.status, "cached");
  for (std::size_t i = 0; i < first.tasks.size(); ++i)
    EXPECT_EQ(first.tasks[i].counts.representatives, second.tasks[i].counts.representatives);
  // A damaged file is recomputed.
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream(e.path()) << "garbage\n";
    break;
  }
  auto third = run_pipeline(builtin(), config);
  EXPECT_EQ(third.rows, first.rows);
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, BadEntriesAndBudgetsAreReported) {
  auto catalog = Catalog::parse(R"(group Bad
  id 8,5
  perm 4: (1,2)(3,4), (1,3)(2,4)
  fingerprint order=8 abelian=[2,2,2] classes=8 orders=1:1,2:7
end

group D4
  id 8,3
  perm 4: (1,2,3,4), (1,3)
end
)");
  PipelineConfig config;
  config.max_order = 8;
  config.memory_cap_bytes = 64;
  auto result = run_pipeline(catalog, config);
  ASSERT_EQ(result.catalog_errors.size(), 1u);
  EXPECT_NE(result.catalog_errors[0].find("Bad"), std::string::npos);
  ASSERT_FALSE(result.tasks.empty());
  for (const auto& t : result.tasks) EXPECT_EQ(t.group_key, "D4");
  bool skipped = false;
  for (const auto& t : result.tasks) skipped = skipped || t.status == "skipped";
  EXPECT_TRUE(skipped);
  auto json = format_report_json(result, config);
  EXPECT_NE(json.find("\"skipped\""), std::string::npos);
  EXPECT_NE(json.find("\"catalog_errors\""), std::string::npos);
}

TEST(CommonAbelianQuotient, Values) {
  using V = std::vector<std::int64_t>;
  EXPECT_EQ(common_abelian_quotient(V{2}, V{3}), V{});
  EXPECT_EQ(common_abelian_quotient(V{2}, V{2, 2}), V{2});
  EXPECT_EQ(common_abelian_quotient(V{6}, V{2}), V{2});
  EXPECT_EQ(common_abelian_quotient(V{4, 4}, V{2, 8}), (V{2, 4}));
  EXPECT_EQ(common_abelian_quotient(V{12}, V{6, 6}), V{6});
}

TEST(Exceptional, TwelveTriples) {
  auto bounds = default_aut_bounds();
  auto report = exceptional_report(&bounds);
  ASSERT_EQ(report.entries.size(), 12u);
  EXPECT_EQ(report.entries.front().triple.group_order, 4608);
  EXPECT_EQ(report.entries.back().triple.group_order, 2160);
  EXPECT_EQ(report.entries.back().triple.t1.type, TypeTuple::parse("[2,3,9]"));
  EXPECT_EQ(report.entries.back().triple.t2.type, TypeTuple::parse("[2,3,10]"));
  for (const auto& e : report.entries) {
    EXPECT_GT(e.triple.group_order, 2000);
    EXPECT_NE(e.triple.t1.type, TypeTuple::parse("[2,3,7]"));
    EXPECT_NE(e.triple.t2.type, TypeTuple::parse("[2,3,7]"));
  }
  auto unfiltered = exceptional_report(nullptr);
  EXPECT_EQ(unfiltered.entries.size(), 13u);
  ASSERT_EQ(report.pruned_by_bounds.size(), 1u);
  EXPECT_EQ(report.pruned_by_bounds[0].group_order, 2016);
}

TEST(Exceptional, DerivedSeriesChainFor4608) {
  auto bounds = default_aut_bounds();
  const auto report = exceptional_report(&bounds);
  const auto& e = report.entries.front();
  using V = std::vector<std::int64_t>;
  ASSERT_EQ(e.chain.size(), 3u);
  EXPECT_EQ(e.chain[0].type, TypeTuple::parse("[2,3,8]"));
  EXPECT_EQ(e.chain[0].abelianization, V{2});
  EXPECT_EQ(e.chain[0].order_after, 2304);
  EXPECT_EQ(e.chain[1].type, TypeTuple::parse("[3,3,4]"));
  EXPECT_EQ(e.chain[1].abelianization, V{3});
  EXPECT_EQ(e.chain[1].order_after, 768);
  EXPECT_EQ(e.chain[2].type, TypeTuple::parse("[4,4,4]"));
  EXPECT_EQ(e.chain[2].order_before, 768);
  EXPECT_NE(e.conclusion.find("cited, not verified"), std::string::npos);
  auto text = format_exceptional_report(exceptional_report(&bounds));
  EXPECT_NE(text.find("2304 -> 768"), std::string::npos);
}
