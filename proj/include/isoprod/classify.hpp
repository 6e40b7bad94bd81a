#ifndef ISOPROD_CLASSIFY_HPP
#define ISOPROD_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoprod/catalog.hpp"
#include "isoprod/orbits.hpp"
#include "isoprod/typesys.hpp"

namespace isoprod {

struct SurfaceInvariants {
  std::int64_t chi = 0;
  std::int64_t k_squared = 0;
  std::int64_t euler = 0;
  std::int64_t q = 0;
  std::int64_t p_g = 0;

  friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

/// K^2 = 8 (g1-1)(g2-1) / |G|, e = K^2 / 2, chi = K^2 / 8, with q = 0 and
/// p_g = chi - 1. Throws std::invalid_argument unless 2|G| = alpha(T1)
/// alpha(T2) and the result is (16, 8, 2).
SurfaceInvariants surface_invariants(std::size_t group_order, const AdmissibleType& t1,
                                     const AdmissibleType& t2);

struct ClassificationRow {
  int g1 = 0;
  int g2 = 0;
  std::string group_name;
  GroupId id;
  TypeTuple t1;
  TypeTuple t2;
  std::uint64_t n = 0;
  int d = 0;

  /// Same row with the two factors exchanged.
  ClassificationRow swapped() const;
  /// Orientation with t1 <= t2 in canonical type order.
  ClassificationRow canonical() const;
  friend bool operator==(const ClassificationRow&, const ClassificationRow&) = default;
};

/// g1 = alpha(t2) + 1, g2 = alpha(t1) + 1, 2|G| = (g1-1)(g2-1),
/// d = l(t1) + l(t2) - 6, n >= 1. Returns the first violated condition.
std::optional<std::string> check_row_invariants(const ClassificationRow& row);

inline constexpr std::string_view kCsvHeader = "g1,g2,group_name,order,id,t1,t2,n,d";

std::string format_csv(const std::vector<ClassificationRow>& rows);
/// Skips blank lines and lines starting with '#'; expects the header.
std::vector<ClassificationRow> parse_csv(std::string_view text);

/// The committed table (data/golden_table.csv) in its published row order
/// and orientation.
std::vector<ClassificationRow> golden_table();

/// Bound table shipped in data/aut_bounds.txt.
AutomorphismBoundTable default_aut_bounds();

struct GoldenComparison {
  bool equal = false;
  std::vector<std::string> differences;
};

/// Compares as multisets of rows, each row taken up to exchanging the two
/// factors.
GoldenComparison compare_rows(const std::vector<ClassificationRow>& computed,
                              const std::vector<ClassificationRow>& expected);

struct PipelineConfig {
  unsigned jobs = 1;
  std::size_t memory_cap_bytes = std::size_t{8} << 30;
  std::int64_t min_order = 1;
  std::int64_t max_order = 2000;
  /// Directory for orbit-count cache files; empty disables the cache.
  std::string cache_dir;
  /// Optional pruning by maximal automorphism-group orders.
  const AutomorphismBoundTable* bound_table = nullptr;
};

struct TaskReport {
  std::string group_key;
  std::string group_name;
  std::optional<GroupId> id;
  std::int64_t order = 0;
  TypeTuple t1;
  TypeTuple t2;
  /// "ok", "cached", "skipped" (budget exceeded) or "error".
  std::string status;
  std::string detail;
  double seconds = 0;
  ComponentCount counts;
};

struct PipelineResult {
  std::vector<ClassificationRow> rows;
  std::vector<TaskReport> tasks;
  std::size_t candidate_triples = 0;
  /// Triples in the order range removed by the bound table.
  std::size_t pruned_by_bounds = 0;
  std::vector<std::string> catalog_errors;
  double seconds = 0;
};

/// For every candidate triple with order in range and every catalog group
/// of that order, counts the orbits of disjoint pairs and emits a row when
/// n >= 1. Rows are sorted by decreasing order, then id, then types.
/// Output does not depend on `jobs`.
PipelineResult run_pipeline(const Catalog& catalog, const PipelineConfig& config);

/// JSON run report: per-task timing, counts and skips.
std::string format_report_json(const PipelineResult& result, const PipelineConfig& config);

struct AbelianizationStep {
  TypeTuple type;                          // polygonal group at this step
  std::vector<std::int64_t> abelianization;
  std::int64_t order_before = 0;           // |G^(k)|
  std::int64_t order_after = 0;            // |G^(k+1)|, when forced
};

struct ExceptionalEntry {
  CandidateTriple triple;
  std::vector<std::int64_t> ab1;
  std::vector<std::int64_t> ab2;
  /// Largest abelian group that is a quotient of both; G^ab is a quotient
  /// of it.
  std::vector<std::int64_t> common_ab;
  /// Derived-series chain, worked out where the cited isomorphisms of
  /// derived subgroups of polygonal groups apply.
  std::vector<AbelianizationStep> chain;
  std::string conclusion;
};

struct ExceptionalReport {
  std::vector<ExceptionalEntry> entries;
  /// Triples above the order limit removed by the bound table.
  std::vector<CandidateTriple> pruned_by_bounds;
  std::vector<std::string> cited_facts;
};

/// Candidate triples of order > min_order in which neither type is
/// [2,3,7], filtered by `bounds` (none if null).
ExceptionalReport exceptional_report(const AutomorphismBoundTable* bounds,
                                     std::int64_t min_order = 2001);
std::string format_exceptional_report(const ExceptionalReport& report);

/// Largest common abelian quotient of two abelian groups given by
/// invariant factors.
std::vector<std::int64_t> common_abelian_quotient(const std::vector<std::int64_t>& a,
                                                  const std::vector<std::int64_t>& b);

}  // namespace isoprod

#endif  // ISOPROD_CLASSIFY_HPP
