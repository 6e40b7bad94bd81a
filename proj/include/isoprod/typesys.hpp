#ifndef ISOPROD_TYPESYS_HPP
#define ISOPROD_TYPESYS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace isoprod {

using Rational = boost::rational<std::int64_t>;

/// A ramification type [m_1, ..., m_r], kept sorted ascending.
class TypeTuple {
 public:
  TypeTuple() = default;

  /// Sorts `orders`; throws std::invalid_argument if r < 3 or some m_i < 2.
  explicit TypeTuple(std::vector<int> orders);

  /// Accepts "[2,3,7]", "2,3,7" and the exponent shorthand "[2^3,4]".
  static TypeTuple parse(std::string_view text);

  const std::vector<int>& orders() const { return orders_; }
  int length() const { return static_cast<int>(orders_.size()); }
  int operator[](int i) const { return orders_[i]; }

  /// "[2,2,2,4]"
  std::string to_string() const;
  /// "[2^3,4]"
  std::string to_compact_string() const;

  bool all_equal_to(int m) const;

  /// Canonical order: by length, then lexicographically on the orders.
  friend bool operator<(const TypeTuple& a, const TypeTuple& b);
  friend bool operator==(const TypeTuple& a, const TypeTuple& b) = default;

 private:
  std::vector<int> orders_;
};

/// Theta(T) = -2 + sum_i (1 - 1/m_i), exact.
Rational theta(const TypeTuple& t);

/// 4 / Theta(T) when Theta > 0 and the quotient is integral.
std::optional<int> alpha(const TypeTuple& t);

struct AdmissibleType {
  TypeTuple type;
  Rational theta;
  int alpha = 0;

  friend bool operator==(const AdmissibleType&, const AdmissibleType&) = default;
};

/// Checks all four admissibility conditions (sorted, Theta > 0, alpha
/// integral, every m_i divides alpha).
std::optional<AdmissibleType> admit(const TypeTuple& t);

/// Search box for the brute-force scan. `proved()` is the box that follows
/// from the divisibility inequality: r <= 8, m_r <= 30 for r = 3 and
/// m_r <= 10/(r-3) for r >= 4. `wide()` is a much larger box used to check
/// that the proved bounds do not cut anything.
struct TypeSearchBounds {
  int max_length = 8;
  int max_entry = 30;
  bool use_proved_per_length = true;

  static TypeSearchBounds proved() { return {}; }
  static TypeSearchBounds wide(int max_length = 12, int max_entry = 30) {
    return {max_length, max_entry, false};
  }
};

/// All admissible types in the box, ordered by decreasing alpha then
/// canonical tuple order.
std::vector<AdmissibleType> enumerate_admissible_types(
    const TypeSearchBounds& bounds = TypeSearchBounds::proved());

/// g with 2g - 2 = group_order * Theta(t); nullopt unless that is a positive
/// even integer.
std::optional<int> genus_from_type(const AdmissibleType& t,
                                   std::int64_t group_order);

/// (m, T1, T2) with m = alpha(T1) alpha(T2) / 2 and T1 <= T2.
struct CandidateTriple {
  std::int64_t group_order = 0;
  AdmissibleType t1;
  AdmissibleType t2;

  /// Genus of C1 (= alpha(T2) + 1) and C2 (= alpha(T1) + 1).
  int g1() const { return t2.alpha + 1; }
  int g2() const { return t1.alpha + 1; }
};

/// Maximal automorphism-group order per genus, read from a "g max" text file.
class AutomorphismBoundTable {
 public:
  AutomorphismBoundTable() = default;

  static AutomorphismBoundTable load(const std::string& path);
  static AutomorphismBoundTable parse(std::string_view text);

  /// Table value if present, otherwise the Hurwitz bound 84(g-1).
  std::int64_t max_order(int genus) const;
  bool empty() const { return bounds_.empty(); }
  std::size_t size() const { return bounds_.size(); }

 private:
  std::map<int, std::int64_t> bounds_;
};

struct TripleFilter {
  std::int64_t max_order = 14112;
  /// Drop triples with m > 84(g-1) for either induced genus.
  bool hurwitz_bound = false;
  /// Only consulted for genera 2..48.
  const AutomorphismBoundTable* bound_table = nullptr;
};

std::vector<CandidateTriple> candidate_triples(
    const std::vector<AdmissibleType>& types, const TripleFilter& filter = {});
std::vector<CandidateTriple> candidate_triples(const TripleFilter& filter = {});

/// Invariant factors (each > 1, ascending by divisibility) of the
/// abelianization of the polygonal group with the given orders.
std::vector<std::int64_t> polygonal_abelianization(const TypeTuple& t);

std::string format_invariants(const std::vector<std::int64_t>& factors);

}  // namespace isoprod

#endif  // ISOPROD_TYPESYS_HPP
