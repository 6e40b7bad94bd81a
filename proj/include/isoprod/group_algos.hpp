#ifndef ISOPROD_GROUP_ALGOS_HPP
#define ISOPROD_GROUP_ALGOS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "isoprod/group.hpp"

namespace isoprod {

/// Conjugacy classes ordered by their minimal element id, so class 0 is
/// always {identity}. Members of each class are sorted.
struct ConjugacyClassTable {
  std::vector<std::vector<Elem>> classes;
  std::vector<int> class_of;
  std::vector<Elem> representatives;

  std::size_t size() const { return classes.size(); }
  /// Indices of classes whose elements have the given order.
  std::vector<int> classes_of_order(const FiniteGroup& g, int k) const;
};

ConjugacyClassTable conjugacy_classes(const FiniteGroup& g);

/// Closure of `seeds` under multiplication; sorted ids.
std::vector<Elem> subgroup_generated(const FiniteGroup& g,
                                     std::span<const Elem> seeds);

/// [G, G] as a sorted id set.
std::vector<Elem> commutator_subgroup(const FiniteGroup& g);

bool is_normal_subgroup(const FiniteGroup& g, std::span<const Elem> subgroup);

/// Invariant factors d_1 | d_2 | ... (all > 1) of G / [G, G]; empty when G
/// is perfect.
std::vector<std::int64_t> abelianization_invariants(const FiniteGroup& g);

/// Invariant factors of an abelian quotient G/N, N normal, read off from
/// the counts |{x N : (x N)^{p^k} = N}| prime by prime.
std::vector<std::int64_t> abelian_quotient_invariants(
    const FiniteGroup& g, std::span<const Elem> normal_subgroup);

struct Automorphism {
  std::vector<Elem> images;

  Elem operator()(Elem x) const { return images[x]; }
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// Greedy short generating sequence: each element strictly enlarges the
/// subgroup generated so far; candidates of larger element order first.
std::vector<Elem> small_generating_sequence(const FiniteGroup& g);

class AutomorphismCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultAutomorphismOrderCap = 512;

/// Every automorphism of `g`, sorted by image table. The identity comes
/// first. Candidate images of a fixed generating sequence are restricted by
/// element order and conjugacy class size, then checked to extend to a
/// multiplicative bijection.
std::vector<Automorphism> automorphism_group(
    const FiniteGroup& g, std::size_t order_cap = kDefaultAutomorphismOrderCap);

/// x -> h x h^-1
Automorphism inner_automorphism(const FiniteGroup& g, Elem h);

bool is_automorphism(const FiniteGroup& g, const Automorphism& phi);

/// The map determined by sending `generators[i]` to `images[i]`, if it
/// extends to a homomorphism from the subgroup the generators span.
/// Returned table is indexed by element id; unreached ids stay 0.
std::optional<std::vector<Elem>> extend_to_homomorphism(
    const FiniteGroup& source, std::span<const Elem> generators,
    const FiniteGroup& target, std::span<const Elem> images);

/// Integer invariants used to match a constructed group with a catalogued
/// one.
struct GroupFingerprint {
  std::size_t order = 0;
  std::vector<std::int64_t> abelian_invariants;
  std::size_t class_count = 0;
  std::map<int, std::size_t> order_histogram;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

GroupFingerprint fingerprint(const FiniteGroup& g);

}  // namespace isoprod

#endif  // ISOPROD_GROUP_ALGOS_HPP
