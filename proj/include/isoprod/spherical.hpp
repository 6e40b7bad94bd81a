#ifndef ISOPROD_SPHERICAL_HPP
#define ISOPROD_SPHERICAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "isoprod/group.hpp"
#include "isoprod/group_algos.hpp"
#include "isoprod/typesys.hpp"

namespace isoprod {

/// A tuple (g_1, ..., g_r) of element ids.
using SystemTuple = std::vector<Elem>;

/// Membership mask over element ids.
using ElementMask = std::vector<bool>;

/// Subgroups of a fixed group, interned, with memoized joins <H, x>.
/// Not thread safe; give each worker its own.
class SubgroupLattice {
 public:
  using Id = std::uint32_t;

  explicit SubgroupLattice(const FiniteGroup& g);

  Id trivial() const { return 0; }
  Id join(Id h, Elem x);
  std::size_t order(Id h) const { return subgroups_[h].order; }
  bool is_full(Id h) const { return subgroups_[h].order == g_->order(); }
  bool contains(Id h, Elem x) const;
  std::size_t size() const { return subgroups_.size(); }

 private:
  struct Subgroup {
    std::vector<std::uint64_t> bits;
    std::vector<Elem> generators;
    std::size_t order = 0;
  };
  static constexpr Id kUnknown = ~Id{0};

  Id intern(Subgroup s);

  const FiniteGroup* g_;
  std::size_t words_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<Id>> joins_;
  std::map<std::vector<std::uint64_t>, Id> index_;
};

/// Fixed-width packing of tuples into 64-bit keys, first entry in the most
/// significant bits, so numeric order is lexicographic order on ids.
class TupleCodec {
 public:
  TupleCodec(std::size_t group_order, int length);

  std::uint64_t pack(std::span<const Elem> t) const;
  void unpack(std::uint64_t key, std::span<Elem> out) const;
  SystemTuple unpack(std::uint64_t key) const;
  int length() const { return length_; }

 private:
  int length_;
  int bits_;
  std::uint64_t mask_;
};

/// Backtracking search for spherical systems of generators of a type:
/// tuples with product 1 that generate the group and whose orders are a
/// rearrangement of the type. Every distinct ordering of the type is
/// searched; within one ordering the last entry is forced to be the inverse
/// of the prefix product.
class SystemSearch {
 public:
  /// `allowed`, if non-empty, restricts every entry to the marked elements.
  SystemSearch(const FiniteGroup& g, const TypeTuple& t, ElementMask allowed = {});

  const FiniteGroup& group() const { return *g_; }
  const TypeTuple& type() const { return type_; }
  /// Distinct orderings of the type, in lexicographic order.
  const std::vector<std::vector<int>>& order_sequences() const { return sequences_; }

  /// Visits systems in a deterministic order: by ordering, then
  /// lexicographically. The span is only valid during the call.
  void for_each(const std::function<void(std::span<const Elem>)>& visit) const;

  std::uint64_t count(unsigned jobs = 1) const;

  /// All systems, packed with `codec` and sorted. Work is split across
  /// `jobs` threads by first entry; the result does not depend on `jobs`.
  std::vector<std::uint64_t> collect_packed(const TupleCodec& codec, unsigned jobs = 1) const;

 private:
  struct Task {
    std::size_t sequence;
    Elem first;
  };
  std::vector<Task> tasks() const;
  template <class Leaf>
  void run_task(const Task& task, SubgroupLattice& lattice, Leaf&& leaf) const;

  const FiniteGroup* g_;
  TypeTuple type_;
  ElementMask allowed_;
  std::vector<std::vector<int>> sequences_;
  std::vector<std::vector<Elem>> candidates_by_order_;  // indexed by order
};

/// Every spherical system of type `t`, in SystemSearch order.
std::vector<SystemTuple> enumerate_systems(const FiniteGroup& g, const TypeTuple& t);

std::uint64_t count_systems(const FiniteGroup& g, const TypeTuple& t, unsigned jobs = 1);

/// Systems of a pure-involution type none of whose entries lies in the
/// given conjugacy class.
std::vector<SystemTuple> enumerate_restricted(const FiniteGroup& g, const TypeTuple& t,
                                              const ConjugacyClassTable& classes,
                                              int excluded_class);
std::uint64_t count_restricted(const FiniteGroup& g, const TypeTuple& t,
                               const ConjugacyClassTable& classes, int excluded_class,
                               unsigned jobs = 1);

/// Product 1, generation, and orders a rearrangement of `t`.
bool is_spherical_system(const FiniteGroup& g, const TypeTuple& t, std::span<const Elem> a);

/// Sigma(A): all conjugates of all powers of the entries.
ElementMask stabilizer_set(const FiniteGroup& g, const ConjugacyClassTable& classes,
                           std::span<const Elem> a);

/// Sigma(A1) and Sigma(A2) meet only in the identity.
bool disjoint(const ElementMask& sigma1, const ElementMask& sigma2);
bool disjoint(const FiniteGroup& g, const ConjugacyClassTable& classes,
              std::span<const Elem> a1, std::span<const Elem> a2);

/// Elements no nontrivial power of which lies in `sigma`. A system B is
/// disjoint from A exactly when all its entries are in
/// partner_mask(stabilizer_set(A)).
ElementMask partner_mask(const FiniteGroup& g, const ElementMask& sigma);

}  // namespace isoprod

#endif  // ISOPROD_SPHERICAL_HPP
