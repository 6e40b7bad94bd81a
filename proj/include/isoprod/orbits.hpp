#ifndef ISOPROD_ORBITS_HPP
#define ISOPROD_ORBITS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "isoprod/group.hpp"
#include "isoprod/group_algos.hpp"
#include "isoprod/spherical.hpp"
#include "isoprod/typesys.hpp"

namespace isoprod {

/// sigma_i for 1 <= index <= r-1. Forward:
///   (.., g_i, g_i+1, ..) -> (.., g_i g_i+1 g_i^-1, g_i, ..)
struct BraidMove {
  int index = 1;
  bool inverse = false;
};

SystemTuple hurwitz_move(const FiniteGroup& g, std::span<const Elem> a, BraidMove m);
void hurwitz_move_in_place(const FiniteGroup& g, std::span<Elem> a, BraidMove m);

SystemTuple apply_automorphism(std::span<const Elem> a, const Automorphism& phi);

/// A subset of `group` generating it; `group` must list every element of
/// a group of automorphisms. Elements are taken in the given order.
std::vector<Automorphism> automorphism_generators(std::span<const Automorphism> group);

class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data shared by every search over one group.
class GroupContext {
 public:
  explicit GroupContext(std::shared_ptr<const FiniteGroup> g,
                        std::size_t automorphism_cap = std::size_t{1} << 20);

  const FiniteGroup& group() const { return *group_; }
  const ConjugacyClassTable& classes() const { return classes_; }
  const std::vector<Automorphism>& automorphisms() const { return automorphisms_; }
  const std::vector<Automorphism>& automorphism_generators() const { return aut_generators_; }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  ConjugacyClassTable classes_;
  std::vector<Automorphism> automorphisms_;
  std::vector<Automorphism> aut_generators_;
};

/// Rough bytes per stored tuple in a HurwitzOrbitTable.
inline constexpr std::size_t kBytesPerStoredTuple = 40;

/// A set of systems closed under the Hurwitz action, split into orbits.
/// Orbits are numbered by increasing minimal tuple.
class HurwitzOrbitTable {
 public:
  /// `sorted_keys` must be sorted, duplicate free and Hurwitz closed.
  HurwitzOrbitTable(const FiniteGroup& g, TupleCodec codec, std::vector<std::uint64_t> sorted_keys);

  const TupleCodec& codec() const { return codec_; }
  std::size_t size() const { return keys_.size(); }
  std::size_t orbit_count() const { return orbit_min_.size(); }
  std::uint64_t key(std::size_t index) const { return keys_[index]; }
  std::uint32_t orbit_of_index(std::size_t index) const { return orbit_[index]; }
  std::optional<std::uint32_t> orbit_of_key(std::uint64_t key) const;
  std::optional<std::uint32_t> orbit_of(std::span<const Elem> a) const {
    return orbit_of_key(codec_.pack(a));
  }
  /// Minimal tuple of the orbit.
  SystemTuple representative(std::uint32_t orbit) const { return codec_.unpack(orbit_min_[orbit]); }
  std::size_t orbit_size(std::uint32_t orbit) const { return orbit_size_[orbit]; }

 private:
  TupleCodec codec_;
  std::vector<std::uint64_t> keys_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::uint32_t> orbit_;
  std::vector<std::uint64_t> orbit_min_;
  std::vector<std::size_t> orbit_size_;
};

/// Disjoint-set forest over [0, n).
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  /// Keeps the smaller root.
  void unite(std::size_t a, std::size_t b);
  std::size_t class_count();

 private:
  std::vector<std::size_t> parent_;
};

/// Classes of Hurwitz orbits under a group of automorphisms preserving
/// the table, given by generators. classes[orbit] is the class index;
/// classes are numbered by increasing minimal tuple.
std::vector<std::uint32_t> merge_orbits(const HurwitzOrbitTable& table,
                                        std::span<const Automorphism> generators,
                                        std::size_t* class_count);

enum class OrbitAction { Braid, BraidAndAut };

struct OrbitSet {
  std::vector<SystemTuple> representatives;  // orbit minima, increasing
  std::vector<std::size_t> orbit_sizes;
  std::vector<std::uint32_t> membership;     // per input system
};

/// Orbits on a set of systems of one length. The set must be closed under
/// the chosen action. `automorphisms` may be any generating set of the
/// acting group.
OrbitSet orbit_decompose(const FiniteGroup& g, const std::vector<SystemTuple>& systems,
                         OrbitAction action, std::span<const Automorphism> automorphisms = {});

struct ComponentCountOptions {
  unsigned jobs = 1;
  std::size_t memory_cap_bytes = std::size_t{8} << 30;
  /// When t1 == t2 and at least two orbits remain, identify (A,B) with (B,A).
  bool exchange = true;
  /// Keep every partner table so that classify() works afterwards.
  bool retain_tables = false;
};

struct ComponentCount {
  std::uint64_t n = 0;
  std::uint64_t n_before_exchange = 0;
  /// Lemma-style sandwich: disjoint pairs in R1 x R2 bound n from above,
  /// and classes under automorphisms preserving each partner set bound it
  /// from below.
  std::uint64_t upper_bound = 0;
  std::uint64_t lower_bound = 0;
  bool exchange_checked = false;
  /// The search fixed systems of t2 first (the cheaper side).
  bool anchored_on_t2 = false;
  std::uint64_t anchor_systems = 0;
  std::uint64_t anchor_hurwitz_orbits = 0;
  std::uint64_t anchor_classes = 0;
  std::uint64_t partner_systems = 0;
  std::uint64_t partner_hurwitz_orbits = 0;
  /// One disjoint pair (A1 of type t1, A2 of type t2) per orbit, after the
  /// exchange identification.
  std::vector<std::pair<SystemTuple, SystemTuple>> representatives;
};

/// Counts orbits of B_r x B_s x Aut(G) on disjoint pairs of systems.
///
/// Systems of the anchor type are split into classes R1 under Hurwitz and
/// Aut. For a class representative a, the systems B disjoint from a are
/// exactly those with entries in partner_mask(Sigma(a)); their Hurwitz
/// orbits are merged under Stab(a), the automorphisms mapping a into its
/// own Hurwitz orbit. Pairs with first entry in different R1 classes are
/// inequivalent, and (a,B), (a,B') are equivalent iff B' lies in the
/// Hurwitz x Stab(a) orbit of B, so the merged classes count the orbits.
class PairOrbitClassifier {
 public:
  PairOrbitClassifier(const GroupContext& ctx, const TypeTuple& t1, const TypeTuple& t2,
                      const ComponentCountOptions& options = {});

  const ComponentCount& result() const { return result_; }

  /// Orbit index in [0, n_before_exchange) of a disjoint pair, or nullopt
  /// if (a, b) is not a disjoint pair of systems of types (t1, t2).
  /// Requires retain_tables (implied when t1 == t2).
  std::optional<std::size_t> classify(std::span<const Elem> a, std::span<const Elem> b) const;

 private:
  struct Anchor {
    SystemTuple tuple;
    std::uint32_t hurwitz_orbit = 0;
    std::size_t partner_table = 0;
    std::vector<std::uint32_t> partner_class;  // per partner Hurwitz orbit
    std::size_t class_offset = 0;
  };

  void build();
  std::optional<std::size_t> classify_anchored(std::span<const Elem> x,
                                               std::span<const Elem> y) const;
  void charge(std::size_t tuples);

  const GroupContext* ctx_;
  TypeTuple t1_, t2_;
  TypeTuple anchor_type_, partner_type_;
  ComponentCountOptions options_;
  ComponentCount result_;
  std::size_t bytes_in_use_ = 0;

  std::unique_ptr<HurwitzOrbitTable> anchor_table_;
  std::vector<std::uint32_t> anchor_class_;  // per anchor Hurwitz orbit
  std::vector<Anchor> anchors_;
  std::vector<std::unique_ptr<HurwitzOrbitTable>> partner_tables_;
  std::vector<std::pair<SystemTuple, SystemTuple>> raw_representatives_;  // anchored order
};

ComponentCount count_component_orbits(const GroupContext& ctx, const TypeTuple& t1,
                                      const TypeTuple& t2,
                                      const ComponentCountOptions& options = {});

using SystemPair = std::pair<SystemTuple, SystemTuple>;

/// True iff p2 lies in the orbit of the swapped pair (p1.second, p1.first).
/// Both pairs must have the same type in both slots. Disjoint pairs of
/// systems go through PairOrbitClassifier, anything else through
/// same_pair_orbit.
bool exchange_equivalent(const GroupContext& ctx, const SystemPair& p1, const SystemPair& p2);

/// Direct breadth-first closure of the orbit of `from` under moves on
/// either component and simultaneous automorphisms, stopping when `to` is
/// reached. Throws MemoryCapExceeded after `max_pairs` visited pairs.
bool same_pair_orbit(const GroupContext& ctx, const SystemPair& from, const SystemPair& to,
                     std::size_t max_pairs = std::size_t{1} << 24);

}  // namespace isoprod

#endif  // ISOPROD_ORBITS_HPP
