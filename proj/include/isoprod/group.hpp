#ifndef ISOPROD_GROUP_HPP
#define ISOPROD_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace isoprod {

/// Dense element identifier; the identity is always 0.
using Elem = std::uint16_t;

inline constexpr std::size_t kDefaultOrderCap = 50000;
/// Groups up to this order get a full Cayley table.
inline constexpr std::size_t kCayleyTableLimit = 4096;

/// Permutation of {0, ..., degree-1}, composed left to right:
/// (p * q)(x) = q(p(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint16_t> images);

  static Permutation identity(int degree);
  /// Cycles use 1-based points, as written in disjoint-cycle notation.
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  std::uint16_t operator()(std::uint16_t x) const { return images_[x]; }
  const std::vector<std::uint16_t>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;

  /// Disjoint-cycle notation with 1-based points, "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint16_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

class OrderCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable finite group over dense ids 0..order-1. Small groups carry a
/// Cayley table; larger permutation groups multiply by composing the
/// underlying permutations.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// `table[a * order + b]` is the id of a*b; id 0 must be the identity.
  /// Throws std::invalid_argument when the table is not a group table
  /// (identity, inverses; associativity is not checked here).
  FiniteGroup(std::size_t order, std::vector<Elem> table,
              std::vector<Elem> generators);

  std::size_t order() const { return order_; }
  Elem identity() const { return 0; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[std::size_t(a) * order_ + b];
    return mul_by_action(a, b);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  int element_order(Elem a) const { return element_order_[a]; }
  const std::vector<int>& element_orders() const { return element_order_; }

  /// h * a * h^-1
  Elem conjugate(Elem a, Elem h) const { return mul(mul(h, a), inverse_[h]); }
  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }
  Elem power(Elem a, std::int64_t k) const;

  /// Generators the group was constructed from (as ids).
  const std::vector<Elem>& generators() const { return generators_; }

  bool has_table() const { return !table_.empty(); }
  std::span<const Elem> table() const { return table_; }

  /// Faithful permutation images, present only for groups built from
  /// permutations.
  bool has_permutations() const { return perms_ != nullptr; }
  const Permutation& permutation(Elem a) const { return perms_->elements[a]; }

  std::vector<Elem> elements_of_order(int k) const;
  /// order -> number of elements of that order
  std::map<int, std::size_t> order_histogram() const;

  /// Exhaustive associativity check (cubic in the order).
  bool check_associativity() const;
  /// Identity and inverse laws for every element.
  bool check_identity_and_inverses() const;

 private:
  struct PermRealization {
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, Elem, PermutationHash> index;
  };

  friend FiniteGroup from_permutation_generators(int, std::span<const Permutation>,
                                                 std::size_t);

  Elem mul_by_action(Elem a, Elem b) const;
  void derive_inverses_and_orders();

  std::size_t order_ = 1;
  std::vector<Elem> table_{0};
  std::vector<Elem> inverse_{0};
  std::vector<int> element_order_{1};
  std::vector<Elem> generators_;
  std::shared_ptr<const PermRealization> perms_;
};

/// Closure of the generators under right multiplication, ids assigned in
/// breadth-first order. An empty generator list gives the trivial group.
FiniteGroup from_permutation_generators(int degree,
                                        std::span<const Permutation> generators,
                                        std::size_t order_cap = kDefaultOrderCap);

/// Upper unitriangular n x n matrices over F_q (q prime), realized on the
/// n(n-1)/2 entries above the diagonal.
FiniteGroup from_unitriangular(int n = 4, int q = 2);

/// Pairs (a, b) with id a * |H| + b.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// N x| H with (n1, h1)(n2, h2) = (n1 * act_h1(n2), h1 h2). `action[h]` is
/// the image table of act_h on N; `action` must be a homomorphism H -> Aut(N)
/// (checked). Element ids are h * |N| + n.
FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<Elem>>& action);

}  // namespace isoprod

#endif  // ISOPROD_GROUP_HPP
