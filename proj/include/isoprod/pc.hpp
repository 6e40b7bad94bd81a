#ifndef ISOPROD_PC_HPP
#define ISOPROD_PC_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isoprod/group.hpp"

namespace isoprod {

/// Generator indices (0-based), one entry per occurrence: g2*g3^2 is
/// {1, 2, 2}.
using PcWord = std::vector<int>;

/// Power-commutator presentation on g_1..g_n.
///
///   g_i^{p_i} = w_i       (omitted: p_i = 2, w_i = 1)
///   g_i^{g_j} = w_ij      for j < i, meaning g_j^-1 g_i g_j (omitted: g_i)
///
/// Right-hand sides must only involve generators after the left-hand one,
/// as usual for a polycyclic sequence.
struct PcPresentation {
  int generator_count = 0;
  std::vector<int> relative_orders;
  std::map<int, PcWord> powers;
  std::map<std::pair<int, int>, PcWord> conjugates;

  explicit PcPresentation(int n = 0) : generator_count(n), relative_orders(n, 2) {}

  /// "g1^2=g4; g2^g1=g2*g3; g3^3=1" style relation list for n generators.
  static PcPresentation parse(int n, std::string_view relations);
  /// Inverse of parse: relations in a canonical order, defaults omitted.
  std::string relations_string() const;

  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;
};

class PcInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiplication of normal words g_1^e_1 ... g_n^e_n by collection: each
/// letter of the right factor is pushed in from the left side of the tail,
/// conjugating the tail past it and reducing powers as they overflow.
class PcCollector {
 public:
  using Exponents = std::vector<int>;

  explicit PcCollector(PcPresentation presentation);

  const PcPresentation& presentation() const { return pres_; }
  std::size_t group_order() const { return order_; }

  Exponents multiply(const Exponents& a, const Exponents& b) const;
  /// a * g_j in normal form.
  void multiply_letter(Exponents& a, int j) const;

  /// Mixed-radix id, g_1 most significant; the identity is 0.
  std::size_t id_of(const Exponents& e) const;
  Exponents exponents_of(std::size_t id) const;

 private:
  PcPresentation pres_;
  std::size_t order_ = 1;
  std::size_t step_budget_ = 0;
};

/// Builds the Cayley table by collection and checks associativity against
/// the generators; throws PcInconsistent otherwise.
FiniteGroup from_power_commutator(const PcPresentation& presentation,
                                  std::size_t order_cap = kCayleyTableLimit);

}  // namespace isoprod

#endif  // ISOPROD_PC_HPP
