#ifndef ISOPROD_SMITH_HPP
#define ISOPROD_SMITH_HPP

#include <cstdint>
#include <vector>

namespace isoprod {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Diagonal of the Smith normal form of `m` (rows = relations, columns =
/// generators), nonnegative, each entry dividing the next. Zero entries and
/// missing rows (rank deficit) are reported as 0.
std::vector<std::int64_t> smith_diagonal(IntMatrix m);

/// Invariant factors > 1 of Z^cols / rowspace(m); a free part shows up as 0
/// entries at the end.
std::vector<std::int64_t> cokernel_invariants(const IntMatrix& m, int cols);

}  // namespace isoprod

#endif  // ISOPROD_SMITH_HPP
