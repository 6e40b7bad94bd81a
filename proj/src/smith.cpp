#include "isoprod/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <utility>

namespace isoprod {

namespace {

// Row/column operations until m[k][k] divides everything in its row and
// column, and everything else in both is zero.
bool pivot_step(IntMatrix& m, std::size_t k) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? 0 : m[0].size();

  // Smallest nonzero absolute value in the remaining block.
  std::size_t pr = rows, pc = cols;
  std::int64_t best = 0;
  for (std::size_t i = k; i < rows; ++i)
    for (std::size_t j = k; j < cols; ++j)
      if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
        best = std::llabs(m[i][j]);
        pr = i;
        pc = j;
      }
  if (best == 0) return false;

  std::swap(m[k], m[pr]);
  for (auto& row : m) std::swap(row[k], row[pc]);

  for (;;) {
    bool dirty = false;
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (m[i][k] == 0) continue;
      std::int64_t q = m[i][k] / m[k][k];
      for (std::size_t j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
      if (m[i][k] != 0) {
        std::swap(m[k], m[i]);
        dirty = true;
      }
    }
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (m[k][j] == 0) continue;
      std::int64_t q = m[k][j] / m[k][k];
      for (std::size_t i = k; i < rows; ++i) m[i][j] -= q * m[i][k];
      if (m[k][j] != 0) {
        for (auto& row : m) std::swap(row[k], row[j]);
        dirty = true;
      }
    }
    if (dirty) continue;

    // Divisibility: fold any entry not divisible by the pivot into row k.
    bool fixed = true;
    for (std::size_t i = k + 1; i < rows && fixed; ++i)
      for (std::size_t j = k + 1; j < cols; ++j)
        if (m[i][j] % m[k][k] != 0) {
          for (std::size_t c = k; c < cols; ++c) m[k][c] += m[i][c];
          fixed = false;
          break;
        }
    if (fixed) break;
  }
  if (m[k][k] < 0) m[k][k] = -m[k][k];
  return true;
}

}  // namespace

std::vector<std::int64_t> smith_diagonal(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  const std::size_t n = std::min(rows, cols);
  std::vector<std::int64_t> diag(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!pivot_step(m, k)) break;
    diag[k] = m[k][k];
  }
  return diag;
}

std::vector<std::int64_t> cokernel_invariants(const IntMatrix& m, int cols) {
  IntMatrix padded = m;
  for (auto& row : padded) row.resize(cols, 0);
  auto diag = smith_diagonal(std::move(padded));
  diag.resize(cols, 0);

  std::vector<std::int64_t> out;
  std::size_t free_rank = 0;
  for (auto d : diag) {
    if (d == 0)
      ++free_rank;
    else if (d > 1)
      out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  out.insert(out.end(), free_rank, 0);
  return out;
}

}  // namespace isoprod
