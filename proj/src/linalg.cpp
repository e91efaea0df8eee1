#include "etafano/linalg.hpp"

#include <cstddef>
#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

std::optional<std::vector<Rat>> solve_linear(Mat m, std::vector<Rat> rhs) {
  std::size_t n = m.size();
  if (rhs.size() != n) throw ComputationError("linear system shape mismatch");
  for (const auto& row : m) {
    if (row.size() != n) throw ComputationError("linear system matrix is not square");
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Rat f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }

  std::vector<Rat> x(n, Rat(0));
  for (std::size_t i = n; i-- > 0;) {
    Rat acc = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= m[i][k] * x[k];
    x[i] = acc / m[i][i];
  }
  return x;
}

bool is_negative_definite(const Mat& m) {
  std::size_t n = m.size();
  Mat a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw ComputationError("definiteness test on a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = -m[i][j];
  }
  // -m is positive definite iff every elimination pivot stays positive.
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a[k][k] > 0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace etafano
