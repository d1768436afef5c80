#include "storen/algebra/linear_system.hpp"

#include <utility>

#include "storen/algebra/field_element.hpp"
#include "storen/error.hpp"

namespace storen {

std::optional<std::vector<std::uint64_t>> solve_mod(ModMatrix a, std::vector<std::uint64_t> b,
                                                    std::uint64_t p) {
  require(b.size() == a.rows(), ErrorKind::Usage, "solve_mod: right-hand side length");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;

  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(rank, j));
      std::swap(b[pivot], b[rank]);
    }
    const std::uint64_t inv = pow_mod(a(rank, c), p - 2, p);
    for (std::size_t j = c; j < cols; ++j) a(rank, j) = mul_mod(a(rank, j), inv, p);
    b[rank] = mul_mod(b[rank], inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a(r, c) == 0) continue;
      const std::uint64_t f = a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(r, j) = sub_mod(a(r, j), mul_mod(f, a(rank, j), p), p);
      b[r] = sub_mod(b[r], mul_mod(f, b[rank], p), p);
    }
    pivot_col.push_back(c);
    ++rank;
  }

  for (std::size_t r = rank; r < rows; ++r) {
    if (b[r] != 0) return std::nullopt;
  }
  std::vector<std::uint64_t> u(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) u[pivot_col[r]] = b[r];
  return u;
}

}  // namespace storen
