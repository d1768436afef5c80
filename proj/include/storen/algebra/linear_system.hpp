#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace storen {

/// Dense row-major matrix of residues modulo a fixed prime.
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

/// Some solution of A·u = b over GF(p), free variables set to zero; nullopt when inconsistent.
/// Gaussian elimination, O(rows·cols·min(rows, cols)).
std::optional<std::vector<std::uint64_t>> solve_mod(ModMatrix a, std::vector<std::uint64_t> b,
                                                    std::uint64_t p);

}  // namespace storen
