#pragma once

#include <cstdint>
#include <vector>

namespace fpsets {

/// Dense matrix over GF(p), p prime and < 2^16.  All arithmetic is exact.
class MatGFp {
 public:
  MatGFp() : rows_(0), cols_(0), p_(2) {}
  MatGFp(int rows, int cols, int p);

  static MatGFp identity(int n, int p);
  /// Permutation matrix: row i has a single 1 in column image[i], so that
  /// right action on row vectors sends basis vector i to image[i].
  static MatGFp from_basis_images(const std::vector<int>& image, int p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int modulus() const { return p_; }

  std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, std::uint32_t v) { a_[static_cast<std::size_t>(r) * cols_ + c] = v % p_; }

  MatGFp operator*(const MatGFp& other) const;
  MatGFp operator+(const MatGFp& other) const;
  MatGFp scaled(std::uint32_t c) const;
  bool operator==(const MatGFp&) const = default;
  bool is_zero() const;

  int rank() const;
  /// Columns spanning the kernel (right null space).
  MatGFp nullspace_basis() const;
  /// Columns spanning the column space.
  MatGFp colspace_basis() const;
  MatGFp inverse() const;  // throws InvalidInput when singular
  /// Smallest power f^(2^k) with 2^k >= rows(); its rank is the stable rank.
  MatGFp stable_power() const;

  MatGFp columns(const std::vector<int>& idx) const;
  static MatGFp hstack(const MatGFp& a, const MatGFp& b);

 private:
  int rows_, cols_, p_;
  std::vector<std::uint32_t> a_;
};

}  // namespace fpsets
