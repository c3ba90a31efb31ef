#include "fpsets/gfp.hpp"

#include <cstddef>

#include "fpsets/errors.hpp"

namespace fpsets {

namespace {

std::uint32_t inv_mod(std::uint32_t a, int p) {
  // Fermat; p is prime and small.
  std::uint64_t base = a % p, acc = 1;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

// Row echelon form in place; returns pivot columns.
std::vector<int> echelonize(MatGFp& m) {
  const int p = m.modulus();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int c = col; c < m.cols(); ++c) {
        auto t = m.at(row, c);
        m.set(row, c, m.at(sel, c));
        m.set(sel, c, t);
      }
    std::uint32_t inv = inv_mod(m.at(row, col), p);
    for (int c = col; c < m.cols(); ++c)
      m.set(row, c, static_cast<std::uint32_t>(static_cast<std::uint64_t>(m.at(row, c)) * inv % p));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      std::uint64_t f = m.at(r, col);
      if (!f) continue;
      for (int c = col; c < m.cols(); ++c) {
        std::uint64_t v = m.at(r, c) + static_cast<std::uint64_t>(p - 1) * f % p * m.at(row, c);
        m.set(r, c, static_cast<std::uint32_t>(v % p));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

MatGFp::MatGFp(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
  if (p < 2 || p >= (1 << 16)) throw InvalidInput("modulus out of range");
  a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

MatGFp MatGFp::identity(int n, int p) {
  MatGFp m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatGFp MatGFp::from_basis_images(const std::vector<int>& image, int p) {
  int n = static_cast<int>(image.size());
  MatGFp m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, image[i], 1);
  return m;
}

MatGFp MatGFp::operator*(const MatGFp& other) const {
  if (cols_ != other.rows_ || p_ != other.p_) throw InvalidInput("matrix shape mismatch");
  MatGFp out(rows_, other.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      std::uint64_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < other.cols_; ++j) {
        std::uint64_t acc = out.at(i, j) + v * other.at(k, j);
        out.set(i, j, static_cast<std::uint32_t>(acc % p_));
      }
    }
  return out;
}

MatGFp MatGFp::operator+(const MatGFp& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || p_ != other.p_)
    throw InvalidInput("matrix shape mismatch");
  MatGFp out(rows_, cols_, p_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = (a_[i] + other.a_[i]) % p_;
  return out;
}

MatGFp MatGFp::scaled(std::uint32_t c) const {
  MatGFp out(rows_, cols_, p_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a_[i]) * c % p_);
  return out;
}

bool MatGFp::is_zero() const {
  for (auto v : a_)
    if (v) return false;
  return true;
}

int MatGFp::rank() const {
  MatGFp m(*this);
  return static_cast<int>(echelonize(m).size());
}

MatGFp MatGFp::nullspace_basis() const {
  MatGFp m(*this);
  auto pivots = echelonize(m);
  std::vector<char> is_pivot(cols_, 0);
  for (int c : pivots) is_pivot[c] = 1;
  int nullity = cols_ - static_cast<int>(pivots.size());
  MatGFp out(cols_, nullity, p_);
  int k = 0;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    out.set(free, k, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::uint32_t v = m.at(static_cast<int>(r), free);
      if (v) out.set(pivots[r], k, p_ - v);
    }
    ++k;
  }
  return out;
}

MatGFp MatGFp::colspace_basis() const {
  MatGFp m(*this);
  auto pivots = echelonize(m);
  return columns(pivots);
}

MatGFp MatGFp::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse needs a square matrix");
  MatGFp aug(rows_, 2 * cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
    aug.set(i, cols_ + i, 1);
  }
  auto pivots = echelonize(aug);
  if (static_cast<int>(pivots.size()) != rows_) throw InvalidInput("singular matrix");
  MatGFp out(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, aug.at(i, cols_ + j));
  return out;
}

MatGFp MatGFp::stable_power() const {
  if (rows_ != cols_) throw InvalidInput("stable_power needs a square matrix");
  MatGFp f(*this);
  long long reach = 1;
  while (reach < rows_) {
    f = f * f;
    reach *= 2;
  }
  return f;
}

MatGFp MatGFp::columns(const std::vector<int>& idx) const {
  MatGFp out(rows_, static_cast<int>(idx.size()), p_);
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int i = 0; i < rows_; ++i) out.set(i, j, at(i, idx[j]));
  return out;
}

MatGFp MatGFp::hstack(const MatGFp& a, const MatGFp& b) {
  if (a.rows() != b.rows() || a.modulus() != b.modulus())
    throw InvalidInput("hstack shape mismatch");
  MatGFp out(a.rows(), a.cols() + b.cols(), a.modulus());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.at(i, j));
  }
  return out;
}

}  // namespace fpsets
