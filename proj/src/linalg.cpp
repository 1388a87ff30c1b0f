#include "bisyz/linalg.hpp"

#include <algorithm>
#include <utility>

#include "bisyz/core.hpp"

namespace bisyz {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // a, b < p < 2^31, product < 2^62
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return acc;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  return powmod(a, p - 2, p);
}

/* Reduced row echelon form in place; returns pivot columns in order. */
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < m.cols; ++c)
        std::swap(m.at(pivot, c), m.at(row, c));
    }
    mpq_class inv = 1 / m.at(row, col);
    for (std::size_t c = col; c < m.cols; ++c) {
      m.at(row, c) *= inv;
      m.at(row, c).canonicalize();
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      mpq_class factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c) {
        m.at(r, c) -= factor * m.at(row, c);
        m.at(r, c).canonicalize();
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::size_t> rref(PMatrix& m) {
  const std::uint64_t p = m.p;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < m.cols; ++c)
        std::swap(m.at(pivot, c), m.at(row, c));
    }
    std::uint64_t inv = invmod(m.at(row, col), p);
    for (std::size_t c = col; c < m.cols; ++c)
      m.at(row, c) = mulmod(m.at(row, c), inv, p);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      std::uint64_t factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c) {
        std::uint64_t sub = mulmod(factor, m.at(row, c), p);
        m.at(r, c) = (m.at(r, c) + p - sub) % p;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::uint64_t mod_reduce(const mpz_class& value, std::uint64_t p) {
  mpz_class r = value % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += mpz_class(static_cast<unsigned long>(p));
  return r.get_ui();
}

std::size_t rank(QMatrix mat) { return rref(mat).size(); }

std::size_t rank(PMatrix mat) { return rref(mat).size(); }

std::vector<std::vector<mpq_class>> kernel_basis(QMatrix mat) {
  std::vector<std::size_t> pivots = rref(mat);
  std::vector<bool> is_pivot(mat.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (std::size_t free = 0; free < mat.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> vec(mat.cols, mpq_class(0));
    vec[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      vec[pivots[i]] = -mat.at(i, free);
      vec[pivots[i]].canonicalize();
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

std::vector<std::vector<std::uint64_t>> kernel_basis(PMatrix mat) {
  const std::uint64_t p = mat.p;
  std::vector<std::size_t> pivots = rref(mat);
  std::vector<bool> is_pivot(mat.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < mat.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> vec(mat.cols, 0);
    vec[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      vec[pivots[i]] = (p - mat.at(i, free)) % p;
    basis.push_back(std::move(vec));
  }
  return basis;
}

PMatrix reduce_mod_p(const QMatrix& mat, std::uint64_t p) {
  PMatrix out(mat.rows, mat.cols, p);
  for (std::size_t i = 0; i < mat.entries.size(); ++i) {
    const mpq_class& q = mat.entries[i];
    std::uint64_t num = mod_reduce(q.get_num(), p);
    std::uint64_t den = mod_reduce(q.get_den(), p);
    if (den == 0) throw BisyzError("reduce_mod_p: denominator divisible by p");
    out.entries[i] = den == 1 ? num : mulmod(num, invmod(den, p), p);
  }
  return out;
}

}  // namespace bisyz
