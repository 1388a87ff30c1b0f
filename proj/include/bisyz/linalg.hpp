#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace bisyz {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ull;  // 2^31 - 1

/* Dense exact matrix over Q, row-major. */
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpq_class> entries;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  mpq_class& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }
};

/* Dense matrix over F_p, p < 2^31 so products fit in 64 bits. */
struct PMatrix {
  std::uint64_t p = kDefaultPrime;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> entries;

  PMatrix() = default;
  PMatrix(std::size_t r, std::size_t c, std::uint64_t prime = kDefaultPrime)
      : p(prime), rows(r), cols(c), entries(r * c, 0) {}
  std::uint64_t& at(std::size_t r, std::size_t c) {
    return entries[r * cols + c];
  }
  std::uint64_t at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }
};

std::uint64_t mod_reduce(const mpz_class& value, std::uint64_t p);

std::size_t rank(QMatrix mat);
std::size_t rank(PMatrix mat);

/* Basis of the right kernel {v : M v = 0}, one vector per column of the
   nullity; deterministic (free columns in ascending order). */
std::vector<std::vector<mpq_class>> kernel_basis(QMatrix mat);
std::vector<std::vector<std::uint64_t>> kernel_basis(PMatrix mat);

PMatrix reduce_mod_p(const QMatrix& mat, std::uint64_t p = kDefaultPrime);

}  // namespace bisyz
