#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "steiner/poly.hpp"

namespace steiner {

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/*
 * Prime field Z/p for odd p < 2^62 in Montgomery representation (R = 2^64).
 *
 * Values handed to add/sub/mul are Montgomery residues in [0, p). Use
 * to_montgomery / from_montgomery at the boundaries.
 */
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inverse_;
    const std::uint64_t r = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint64_t one() const { return one_; }
  std::uint64_t to_montgomery(std::uint64_t a) const { return mul(a % p_, r_squared_); }
  std::uint64_t from_montgomery(std::uint64_t a) const { return reduce(a); }
  std::uint64_t from_integer(const Integer& a) const;

  std::uint64_t pow(std::uint64_t base, std::uint64_t exponent) const;
  /// Inverse of a nonzero Montgomery residue.
  std::uint64_t inverse(std::uint64_t a) const { return pow(a, p_ - 2); }

 private:
  std::uint64_t p_;
  std::uint64_t neg_inverse_;  // -p^{-1} mod 2^64
  std::uint64_t r_squared_;    // 2^128 mod p
  std::uint64_t one_;          // 2^64 mod p
};

/// Seeded stream of distinct random primes in [2^61, 2^62).
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t next();

 private:
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> issued_;
};

/// Incremental Chinese remaindering into the symmetric range (-M/2, M/2].
class CrtAccumulator {
 public:
  void add(std::uint64_t residue, std::uint64_t prime);

  const Integer& modulus() const { return modulus_; }
  Integer symmetric_value() const;
  /// True once the modulus exceeds 2 * bound, so |x| <= bound is determined.
  bool covers(const Integer& bound) const { return modulus_ > 2 * bound; }

 private:
  Integer value_ = 0;
  Integer modulus_ = 1;
};

using ModMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Determinant of a matrix of Montgomery residues; result is a Montgomery residue.
std::uint64_t determinant_mod(ModMatrix a, const PrimeField& field);

/// Coefficients c_0..c_N of det(tau*I + A) (Montgomery residues, lowest first),
/// via reduction to Hessenberg form.
std::vector<std::uint64_t> shifted_determinant_polynomial_mod(ModMatrix a, const PrimeField& field);

/// Number of bits of a nonnegative integer (0 for 0).
std::size_t bit_length(const Integer& x);

}  // namespace steiner
