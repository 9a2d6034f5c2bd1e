#include "steiner/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace steiner {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || (p & 1) == 0 || p >= (1ull << 62)) throw std::invalid_argument("PrimeField: need an odd modulus below 2^62");
  std::uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  neg_inverse_ = ~inv + 1;
  one_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
  r_squared_ = mulmod(one_, one_, p);
}

std::uint64_t PrimeField::from_integer(const Integer& a) const {
  const std::uint64_t r = mpz_fdiv_ui(a.get_mpz_t(), p_);
  return to_montgomery(r);
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exponent) const {
  std::uint64_t result = one_;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t PrimeStream::next() {
  while (true) {
    const std::uint64_t candidate = (rng_() >> 2) | (1ull << 61) | 1ull;
    if (!is_prime_u64(candidate)) continue;
    if (std::find(issued_.begin(), issued_.end(), candidate) != issued_.end()) continue;
    issued_.push_back(candidate);
    return candidate;
  }
}

void CrtAccumulator::add(std::uint64_t residue, std::uint64_t prime) {
  residue %= prime;
  const std::uint64_t current = mpz_fdiv_ui(value_.get_mpz_t(), prime);
  const std::uint64_t m_mod = mpz_fdiv_ui(modulus_.get_mpz_t(), prime);
  if (m_mod == 0) throw std::invalid_argument("CrtAccumulator: repeated prime");
  const std::uint64_t diff = residue >= current ? residue - current : residue + prime - current;
  const std::uint64_t t = mulmod(diff, powmod(m_mod, prime - 2, prime), prime);
  Integer step = modulus_;
  mpz_mul_ui(step.get_mpz_t(), step.get_mpz_t(), t);
  value_ += step;
  mpz_mul_ui(modulus_.get_mpz_t(), modulus_.get_mpz_t(), prime);
}

Integer CrtAccumulator::symmetric_value() const {
  Integer v = value_;
  if (2 * v > modulus_) v -= modulus_;
  return v;
}

std::uint64_t determinant_mod(ModMatrix a, const PrimeField& field) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant_mod: matrix is not square");
  const Eigen::Index n = a.rows();
  std::uint64_t det = field.one();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      a.row(pivot).swap(a.row(c));
      det = field.neg(det);
    }
    std::uint64_t* pivot_row = a.row(c).data();
    det = field.mul(det, pivot_row[c]);
    const std::uint64_t inv = field.inverse(pivot_row[c]);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      std::uint64_t* row = a.row(i).data();
      if (row[c] == 0) continue;
      const std::uint64_t factor = field.mul(row[c], inv);
      row[c] = 0;
      for (Eigen::Index j = c + 1; j < n; ++j) {
        if (pivot_row[j] != 0) row[j] = field.sub(row[j], field.mul(factor, pivot_row[j]));
      }
    }
  }
  return det;
}

std::vector<std::uint64_t> shifted_determinant_polynomial_mod(ModMatrix a, const PrimeField& field) {
  if (a.rows() != a.cols()) throw std::invalid_argument("shifted_determinant_polynomial_mod: matrix is not square");
  const Eigen::Index n = a.rows();
  // det(tau*I + A) is the characteristic polynomial of -A.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = field.neg(a(i, j));

  // Similarity reduction to upper Hessenberg form.
  for (Eigen::Index m = 1; m + 1 < n; ++m) {
    const Eigen::Index c = m - 1;
    Eigen::Index pivot = m;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != m) {
      a.row(pivot).swap(a.row(m));
      a.col(pivot).swap(a.col(m));
    }
    const std::uint64_t inv = field.inverse(a(m, c));
    // The eliminations for one m commute, so all row updates go first and the
    // inverse column updates are folded into one pass over contiguous rows.
    std::vector<std::pair<Eigen::Index, std::uint64_t>> multipliers;
    const std::uint64_t* row_m = a.row(m).data();
    for (Eigen::Index i = m + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const std::uint64_t u = field.mul(a(i, c), inv);
      multipliers.emplace_back(i, u);
      std::uint64_t* row_i = a.row(i).data();
      for (Eigen::Index j = c; j < n; ++j) {
        if (row_m[j] != 0) row_i[j] = field.sub(row_i[j], field.mul(u, row_m[j]));
      }
    }
    if (multipliers.empty()) continue;
    for (Eigen::Index r = 0; r < n; ++r) {
      std::uint64_t* row = a.row(r).data();
      std::uint64_t acc = row[m];
      for (const auto& [i, u] : multipliers) {
        if (row[i] != 0) acc = field.add(acc, field.mul(u, row[i]));
      }
      row[m] = acc;
    }
  }

  // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<std::uint64_t>> p(n + 1);
  p[0] = {field.one()};
  for (Eigen::Index m = 1; m <= n; ++m) {
    std::vector<std::uint64_t>& cur = p[m];
    cur.assign(m + 1, 0);
    const std::uint64_t h_mm = a(m - 1, m - 1);
    for (Eigen::Index d = 0; d < m; ++d) {
      cur[d + 1] = field.add(cur[d + 1], p[m - 1][d]);
      cur[d] = field.sub(cur[d], field.mul(h_mm, p[m - 1][d]));
    }
    std::uint64_t t = field.one();
    for (Eigen::Index i = m - 1; i >= 1; --i) {
      t = field.mul(t, a(i, i - 1));
      if (t == 0) break;
      const std::uint64_t coeff = field.mul(a(i - 1, m - 1), t);
      if (coeff == 0) continue;
      for (std::size_t d = 0; d < p[i - 1].size(); ++d) cur[d] = field.sub(cur[d], field.mul(coeff, p[i - 1][d]));
    }
  }
  return p[n];
}

std::size_t bit_length(const Integer& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace steiner
