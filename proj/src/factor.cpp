#include "steiner/factor.hpp"

#include <stdexcept>
#include <vector>

namespace steiner {

Integer Factorization::product() const {
  Integer p = sign;
  for (const auto& [q, e] : primes) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e));
    p *= power;
  }
  return p * composite_remainder;
}

std::string Factorization::to_string() const {
  std::string s = sign < 0 ? "-" : "";
  bool first = true;
  for (const auto& [q, e] : primes) {
    if (!first) s += " * ";
    first = false;
    s += q.get_str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  if (!complete()) {
    if (!first) s += " * ";
    first = false;
    s += "[" + composite_remainder.get_str() + "]";
  }
  if (first) s += "1";
  return s;
}

bool is_probable_prime(const Integer& n, int rounds) {
  return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), rounds) > 0;
}

namespace {

// Brent's cycle detection with batched gcds. Returns 0 on failure.
Integer brent_rho(const Integer& n, unsigned long c, unsigned long max_iterations) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = 2, x, q = 1, g = 1, ys;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  const unsigned long m = 128;
  unsigned long r = 1, spent = 0;
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    do {
      ys = y;
      const unsigned long batch = std::min(m, r - k);
      for (unsigned long i = 0; i < batch; ++i) {
        step(y);
        Integer diff = x - y;
        q = q * abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += batch;
      spent += batch;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1 && spent < max_iterations);

  if (g == n) {
    // The batch overshot: replay one step at a time.
    do {
      step(ys);
      Integer diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == 1 || g == n) return 0;
  return g;
}

void split(const Integer& n, const FactorOptions& options, Factorization& out) {
  if (n == 1) return;
  if (is_probable_prime(n, options.primality_rounds)) {
    ++out.primes[n];
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split(root, options, out);
    split(root, options, out);
    return;
  }
  for (int attempt = 0; attempt < options.rho_attempts; ++attempt) {
    const Integer d = brent_rho(n, 1 + 2 * static_cast<unsigned long>(attempt), options.rho_iterations);
    if (d != 0) {
      split(d, options, out);
      split(Integer(n / d), options, out);
      return;
    }
  }
  out.composite_remainder *= n;
}

}  // namespace

Factorization factor_integer(const Integer& value, const FactorOptions& options) {
  if (value == 0) throw std::invalid_argument("factor_integer: zero has no factorization");
  Factorization out;
  out.sign = sgn(value);
  Integer n = abs(value);
  for (unsigned long p = 2; p <= options.trial_limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out.primes[Integer(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  split(n, options, out);
  return out;
}

nlohmann::json to_json(const Factorization& f) {
  nlohmann::json primes = nlohmann::json::array();
  for (const auto& [p, e] : f.primes) primes.push_back({{"prime", p.get_str()}, {"exponent", e}});
  nlohmann::json j{{"sign", f.sign}, {"primes", primes}, {"text", f.to_string()}, {"complete", f.complete()}};
  if (!f.complete()) j["composite_remainder"] = f.composite_remainder.get_str();
  return j;
}

}  // namespace steiner
