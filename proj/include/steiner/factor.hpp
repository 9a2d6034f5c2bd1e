#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "steiner/poly.hpp"

namespace steiner {

/// sign * prod p^e * composite_remainder, with composite_remainder == 1 when
/// the factorization is complete.
struct Factorization {
  int sign = 1;
  std::map<Integer, int> primes;
  Integer composite_remainder = 1;

  bool complete() const { return composite_remainder == 1; }
  Integer product() const;
  /// e.g. "-2^2 * 7"
  std::string to_string() const;
};

struct FactorOptions {
  unsigned long trial_limit = 1u << 16;
  /// Brent iterations per rho attempt before giving up on a cofactor.
  unsigned long rho_iterations = 1ul << 22;
  int rho_attempts = 8;
  int primality_rounds = 40;
};

/// Trial division, then Brent's variant of Pollard rho on the cofactors.
/// Cofactors that resist rho stay in composite_remainder.
Factorization factor_integer(const Integer& value, const FactorOptions& options = {});

bool is_probable_prime(const Integer& n, int rounds = 40);

nlohmann::json to_json(const Factorization& f);

}  // namespace steiner
