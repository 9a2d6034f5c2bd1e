#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "steiner/modular.hpp"
#include "steiner/poly.hpp"

namespace steiner {

struct SparseEntry {
  std::size_t column;
  Integer value;
};
using SparseRow = std::vector<SparseEntry>;

/*
 * Macaulay matrix of n homogeneous forms in n variables at the critical degree
 * sum(d_i - 1) + 1.
 *
 * Columns are the monomials of the critical degree in graded-lex order. Column
 * m belongs to class i, the smallest i with x_i^{d_i} | m, and row m holds the
 * coefficients of (m / x_i^{d_i}) * f_i, so rows and columns share one index
 * and a monomial system assembles to the identity. The denominator is the
 * principal submatrix on the non-reduced monomials (divisible by x_j^{d_j} for
 * at least two j). Res = det(numerator) / det(denominator) when the latter is
 * nonzero.
 */
struct MacaulayProblem {
  std::vector<HomogeneousForm> forms;
  int var_count = 0;
  std::vector<int> degrees;
  int critical_degree = 0;
  std::vector<Monomial> columns;
  std::vector<int> column_class;
  std::vector<bool> reduced;
  std::vector<std::size_t> nonreduced;
  std::vector<SparseRow> rows;

  std::size_t size() const { return columns.size(); }

  ModMatrix numerator_mod(const PrimeField& field) const;
  ModMatrix denominator_mod(const PrimeField& field) const;
  Integer numerator_bound() const;
  Integer denominator_bound() const;
  /// Bound on every coefficient of det(tau*I + numerator) and of the denominator analogue.
  Integer perturbed_numerator_bound() const;
  Integer perturbed_denominator_bound() const;
};

MacaulayProblem assemble(std::vector<HomogeneousForm> forms);

enum class ResultantMode { exact, witness, zero_certify };
enum class ResultantStatus { value, nonzero_witness, zero_certificate, not_zero, inconclusive };

std::string to_string(ResultantMode mode);
std::string to_string(ResultantStatus status);

struct ResultantWitness {
  std::uint64_t prime;
  std::uint64_t residue;  // Res mod prime, nonzero
};

/// Res = 0 because det(tau*I + numerator) vanishes to order > `order` at
/// tau = 0 while det(tau*I + denominator) has the nonzero coefficient
/// `denominator_coefficient` at tau^order. Order 0 is the unperturbed case.
struct ZeroCertificate {
  int order;
  Integer denominator_coefficient;
};

struct ResultantOutcome {
  ResultantMode mode = ResultantMode::exact;
  ResultantStatus status = ResultantStatus::inconclusive;
  std::optional<Integer> value;
  std::optional<ResultantWitness> witness;
  std::optional<ZeroCertificate> certificate;
  bool perturbed = false;   // denominator vanished; tau-perturbation used
  bool heuristic = false;   // early-terminated CRT, not certified
  std::size_t primes_used = 0;
  std::size_t hadamard_bits = 0;
  double wall_ms = 0.0;

  int sign() const { return value ? sgn(*value) : 0; }
};

struct ResultantOptions {
  std::uint64_t seed = 1;
  int attempts = 8;                // witness mode
  bool early_termination = false;  // stop CRT after 3 stable reconstructions
};

ResultantOutcome resultant_exact(const MacaulayProblem& problem, const ResultantOptions& options = {});
ResultantOutcome resultant_nonzero_witness(const MacaulayProblem& problem, const ResultantOptions& options = {});
ResultantOutcome resultant_zero_certify(const MacaulayProblem& problem, const ResultantOptions& options = {});
ResultantOutcome compute_resultant(const MacaulayProblem& problem, ResultantMode mode,
                                   const ResultantOptions& options = {});

/*
 * Form order used to assemble a system whose i-th form may lack x_i^{d_i}.
 *
 * Returns a permutation `order` such that forms[order[i]] has a nonzero
 * x_i^{d} coefficient: the identity if it qualifies, else a cyclic shift,
 * else any perfect matching; the identity when none exists.
 */
std::vector<int> leading_power_order(const std::vector<HomogeneousForm>& forms);

/// +1 or -1 with Res(forms permuted by `order`) = sign * Res(forms): each
/// transposition of two forms contributes (-1)^{d_0 d_1 ... d_{n-1}}.
int form_order_sign(const std::vector<int>& degrees, const std::vector<int>& order);

/// Res(forms) in the given form order and fixed graded-lex conventions,
/// assembled in leading_power_order and sign-corrected.
ResultantOutcome resultant_of_forms(const std::vector<HomogeneousForm>& forms, ResultantMode mode,
                                    const ResultantOptions& options = {});

/// Res mod p. Always defined: when the denominator vanishes mod p the
/// perturbed determinants are used, since det(tau*I + numerator) =
/// Res(tau) * det(tau*I + denominator) holds in Z[tau].
std::uint64_t resultant_mod(const MacaulayProblem& problem, const PrimeField& field, bool* perturbed = nullptr);

/// (prime, Res mod prime) for `prime_count` independent random primes.
std::vector<std::pair<std::uint64_t, std::uint64_t>> resultant_residues(const MacaulayProblem& problem,
                                                                        int prime_count, std::uint64_t seed);

/// Raised when exact arithmetic contradicts itself (e.g. an inexact division).
class InternalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const ResultantOutcome& outcome);
ResultantOutcome outcome_from_json(const nlohmann::json& j);

}  // namespace steiner
