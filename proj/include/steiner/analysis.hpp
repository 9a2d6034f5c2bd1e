#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steiner/factor.hpp"
#include "steiner/newton.hpp"
#include "steiner/resultant.hpp"
#include "steiner/steiner.hpp"
#include "steiner/tree.hpp"

namespace steiner {

/// Which gradient forms enter the resultant: g_r, or D_r p = k * g_r.
enum class Normalization { paper_g, full_dp };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

/// Res(k g) = factor * Res(g) with factor = k^(n (k-1)^(n-1)).
Integer normalization_factor(int k, int vertex_count);

std::vector<HomogeneousForm> gradient_forms(const Tree& t, int k, Normalization normalization);

/// Res of the gradient forms in vertex order g_0, ..., g_{n-1}.
ResultantOutcome gradient_resultant(const Tree& t, int k, ResultantMode mode,
                                    Normalization normalization = Normalization::paper_g,
                                    const ResultantOptions& options = {});

/// Source of gradient resultants for the suites (e.g. a caching wrapper);
/// an empty provider means gradient_resultant.
using ResultantProvider =
    std::function<ResultantOutcome(const Tree&, int, ResultantMode, Normalization, const ResultantOptions&)>;

/// Res of the gradient forms modulo `prime_count` seeded primes, as
/// (prime, residue) pairs in the same form order convention.
std::vector<std::pair<std::uint64_t, std::uint64_t>> gradient_residues(const Tree& t, int k, int prime_count,
                                                                       std::uint64_t seed,
                                                                       Normalization normalization = Normalization::paper_g);

/// Sizes where exact resultants are offered: (4,<=5) (6,<=4) (8,<=3) (2,<=9) (3,<=5) (5,<=4).
bool exact_feasible(int k, int vertex_count);
/// Throws SizeLimitError naming the feasible set.
void require_exact_feasible(int k, int vertex_count);

enum class VerificationStatus { verified, refuted, inconclusive };
std::string to_string(VerificationStatus s);

struct InstanceResult {
  std::string tree;  // canonical code, or "" for instances not tied to a tree
  nlohmann::json result;
  nlohmann::json evidence;
};

struct VerificationReport {
  std::string claim;
  nlohmann::json params = nlohmann::json::object();
  VerificationStatus status = VerificationStatus::verified;
  std::vector<InstanceResult> instances;
  std::string started;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;

  /// Lowers the status: refuted beats inconclusive beats verified.
  void demote(VerificationStatus s);
};

nlohmann::json to_json(const VerificationReport& r);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// det(distance matrix) = (1 - n)(-2)^(n-2) for every unlabeled tree, 2 <= n <= max_v.
VerificationReport graham_pollak_suite(int max_v);

/// Res({D_r p}) = 2^n det(distance matrix) at k = 2 for every unlabeled tree, 2 <= n <= max_v.
VerificationReport linear_resultant_suite(int max_v, std::uint64_t seed = 1);

/// steiner_distance against the brute-force oracle on every multiset of size <= max_k.
VerificationReport oracle_equivalence_suite(int max_v, int max_k);

/*
 * Parity dichotomy over every unlabeled tree on v_count vertices.
 *
 * Even k expects a nonzero witness (exact value as fallback), odd k with
 * v_count >= 3 expects an exact zero certificate, odd k with v_count = 2 is
 * outside the stated scope and only reports the computed value.
 */
VerificationReport parity_theorem_check(int k, int vertex_count, std::uint64_t seed = 1,
                                        const ResultantProvider& provider = {});

enum class InvarianceMode { exact, modular };

/// Equal Res for every unlabeled tree on v_count vertices. Modular mode compares
/// residues modulo prime_count >= 5 shared primes, which is evidence only.
VerificationReport invariance_experiment(int k, int vertex_count, InvarianceMode mode, int prime_count = 5,
                                         std::uint64_t seed = 1, const ResultantProvider& provider = {});

/// Table index convention: row (a, b) read as (k, n) or as (n, k).
enum class TableIndex { kn, nk };

struct TableRow {
  int first;
  int second;
  Factorization value;
};

/// The factored hyperdeterminant values as printed, keyed by the printed pair.
const std::vector<TableRow>& hyperdeterminant_table();

/// Looks up (k, n) under the given convention; nullptr when absent.
const TableRow* find_table_row(int k, int vertex_count, TableIndex index);

/// Exact Res against the table row: both factorizations, the exact ratio, and
/// divisibility by 2^(k-1) - 1. Verified when 2^(k-1) - 1 divides |Res|.
VerificationReport table_comparison(int k, int vertex_count, TableIndex index = TableIndex::kn,
                                    std::uint64_t seed = 1, const ResultantProvider& provider = {});

/*
 * Leaf-deletion identity behind the even-k argument.
 *
 * With leaf l, its neighbor m and T' = T - l: at points with x_l = 1 and the
 * other coordinates summing to 1, and x'_m = x_m + 1, checks
 * g^T_m(x) - g^{T'}_m(x') = 2^(k-1) - 1 exactly.
 */
VerificationReport proof_identity_check(const Tree& t, int k, int trials, std::uint64_t seed);

/// Row-difference closed form against direct contraction for every edge and
/// every vertex w, by PIT then structural equality.
VerificationReport row_difference_check(const Tree& t, int k, std::uint64_t seed = 1);

/// Gradient at forced_candidate(t), plus the leaf-side sum constraints.
VerificationReport forced_candidate_check(const Tree& t, int k);

/// Row-difference and forced-candidate checks over every unlabeled tree on v_count vertices.
VerificationReport propositions_suite(int k, int vertex_count, std::uint64_t seed = 1);

/// proof_identity_check over every unlabeled tree on v_count vertices.
VerificationReport proof_identity_suite(int k, int vertex_count, int trials, std::uint64_t seed = 1);

/// Newton search for a gradient zero. Found is verified; not-found is inconclusive.
VerificationReport nullvector_search(const Tree& t, int k, const NewtonOptions& options = {});

/// Merges per-tree reports into one with the given claim.
VerificationReport merge_reports(const std::string& claim, nlohmann::json params,
                                 const std::vector<VerificationReport>& parts);

}  // namespace steiner
