#include "steiner/resultant.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <thread>

namespace steiner {

MacaulayProblem assemble(std::vector<HomogeneousForm> forms) {
  if (forms.empty()) throw std::invalid_argument("assemble: no forms");
  const int n = forms.front().var_count();
  if (static_cast<int>(forms.size()) != n)
    throw std::invalid_argument("assemble: need as many forms as variables (got " + std::to_string(forms.size()) +
                                " forms in " + std::to_string(n) + " variables)");
  MacaulayProblem problem;
  problem.var_count = n;
  int critical = 1;
  for (const auto& f : forms) {
    if (f.var_count() != n) throw std::invalid_argument("assemble: forms live in different variable counts");
    if (f.degree() < 1) throw std::invalid_argument("assemble: every form needs degree >= 1");
    problem.degrees.push_back(f.degree());
    critical += f.degree() - 1;
  }
  problem.critical_degree = critical;
  problem.columns = monomials_of_degree(n, critical);

  std::map<Monomial, std::size_t, GradedLexGreater> index;
  for (std::size_t c = 0; c < problem.columns.size(); ++c) index.emplace(problem.columns[c], c);

  const std::size_t size = problem.columns.size();
  problem.column_class.resize(size);
  problem.reduced.resize(size);
  problem.rows.resize(size);
  for (std::size_t c = 0; c < size; ++c) {
    const Monomial& m = problem.columns[c];
    int cls = -1;
    int divisible = 0;
    for (int i = 0; i < n; ++i) {
      if (m[i] >= problem.degrees[i]) {
        if (cls < 0) cls = i;
        ++divisible;
      }
    }
    problem.column_class[c] = cls;
    problem.reduced[c] = divisible == 1;
    if (divisible >= 2) problem.nonreduced.push_back(c);

    Monomial quotient = m;
    quotient[cls] -= problem.degrees[cls];
    Monomial shifted(n);
    for (const auto& [e, coeff] : forms[cls].terms()) {
      for (int r = 0; r < n; ++r) shifted[r] = quotient[r] + e[r];
      problem.rows[c].push_back({index.at(shifted), coeff});
    }
    std::sort(problem.rows[c].begin(), problem.rows[c].end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.column < b.column; });
  }
  problem.forms = std::move(forms);
  return problem;
}

ModMatrix MacaulayProblem::numerator_mod(const PrimeField& field) const {
  const auto n = static_cast<Eigen::Index>(size());
  ModMatrix m = ModMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (const auto& e : rows[r]) m(r, static_cast<Eigen::Index>(e.column)) = field.from_integer(e.value);
  return m;
}

namespace {

std::vector<long> nonreduced_positions(const MacaulayProblem& p) {
  std::vector<long> pos(p.size(), -1);
  for (std::size_t i = 0; i < p.nonreduced.size(); ++i) pos[p.nonreduced[i]] = static_cast<long>(i);
  return pos;
}

// Squared row and column norms of the numerator (all == false) or of the
// denominator submatrix.
std::pair<std::vector<Integer>, std::vector<Integer>> squared_norms(const MacaulayProblem& p, bool denominator) {
  const std::vector<long> pos = nonreduced_positions(p);
  const std::size_t n = denominator ? p.nonreduced.size() : p.size();
  std::vector<Integer> row_sq(n, 0), col_sq(n, 0);
  for (std::size_t r = 0; r < p.size(); ++r) {
    const long rr = denominator ? pos[r] : static_cast<long>(r);
    if (rr < 0) continue;
    for (const auto& e : p.rows[r]) {
      const long cc = denominator ? pos[e.column] : static_cast<long>(e.column);
      if (cc < 0) continue;
      const Integer sq = e.value * e.value;
      row_sq[rr] += sq;
      col_sq[cc] += sq;
    }
  }
  return {row_sq, col_sq};
}

Integer ceil_sqrt(const Integer& x) {
  Integer root;
  mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
  if (root * root < x) ++root;
  return root;
}

Integer hadamard_from_norms(const std::pair<std::vector<Integer>, std::vector<Integer>>& norms) {
  Integer rows = 1, cols = 1;
  for (const auto& s : norms.first) rows *= s;
  for (const auto& s : norms.second) cols *= s;
  return ceil_sqrt(rows < cols ? rows : cols);
}

// det(tau*I + A) = sum_S tau^{N-|S|} det(A_S), and |det(A_S)| <= prod_{i in S} |row_i|.
Integer perturbed_from_norms(const std::pair<std::vector<Integer>, std::vector<Integer>>& norms) {
  Integer rows = 1, cols = 1;
  for (const auto& s : norms.first) rows *= 1 + ceil_sqrt(s);
  for (const auto& s : norms.second) cols *= 1 + ceil_sqrt(s);
  return rows < cols ? rows : cols;
}

}  // namespace

ModMatrix MacaulayProblem::denominator_mod(const PrimeField& field) const {
  const std::vector<long> pos = nonreduced_positions(*this);
  const auto n = static_cast<Eigen::Index>(nonreduced.size());
  ModMatrix m = ModMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& e : rows[nonreduced[i]]) {
      const long c = pos[e.column];
      if (c >= 0) m(i, c) = field.from_integer(e.value);
    }
  }
  return m;
}

Integer MacaulayProblem::numerator_bound() const { return hadamard_from_norms(squared_norms(*this, false)); }
Integer MacaulayProblem::denominator_bound() const { return hadamard_from_norms(squared_norms(*this, true)); }
Integer MacaulayProblem::perturbed_numerator_bound() const { return perturbed_from_norms(squared_norms(*this, false)); }
Integer MacaulayProblem::perturbed_denominator_bound() const {
  return perturbed_from_norms(squared_norms(*this, true));
}

std::string to_string(ResultantMode mode) {
  switch (mode) {
    case ResultantMode::exact: return "exact";
    case ResultantMode::witness: return "nonzero-witness";
    case ResultantMode::zero_certify: return "zero-certificate";
  }
  return "?";
}

std::string to_string(ResultantStatus status) {
  switch (status) {
    case ResultantStatus::value: return "value";
    case ResultantStatus::nonzero_witness: return "nonzero-witness";
    case ResultantStatus::zero_certificate: return "zero-certificate";
    case ResultantStatus::not_zero: return "not-zero";
    case ResultantStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Shared list of primes so numerator and denominator reconstructions reuse
// the same moduli.
class PrimePool {
 public:
  explicit PrimePool(std::uint64_t seed) : stream_(seed) {}
  std::uint64_t at(std::size_t i) {
    while (primes_.size() <= i) primes_.push_back(stream_.next());
    return primes_[i];
  }

 private:
  PrimeStream stream_;
  std::vector<std::uint64_t> primes_;
};

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Reconstruction {
  std::vector<Integer> values;
  std::size_t primes_used = 0;
  bool heuristic = false;
};

// CRT-reconstructs a vector of integers bounded by `bound` in absolute value
// from per-prime residue vectors (standard representatives). Batches of
// primes are evaluated concurrently and folded in prime order.
template <typename ResidueFn>
Reconstruction reconstruct(ResidueFn residues_for, const Integer& bound, PrimePool& pool, bool early_termination) {
  std::vector<CrtAccumulator> acc;
  Reconstruction out;
  std::vector<Integer> last;
  int stable = 0;
  std::size_t next = 0;
  const std::size_t batch = worker_count();
  while (acc.empty() || !acc.front().covers(bound)) {
    std::vector<std::uint64_t> primes;
    for (std::size_t i = 0; i < batch; ++i) primes.push_back(pool.at(next + i));
    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (std::uint64_t p : primes)
      jobs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred,
                                [&residues_for, p] { return residues_for(PrimeField(p)); }));
    for (std::size_t i = 0; i < primes.size(); ++i) {
      std::vector<std::uint64_t> r = jobs[i].get();
      if (acc.empty()) acc.resize(r.size());
      for (std::size_t j = 0; j < r.size(); ++j) acc[j].add(r[j], primes[i]);
      ++out.primes_used;
      ++next;
      if (acc.front().covers(bound)) break;
      if (early_termination) {
        std::vector<Integer> now;
        for (const auto& a : acc) now.push_back(a.symmetric_value());
        stable = (now == last) ? stable + 1 : 0;
        last = std::move(now);
        if (stable >= 3) {
          out.heuristic = true;
          break;
        }
      }
    }
    if (out.heuristic) break;
  }
  for (const auto& a : acc) out.values.push_back(a.symmetric_value());
  return out;
}

std::vector<std::uint64_t> standard(std::vector<std::uint64_t> v, const PrimeField& f) {
  for (auto& x : v) x = f.from_montgomery(x);
  return v;
}

std::size_t lowest_nonzero(const std::vector<Integer>& coefficients) {
  std::size_t i = 0;
  while (i < coefficients.size() && coefficients[i] == 0) ++i;
  return i;
}

}  // namespace

ResultantOutcome resultant_exact(const MacaulayProblem& problem, const ResultantOptions& options) {
  const auto start = Clock::now();
  ResultantOutcome out;
  out.mode = ResultantMode::exact;
  PrimePool pool(options.seed);

  auto den = reconstruct(
      [&](const PrimeField& f) {
        return std::vector<std::uint64_t>{f.from_montgomery(determinant_mod(problem.denominator_mod(f), f))};
      },
      problem.denominator_bound(), pool, false);
  const Integer det_den = den.values.front();
  std::size_t used = den.primes_used;

  if (det_den != 0) {
    const Integer bound = problem.numerator_bound();
    out.hadamard_bits = bit_length(bound);
    auto num = reconstruct(
        [&](const PrimeField& f) {
          return std::vector<std::uint64_t>{f.from_montgomery(determinant_mod(problem.numerator_mod(f), f))};
        },
        bound, pool, options.early_termination);
    used = std::max(used, num.primes_used);
    out.heuristic = num.heuristic;
    const Integer& det_num = num.values.front();
    if (det_num % det_den != 0)
      throw InternalConsistencyError("Macaulay numerator " + det_num.get_str() + " is not divisible by denominator " +
                                     det_den.get_str());
    out.value = det_num / det_den;
    if (*out.value == 0) out.certificate = ZeroCertificate{0, det_den};
  } else {
    // Denominator vanishes: Res(f_i + tau x_i^{d_i}) = det(tau I + M) / det(tau I + D).
    out.perturbed = true;
    auto dpoly = reconstruct(
        [&](const PrimeField& f) { return standard(shifted_determinant_polynomial_mod(problem.denominator_mod(f), f), f); },
        problem.perturbed_denominator_bound(), pool, false);
    const std::size_t order = lowest_nonzero(dpoly.values);
    if (order == dpoly.values.size())
      throw InternalConsistencyError("perturbed denominator reconstructed as the zero polynomial");
    const Integer bound = problem.perturbed_numerator_bound();
    out.hadamard_bits = bit_length(bound);
    auto npoly = reconstruct(
        [&](const PrimeField& f) {
          auto c = standard(shifted_determinant_polynomial_mod(problem.numerator_mod(f), f), f);
          c.resize(order + 1);
          return c;
        },
        bound, pool, options.early_termination);
    used = std::max({used, dpoly.primes_used, npoly.primes_used});
    out.heuristic = npoly.heuristic;
    const std::size_t n_order = lowest_nonzero(npoly.values);
    const Integer& d_coeff = dpoly.values[order];
    if (n_order > order) {
      out.value = 0;
      out.certificate = ZeroCertificate{static_cast<int>(order), d_coeff};
    } else if (n_order < order) {
      throw InternalConsistencyError("perturbed numerator vanishes to lower order than the denominator");
    } else {
      const Integer& n_coeff = npoly.values[order];
      if (n_coeff % d_coeff != 0)
        throw InternalConsistencyError("perturbed quotient is not integral at tau = 0");
      out.value = n_coeff / d_coeff;
    }
  }
  out.status = ResultantStatus::value;
  out.primes_used = used;
  out.wall_ms = elapsed_ms(start);
  return out;
}

std::uint64_t resultant_mod(const MacaulayProblem& problem, const PrimeField& field, bool* perturbed) {
  const std::uint64_t det_den = determinant_mod(problem.denominator_mod(field), field);
  if (det_den != 0) {
    if (perturbed) *perturbed = false;
    const std::uint64_t det_num = determinant_mod(problem.numerator_mod(field), field);
    return field.from_montgomery(field.mul(det_num, field.inverse(det_den)));
  }
  if (perturbed) *perturbed = true;
  const auto dpoly = shifted_determinant_polynomial_mod(problem.denominator_mod(field), field);
  std::size_t order = 0;
  while (dpoly[order] == 0) ++order;  // monic, so this terminates
  const auto npoly = shifted_determinant_polynomial_mod(problem.numerator_mod(field), field);
  return field.from_montgomery(field.mul(npoly[order], field.inverse(dpoly[order])));
}

ResultantOutcome resultant_nonzero_witness(const MacaulayProblem& problem, const ResultantOptions& options) {
  const auto start = Clock::now();
  ResultantOutcome out;
  out.mode = ResultantMode::witness;
  PrimeStream primes(options.seed);
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    const std::uint64_t p = primes.next();
    const PrimeField field(p);
    bool perturbed = false;
    const std::uint64_t residue = resultant_mod(problem, field, &perturbed);
    out.perturbed = out.perturbed || perturbed;
    ++out.primes_used;
    if (residue != 0) {
      out.status = ResultantStatus::nonzero_witness;
      out.witness = ResultantWitness{p, residue};
      break;
    }
  }
  out.wall_ms = elapsed_ms(start);
  return out;
}

ResultantOutcome resultant_zero_certify(const MacaulayProblem& problem, const ResultantOptions& options) {
  ResultantOptions certified = options;
  certified.early_termination = false;
  ResultantOutcome out = resultant_exact(problem, certified);
  out.mode = ResultantMode::zero_certify;
  if (*out.value == 0) {
    out.status = ResultantStatus::zero_certificate;
    out.value.reset();
  } else {
    out.status = ResultantStatus::not_zero;
    out.certificate.reset();
  }
  return out;
}

ResultantOutcome compute_resultant(const MacaulayProblem& problem, ResultantMode mode, const ResultantOptions& options) {
  switch (mode) {
    case ResultantMode::exact: return resultant_exact(problem, options);
    case ResultantMode::witness: return resultant_nonzero_witness(problem, options);
    case ResultantMode::zero_certify: return resultant_zero_certify(problem, options);
  }
  throw std::invalid_argument("unknown resultant mode");
}

namespace {

bool has_leading_power(const HomogeneousForm& f, int variable) {
  Monomial m(f.var_count(), 0);
  m[variable] = f.degree();
  return f.coefficient(m) != 0;
}

bool augment(int form, const std::vector<std::vector<int>>& variables_of, std::vector<int>& form_of,
             std::vector<bool>& visited) {
  for (int v : variables_of[form]) {
    if (visited[v]) continue;
    visited[v] = true;
    if (form_of[v] < 0 || augment(form_of[v], variables_of, form_of, visited)) {
      form_of[v] = form;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> leading_power_order(const std::vector<HomogeneousForm>& forms) {
  const int n = static_cast<int>(forms.size());
  auto qualifies = [&](const std::vector<int>& order) {
    for (int i = 0; i < n; ++i)
      if (forms[order[i]].var_count() != n || !has_leading_power(forms[order[i]], i)) return false;
    return true;
  };
  std::vector<int> identity(n);
  for (int i = 0; i < n; ++i) identity[i] = i;
  if (qualifies(identity)) return identity;
  std::vector<int> shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = (i + n - 1) % n;
  if (qualifies(shifted)) return shifted;

  std::vector<std::vector<int>> variables_of(n);
  for (int f = 0; f < n; ++f)
    for (int v = 0; v < n && forms[f].var_count() == n; ++v)
      if (has_leading_power(forms[f], v)) variables_of[f].push_back(v);
  std::vector<int> form_of(n, -1);
  for (int f = 0; f < n; ++f) {
    std::vector<bool> visited(n, false);
    if (!augment(f, variables_of, form_of, visited)) return identity;
  }
  return form_of;
}

int form_order_sign(const std::vector<int>& degrees, const std::vector<int>& order) {
  bool odd_product = true;
  for (int d : degrees) odd_product = odd_product && (d % 2 == 1);
  if (!odd_product) return 1;
  int inversions = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

ResultantOutcome resultant_of_forms(const std::vector<HomogeneousForm>& forms, ResultantMode mode,
                                    const ResultantOptions& options) {
  const std::vector<int> order = leading_power_order(forms);
  std::vector<HomogeneousForm> arranged;
  std::vector<int> degrees;
  for (int i : order) arranged.push_back(forms[i]);
  for (const auto& f : forms) degrees.push_back(f.degree());
  ResultantOutcome out = compute_resultant(assemble(std::move(arranged)), mode, options);
  if (form_order_sign(degrees, order) < 0) {
    if (out.value) *out.value = -*out.value;
    if (out.witness && out.witness->residue != 0) out.witness->residue = out.witness->prime - out.witness->residue;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> resultant_residues(const MacaulayProblem& problem,
                                                                        int prime_count, std::uint64_t seed) {
  PrimeStream primes(seed);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (int i = 0; i < prime_count; ++i) {
    const std::uint64_t p = primes.next();
    out.emplace_back(p, resultant_mod(problem, PrimeField(p)));
  }
  return out;
}

nlohmann::json to_json(const ResultantOutcome& o) {
  nlohmann::json j{{"mode", to_string(o.mode)},
                   {"status", to_string(o.status)},
                   {"perturbed", o.perturbed},
                   {"heuristic", o.heuristic},
                   {"primes_used", o.primes_used},
                   {"hadamard_bits", o.hadamard_bits},
                   {"wall_ms", o.wall_ms}};
  if (o.value) {
    j["value"] = o.value->get_str();
    j["sign"] = sgn(*o.value);
  }
  if (o.witness) {
    j["prime"] = std::to_string(o.witness->prime);
    j["residue"] = std::to_string(o.witness->residue);
  }
  if (o.certificate)
    j["certificate"] = {{"order", o.certificate->order},
                        {"denominator_coefficient", o.certificate->denominator_coefficient.get_str()}};
  return j;
}

ResultantOutcome outcome_from_json(const nlohmann::json& j) {
  ResultantOutcome o;
  const std::string mode = j.at("mode");
  if (mode == "exact") o.mode = ResultantMode::exact;
  else if (mode == "nonzero-witness") o.mode = ResultantMode::witness;
  else if (mode == "zero-certificate") o.mode = ResultantMode::zero_certify;
  else throw std::invalid_argument("outcome JSON: unknown mode " + mode);
  const std::string status = j.at("status");
  const std::pair<const char*, ResultantStatus> statuses[] = {
      {"value", ResultantStatus::value},
      {"nonzero-witness", ResultantStatus::nonzero_witness},
      {"zero-certificate", ResultantStatus::zero_certificate},
      {"not-zero", ResultantStatus::not_zero},
      {"inconclusive", ResultantStatus::inconclusive}};
  bool known = false;
  for (const auto& [name, s] : statuses) {
    if (status == name) {
      o.status = s;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("outcome JSON: unknown status " + status);
  o.perturbed = j.value("perturbed", false);
  o.heuristic = j.value("heuristic", false);
  o.primes_used = j.value("primes_used", std::size_t{0});
  o.hadamard_bits = j.value("hadamard_bits", std::size_t{0});
  o.wall_ms = j.value("wall_ms", 0.0);
  if (j.contains("value")) o.value = Integer(j.at("value").get<std::string>());
  if (j.contains("prime"))
    o.witness = ResultantWitness{std::stoull(j.at("prime").get<std::string>()),
                                 std::stoull(j.at("residue").get<std::string>())};
  if (j.contains("certificate"))
    o.certificate = ZeroCertificate{j.at("certificate").at("order").get<int>(),
                                    Integer(j.at("certificate").at("denominator_coefficient").get<std::string>())};
  return o;
}

}  // namespace steiner
