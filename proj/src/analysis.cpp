#include "steiner/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include "steiner/linalg.hpp"

namespace steiner {

std::string to_string(Normalization n) { return n == Normalization::paper_g ? "paper-g" : "full-Dp"; }

Normalization normalization_from_string(const std::string& s) {
  if (s == "paper-g") return Normalization::paper_g;
  if (s == "full-Dp") return Normalization::full_dp;
  throw std::invalid_argument("unknown normalization '" + s + "' (expected paper-g or full-Dp)");
}

Integer normalization_factor(int k, int vertex_count) {
  Integer exponent;
  mpz_ui_pow_ui(exponent.get_mpz_t(), static_cast<unsigned long>(k - 1), static_cast<unsigned long>(vertex_count - 1));
  exponent *= vertex_count;
  Integer factor;
  mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(k), exponent.get_ui());
  return factor;
}

std::vector<HomogeneousForm> gradient_forms(const Tree& t, int k, Normalization normalization) {
  std::vector<HomogeneousForm> forms = gradient_system(t, k).forms;
  if (normalization == Normalization::full_dp)
    for (auto& f : forms) f *= Integer(k);
  return forms;
}

ResultantOutcome gradient_resultant(const Tree& t, int k, ResultantMode mode, Normalization normalization,
                                    const ResultantOptions& options) {
  return resultant_of_forms(gradient_forms(t, k, normalization), mode, options);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> gradient_residues(const Tree& t, int k, int prime_count,
                                                                       std::uint64_t seed,
                                                                       Normalization normalization) {
  const std::vector<HomogeneousForm> forms = gradient_forms(t, k, normalization);
  const std::vector<int> order = leading_power_order(forms);
  std::vector<HomogeneousForm> arranged;
  std::vector<int> degrees;
  for (int i : order) arranged.push_back(forms[i]);
  for (const auto& f : forms) degrees.push_back(f.degree());
  auto residues = resultant_residues(assemble(std::move(arranged)), prime_count, seed);
  if (form_order_sign(degrees, order) < 0)
    for (auto& [p, r] : residues) r = r == 0 ? 0 : p - r;
  return residues;
}

namespace {

struct FeasibleRow {
  int k;
  int max_vertices;
};

constexpr FeasibleRow kFeasible[] = {{2, 9}, {3, 5}, {4, 5}, {5, 4}, {6, 4}, {8, 3}};

std::string feasible_text() {
  std::string s;
  for (const auto& row : kFeasible) {
    if (!s.empty()) s += ", ";
    s += "(k=" + std::to_string(row.k) + ", n<=" + std::to_string(row.max_vertices) + ")";
  }
  return s;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

VerificationReport start_report(const std::string& claim, nlohmann::json params, std::uint64_t seed = 0) {
  VerificationReport r;
  r.claim = claim;
  r.params = std::move(params);
  r.seed = seed;
  r.started = utc_timestamp();
  return r;
}

void sort_instances(VerificationReport& r) {
  std::stable_sort(r.instances.begin(), r.instances.end(),
                   [](const InstanceResult& a, const InstanceResult& b) { return a.tree < b.tree; });
}

nlohmann::json integer_json(const Integer& v) { return v.get_str(); }

std::vector<Tree> unlabeled(int vertex_count) { return enumerate_trees(vertex_count, TreeEnumeration::unlabeled); }

nlohmann::json tree_json(const Tree& t) {
  return {{"code", canonical_code(t).code}, {"graph6", to_graph6(t)}, {"edges", t.edges()}};
}

Integer two_pow_minus_one(int k) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
  return v - 1;
}

}  // namespace

bool exact_feasible(int k, int vertex_count) {
  if (vertex_count < 1) return false;
  for (const auto& row : kFeasible)
    if (row.k == k) return vertex_count <= row.max_vertices;
  return false;
}

void require_exact_feasible(int k, int vertex_count) {
  if (!exact_feasible(k, vertex_count))
    throw SizeLimitError("exact resultant at (k=" + std::to_string(k) + ", n=" + std::to_string(vertex_count) +
                         ") is outside the supported set " + feasible_text() + "; use witness mode");
}

std::string to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::verified: return "verified";
    case VerificationStatus::refuted: return "refuted";
    case VerificationStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

void VerificationReport::demote(VerificationStatus s) {
  if (s == VerificationStatus::refuted || status == VerificationStatus::refuted) {
    status = VerificationStatus::refuted;
  } else if (s == VerificationStatus::inconclusive) {
    status = VerificationStatus::inconclusive;
  }
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& i : r.instances) instances.push_back({{"tree", i.tree}, {"result", i.result}, {"evidence", i.evidence}});
  return {{"claim", r.claim},
          {"params", r.params},
          {"status", to_string(r.status)},
          {"instances", std::move(instances)},
          {"started", r.started},
          {"wall_ms", r.wall_ms},
          {"seed", r.seed},
          {"versions", {{"steiner", STEINER_VERSION}, {"gmp", gmp_version}}}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

VerificationReport graham_pollak_suite(int max_v) {
  if (max_v < 2 || max_v > kMaxEnumerationVertices)
    throw SizeLimitError("graham_pollak_suite: max_v must lie in [2, " + std::to_string(kMaxEnumerationVertices) + "]");
  const auto start = Clock::now();
  VerificationReport report = start_report("graham-pollak", {{"max_v", max_v}});
  for (int n = 2; n <= max_v; ++n) {
    Integer expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 2, static_cast<unsigned long>(n - 2));
    if (n % 2 == 1) expected = -expected;  // (-2)^(n-2)
    expected *= 1 - n;
    for (const Tree& t : unlabeled(n)) {
      const Integer det = bareiss_determinant(distance_matrix(t));
      const bool ok = det == expected;
      report.instances.push_back({canonical_code(t).code,
                                  {{"n", n}, {"determinant", integer_json(det)}, {"ok", ok}},
                                  {{"expected", integer_json(expected)}, {"tree", tree_json(t)}}});
      if (!ok) report.demote(VerificationStatus::refuted);
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport linear_resultant_suite(int max_v, std::uint64_t seed) {
  require_exact_feasible(2, max_v);
  const auto start = Clock::now();
  VerificationReport report = start_report("linear-resultant", {{"max_v", max_v}, {"k", 2}}, seed);
  for (int n = 2; n <= max_v; ++n) {
    for (const Tree& t : unlabeled(n)) {
      const ResultantOutcome res =
          gradient_resultant(t, 2, ResultantMode::exact, Normalization::full_dp, ResultantOptions{seed});
      Integer expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), 2, static_cast<unsigned long>(n));
      expected *= bareiss_determinant(distance_matrix(t));
      const bool ok = res.value && *res.value == expected;
      report.instances.push_back({canonical_code(t).code,
                                  {{"n", n}, {"resultant", res.value ? integer_json(*res.value) : nlohmann::json()},
                                   {"ok", ok}},
                                  {{"expected", integer_json(expected)}, {"outcome", to_json(res)}}});
      if (!ok) report.demote(VerificationStatus::refuted);
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport oracle_equivalence_suite(int max_v, int max_k) {
  if (max_v < 1 || max_v > kMaxHypermatrixVertices || max_k < 1 || max_k > kMaxOrder)
    throw SizeLimitError("oracle_equivalence_suite: need max_v <= " + std::to_string(kMaxHypermatrixVertices) +
                         " and max_k <= " + std::to_string(kMaxOrder));
  const auto start = Clock::now();
  VerificationReport report = start_report("steiner-distance-oracle", {{"max_v", max_v}, {"max_k", max_k}});
  for (int n = 1; n <= max_v; ++n) {
    for (const Tree& t : unlabeled(n)) {
      long checked = 0;
      std::optional<nlohmann::json> counterexample;
      for (int k = 1; k <= max_k && !counterexample; ++k) {
        for (const Monomial& m : monomials_of_degree(n, k)) {
          VertexMultiset s;
          for (int v = 0; v < n; ++v) s.insert(s.end(), static_cast<std::size_t>(m[v]), v);
          const int fast = steiner_distance(t, s);
          const int slow = steiner_distance_oracle(t, s);
          ++checked;
          if (fast != slow) {
            counterexample = nlohmann::json{{"multiset", s}, {"steiner_distance", fast}, {"oracle", slow}};
            break;
          }
        }
      }
      nlohmann::json evidence{{"tree", tree_json(t)}};
      if (counterexample) {
        evidence["counterexample"] = *counterexample;
        report.demote(VerificationStatus::refuted);
      }
      report.instances.push_back({canonical_code(t).code,
                                  {{"n", n}, {"multisets", checked}, {"ok", !counterexample}}, evidence});
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport parity_theorem_check(int k, int vertex_count, std::uint64_t seed,
                                        const ResultantProvider& provider) {
  const ResultantProvider resultant = provider ? provider : ResultantProvider(gradient_resultant);
  if (k < 2 || vertex_count < 2 || vertex_count > 6)
    throw std::invalid_argument("parity_theorem_check: need k >= 2 and 2 <= n <= 6");
  require_exact_feasible(k, vertex_count);
  const auto start = Clock::now();
  const bool even = k % 2 == 0;
  const bool in_scope = even || vertex_count >= 3;
  VerificationReport report = start_report(
      even ? "thm-even-nonzero" : "odd-vanishing", {{"k", k}, {"n", vertex_count}, {"in_scope", in_scope}}, seed);
  const ResultantOptions options{seed};
  for (const Tree& t : unlabeled(vertex_count)) {
    nlohmann::json result{{"n", vertex_count}, {"k", k}};
    ResultantOutcome outcome;
    VerificationStatus status = VerificationStatus::verified;
    if (even) {
      outcome = resultant(t, k, ResultantMode::witness, Normalization::paper_g, options);
      if (outcome.status != ResultantStatus::nonzero_witness)
        outcome = resultant(t, k, ResultantMode::exact, Normalization::paper_g, options);
      const bool nonzero = outcome.status == ResultantStatus::nonzero_witness || outcome.sign() != 0;
      result["certificate"] = outcome.status == ResultantStatus::nonzero_witness ? "nonzero-witness" : "exact-value";
      result["nonzero"] = nonzero;
      if (!nonzero) status = VerificationStatus::refuted;
    } else if (in_scope) {
      outcome = resultant(t, k, ResultantMode::zero_certify, Normalization::paper_g, options);
      const bool zero = outcome.status == ResultantStatus::zero_certificate;
      result["certificate"] = to_string(outcome.status);
      result["zero"] = zero;
      if (!zero) status = VerificationStatus::refuted;
    } else {
      outcome = resultant(t, k, ResultantMode::exact, Normalization::paper_g, options);
      result["out_of_scope"] = true;
      result["value"] = integer_json(*outcome.value);
      result["full_dp_value"] = integer_json(*outcome.value * normalization_factor(k, vertex_count));
    }
    report.demote(status);
    nlohmann::json outcome_json = to_json(outcome);
    outcome_json["normalization"] = to_string(Normalization::paper_g);
    report.instances.push_back({canonical_code(t).code, result, {{"tree", tree_json(t)}, {"outcome", outcome_json}}});
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport invariance_experiment(int k, int vertex_count, InvarianceMode mode, int prime_count,
                                         std::uint64_t seed, const ResultantProvider& provider) {
  const ResultantProvider resultant = provider ? provider : ResultantProvider(gradient_resultant);
  if (mode == InvarianceMode::exact) {
    require_exact_feasible(k, vertex_count);
  } else if (prime_count < 5) {
    throw std::invalid_argument("invariance_experiment: modular mode needs at least 5 primes");
  }
  const auto start = Clock::now();
  VerificationReport report =
      start_report("conjecture-invariance",
                   {{"k", k}, {"n", vertex_count}, {"mode", mode == InvarianceMode::exact ? "exact" : "modular"},
                    {"primes", mode == InvarianceMode::exact ? 0 : prime_count}},
                   seed);
  struct Seen {
    std::string code;
    nlohmann::json value;
  };
  std::optional<Seen> first;
  for (const Tree& t : unlabeled(vertex_count)) {
    const std::string code = canonical_code(t).code;
    nlohmann::json value, evidence{{"tree", tree_json(t)}};
    if (mode == InvarianceMode::exact) {
      const ResultantOutcome res = resultant(t, k, ResultantMode::exact, Normalization::paper_g, ResultantOptions{seed});
      value = integer_json(*res.value);
      evidence["outcome"] = to_json(res);
      evidence["outcome"]["normalization"] = to_string(Normalization::paper_g);
    } else {
      value = nlohmann::json::array();
      for (const auto& [p, r] : gradient_residues(t, k, prime_count, seed))
        value.push_back({{"prime", std::to_string(p)}, {"residue", std::to_string(r)}});
      evidence["label"] = "evidence";
    }
    nlohmann::json result{{"value", value}};
    if (first && first->value != value) {
      report.demote(VerificationStatus::refuted);
      evidence["counterexample"] = {{"tree_a", first->code}, {"value_a", first->value}, {"tree_b", code},
                                    {"value_b", value}};
    }
    if (!first) first = Seen{code, value};
    result["equal_to_first"] = first->value == value;
    report.instances.push_back({code, result, evidence});
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

const std::vector<TableRow>& hyperdeterminant_table() {
  static const std::vector<TableRow> table = [] {
    auto row = [](int a, int b, int sign, std::initializer_list<std::pair<long, int>> powers) {
      TableRow r{a, b, {}};
      r.value.sign = sign;
      for (const auto& [p, e] : powers) r.value.primes[Integer(p)] = e;
      return r;
    };
    return std::vector<TableRow>{
        row(4, 2, -1, {{2, 2}, {7, 1}}),
        row(4, 3, 1, {{2, 12}, {7, 1}, {23, 4}}),
        row(4, 4, -1, {{2, 38}, {3, 27}, {5, 6}, {7, 1}, {13, 12}}),
        row(4, 5, 1, {{2, 203}, {5, 32}, {7, 1}, {11, 32}, {23, 24}, {37, 8}}),
        row(6, 2, -1, {{11, 2}, {31, 1}}),
        row(6, 3, 1, {{2, 14}, {3, 16}, {11, 4}, {31, 1}, {19231, 4}}),
        row(6, 4, -1,
            {{2, 82}, {3, 17}, {11, 8}, {31, 1}, {41, 12}, {71, 6}, {89, 6}, {151, 24}, {257, 24}, {1511, 12}}),
        row(8, 2, -1, {{2, 6}, {29, 2}, {127, 1}}),
        row(8, 3, 1, {{2, 56}, {13, 16}, {29, 4}, {113, 8}, {127, 1}, {1009, 8}, {2143, 4}}),
    };
  }();
  return table;
}

const TableRow* find_table_row(int k, int vertex_count, TableIndex index) {
  const int first = index == TableIndex::kn ? k : vertex_count;
  const int second = index == TableIndex::kn ? vertex_count : k;
  for (const auto& row : hyperdeterminant_table())
    if (row.first == first && row.second == second) return &row;
  return nullptr;
}

VerificationReport table_comparison(int k, int vertex_count, TableIndex index, std::uint64_t seed,
                                    const ResultantProvider& provider) {
  const ResultantProvider resultant = provider ? provider : ResultantProvider(gradient_resultant);
  const TableRow* row = find_table_row(k, vertex_count, index);
  if (row == nullptr)
    throw std::invalid_argument("table_comparison: no table row for (k=" + std::to_string(k) +
                                ", n=" + std::to_string(vertex_count) + ") under index " +
                                (index == TableIndex::kn ? "kn" : "nk"));
  require_exact_feasible(k, vertex_count);
  const auto start = Clock::now();
  VerificationReport report =
      start_report("table-comparison",
                   {{"k", k}, {"n", vertex_count}, {"table_index", index == TableIndex::kn ? "kn" : "nk"},
                    {"row", {row->first, row->second}}},
                   seed);
  const Integer table_value = row->value.product();
  const Integer obstruction = two_pow_minus_one(k);
  // The table lists one value per (k, n); the first tree in canonical order represents it.
  const Tree t = unlabeled(vertex_count).front();
  const ResultantOutcome res = resultant(t, k, ResultantMode::exact, Normalization::paper_g, ResultantOptions{seed});
  const Integer& value = *res.value;

  nlohmann::json result{{"table_value", integer_json(table_value)},
                        {"table_factored", row->value.to_string()},
                        {"computed", integer_json(value)},
                        {"computed_sign", sgn(value)},
                        {"table_sign", row->value.sign},
                        {"obstruction_prime", integer_json(obstruction)}};
  nlohmann::json evidence{{"tree", tree_json(t)}, {"outcome", to_json(res)}, {"table", to_json(row->value)}};
  evidence["outcome"]["normalization"] = to_string(Normalization::paper_g);
  const bool divides_table = table_value % obstruction == 0;
  result["obstruction_divides_table"] = divides_table;
  if (value == 0) {
    result["ratio"] = nullptr;
    result["obstruction_divides_computed"] = false;
    report.demote(VerificationStatus::refuted);
  } else {
    Rational ratio(table_value, value);
    ratio.canonicalize();
    result["ratio"] = ratio.get_str();
    const bool divides = value % obstruction == 0;
    result["obstruction_divides_computed"] = divides;
    result["computed_factored"] = factor_integer(value).to_string();
    evidence["computed_factorization"] = to_json(factor_integer(value));
    Rational full_ratio(table_value, value * normalization_factor(k, vertex_count));
    full_ratio.canonicalize();
    result["ratio_full_dp"] = full_ratio.get_str();
    if (!divides) report.demote(VerificationStatus::refuted);
  }
  report.instances.push_back({canonical_code(t).code, result, evidence});
  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

// A random rational with a small numerator and denominator.
Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

VerificationReport proof_identity_check(const Tree& t, int k, int trials, std::uint64_t seed) {
  const int n = t.vertex_count();
  if (n < 3) throw std::invalid_argument("proof_identity_check: the tree needs at least 3 vertices");
  const auto start = Clock::now();
  VerificationReport report = start_report("proof-identity", {{"k", k}, {"n", n}, {"trials", trials}}, seed);

  const Vertex leaf = t.leaves().front();
  const Vertex m = t.neighbors(leaf).front();
  const Tree reduced = t.remove_leaf(leaf);
  const Vertex m_reduced = m > leaf ? m - 1 : m;
  const Vertex fixed_t[] = {m};
  const Vertex fixed_r[] = {m_reduced};
  const HomogeneousForm g_t = contraction_form(t, k, fixed_t);
  const HomogeneousForm g_r = contraction_form(reduced, k, fixed_r);
  const Integer expected = two_pow_minus_one(k);

  std::mt19937_64 rng(seed);
  nlohmann::json points = nlohmann::json::array();
  std::optional<nlohmann::json> counterexample;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Rational> x(static_cast<std::size_t>(n));
    x[leaf] = 1;
    Rational rest = 1;
    Vertex last = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (v == leaf) continue;
      last = v;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (v == leaf || v == last) continue;
      x[v] = random_rational(rng);
      rest -= x[v];
    }
    x[last] = rest;
    std::vector<Rational> x_reduced;
    for (Vertex v = 0; v < n; ++v)
      if (v != leaf) x_reduced.push_back(x[v]);
    x_reduced[m_reduced] += 1;

    const Rational diff = evaluate(g_t, x) - evaluate(g_r, x_reduced);
    nlohmann::json point = nlohmann::json::array();
    for (const auto& c : x) point.push_back(c.get_str());
    points.push_back({{"x", point}, {"difference", diff.get_str()}});
    if (diff != expected && !counterexample)
      counterexample = nlohmann::json{{"x", point}, {"difference", diff.get_str()}};
  }
  nlohmann::json evidence{{"tree", tree_json(t)}, {"leaf", leaf}, {"neighbor", m}, {"points", points}};
  if (counterexample) {
    evidence["counterexample"] = *counterexample;
    report.demote(VerificationStatus::refuted);
  }
  report.instances.push_back({canonical_code(t).code,
                              {{"expected", integer_json(expected)}, {"trials", trials}, {"ok", !counterexample}},
                              evidence});
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport row_difference_check(const Tree& t, int k, std::uint64_t seed) {
  if (k < 3) throw std::invalid_argument("row_difference_check: need k >= 3");
  const auto start = Clock::now();
  const bool beyond = k % 2 == 1;
  VerificationReport report =
      start_report("prop-arows", {{"k", k}, {"n", t.vertex_count()}, {"beyond_stated_scope", beyond}}, seed);
  long compared = 0;
  std::optional<nlohmann::json> counterexample;
  for (const Edge& e : t.edges()) {
    const RowDifferenceDescriptor d = row_difference_form(t, k, e);
    for (Vertex w = 0; w < t.vertex_count() && !counterexample; ++w) {
      const Vertex a_fixed[] = {e.first, w};
      const Vertex b_fixed[] = {e.second, w};
      const HomogeneousForm direct = contraction_form(t, k, a_fixed) - contraction_form(t, k, b_fixed);
      const HomogeneousForm& closed = d.value_at(w);
      ++compared;
      const bool pit = forms_equal_pit(direct, closed, 4, seed + static_cast<std::uint64_t>(compared));
      if (!pit || direct != closed) {
        counterexample = nlohmann::json{{"edge", {e.first, e.second}}, {"w", w}, {"direct", to_json(direct)},
                                        {"closed_form", to_json(closed)}};
      }
    }
  }
  nlohmann::json evidence{{"tree", tree_json(t)}};
  if (counterexample) {
    evidence["counterexample"] = *counterexample;
    report.demote(VerificationStatus::refuted);
  }
  report.instances.push_back({canonical_code(t).code,
                              {{"claim", "prop-arows"}, {"comparisons", compared}, {"ok", !counterexample}},
                              evidence});
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport forced_candidate_check(const Tree& t, int k) {
  const int n = t.vertex_count();
  if (n < 2) throw std::invalid_argument("forced_candidate_check: the tree needs at least 2 vertices");
  const auto start = Clock::now();
  VerificationReport report = start_report("prop-forced-candidate", {{"k", k}, {"n", n}});
  const std::vector<Integer> candidate = forced_candidate(t);
  std::vector<Rational> point(candidate.begin(), candidate.end());

  nlohmann::json gradient = nlohmann::json::array();
  bool all_zero = true;
  for (const auto& g : gradient_system(t, k).forms) {
    const Rational v = evaluate(g, point);
    all_zero = all_zero && v == 0;
    gradient.push_back(v.get_str());
  }

  // Every cut side away from the fixed leaf sums to the leaf entry.
  const Vertex leaf = t.leaves().front();
  bool sums_ok = true;
  nlohmann::json sums = nlohmann::json::array();
  for (const Edge& e : t.edges()) {
    const EdgeCut cut = edge_cut(t, e);
    const bool leaf_on_a = std::find(cut.side_a.begin(), cut.side_a.end(), leaf) != cut.side_a.end();
    const auto& far = leaf_on_a ? cut.side_b : cut.side_a;
    Integer sum = 0;
    for (Vertex v : far) sum += candidate[v];
    sums_ok = sums_ok && sum == candidate[leaf];
    sums.push_back({{"edge", {e.first, e.second}}, {"sum", integer_json(sum)}});
  }

  nlohmann::json cand = nlohmann::json::array();
  for (const auto& c : candidate) cand.push_back(integer_json(c));
  nlohmann::json result{{"candidate", cand}, {"gradient", gradient}, {"gradient_nonzero", !all_zero},
                        {"leaf_sums_ok", sums_ok}};
  nlohmann::json evidence{{"tree", tree_json(t)}, {"leaf", leaf}, {"cut_sums", sums}};
  if (!sums_ok) {
    evidence["counterexample"] = {{"point", cand}, {"cut_sums", sums}};
    report.demote(VerificationStatus::refuted);
  }
  if (k % 2 == 0 && all_zero) {
    evidence["counterexample"] = {{"point", cand}, {"gradient", gradient}};
    report.demote(VerificationStatus::refuted);
  }
  if (k % 2 == 1) result["gradient_claim"] = "none for odd k";
  report.instances.push_back({canonical_code(t).code, result, evidence});
  report.wall_ms = elapsed_ms(start);
  return report;
}

VerificationReport merge_reports(const std::string& claim, nlohmann::json params,
                                 const std::vector<VerificationReport>& parts) {
  VerificationReport merged;
  merged.claim = claim;
  merged.params = std::move(params);
  merged.started = parts.empty() ? utc_timestamp() : parts.front().started;
  for (const auto& p : parts) {
    merged.demote(p.status);
    merged.wall_ms += p.wall_ms;
    merged.seed = p.seed;
    for (auto inst : p.instances) {
      inst.result["claim"] = p.claim;
      merged.instances.push_back(std::move(inst));
    }
  }
  sort_instances(merged);
  return merged;
}

VerificationReport propositions_suite(int k, int vertex_count, std::uint64_t seed) {
  if (vertex_count < 2 || vertex_count > kMaxEnumerationVertices)
    throw SizeLimitError("propositions_suite: n must lie in [2, " + std::to_string(kMaxEnumerationVertices) + "]");
  std::vector<VerificationReport> parts;
  for (const Tree& t : unlabeled(vertex_count)) {
    if (k >= 3) parts.push_back(row_difference_check(t, k, seed));
    parts.push_back(forced_candidate_check(t, k));
  }
  return merge_reports("propositions", {{"k", k}, {"n", vertex_count}}, parts);
}

VerificationReport proof_identity_suite(int k, int vertex_count, int trials, std::uint64_t seed) {
  if (vertex_count < 3 || vertex_count > kMaxEnumerationVertices)
    throw SizeLimitError("proof_identity_suite: n must lie in [3, " + std::to_string(kMaxEnumerationVertices) + "]");
  std::vector<VerificationReport> parts;
  for (const Tree& t : unlabeled(vertex_count)) parts.push_back(proof_identity_check(t, k, trials, seed));
  return merge_reports("proof-identity", {{"k", k}, {"n", vertex_count}, {"trials", trials}}, parts);
}

VerificationReport nullvector_search(const Tree& t, int k, const NewtonOptions& options) {
  if (t.vertex_count() > 8) throw SizeLimitError("nullvector_search: at most 8 vertices");
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "nullvector-search",
      {{"k", k}, {"n", t.vertex_count()}, {"restarts", options.restarts}, {"max_iterations", options.max_iterations},
       {"damping", options.damping}, {"tolerance", options.tolerance}},
      options.seed);
  const auto forms = gradient_system(t, k).forms;
  const NewtonResult found = newton_nullvector(forms, options);
  nlohmann::json result{{"found", found.found}, {"residual", found.residual},
                        {"restarts_used", found.restarts_used}, {"iterations", found.iterations}};
  if (found.found) {
    nlohmann::json point = nlohmann::json::array();
    for (const auto& z : found.point) point.push_back({z.real(), z.imag()});
    result["point"] = point;
  } else {
    result["conclusion"] = "no conclusion";
    report.demote(VerificationStatus::inconclusive);
  }
  report.instances.push_back({canonical_code(t).code, result, {{"tree", tree_json(t)}}});
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace steiner
