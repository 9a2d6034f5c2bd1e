#include "steiner/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "steiner/analysis.hpp"
#include "steiner/report.hpp"

namespace steiner {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Settings {
  std::optional<int> k;
  std::optional<int> n;
  std::optional<std::string> tree;
  std::string mode = "exact";
  std::uint64_t seed = 1;
  int primes = 5;
  std::string normalization = "paper-g";
  std::string table_index = "kn";
  std::optional<std::string> cache_dir;
  bool csv = false;
  bool no_cache = false;
  int max_n = 9;
  bool labeled = false;
  int trials = 20;
  int restarts = 100;
  int max_iterations = 500;
  double damping = 0.5;
  int attempts = 8;
  bool early_termination = false;
  std::string what = "all";
  std::string value;
};

json settings_json(const Settings& s) {
  json j{{"mode", s.mode},
         {"seed", s.seed},
         {"primes", s.primes},
         {"normalization", s.normalization},
         {"table_index", s.table_index},
         {"max_n", s.max_n},
         {"labeled", s.labeled},
         {"trials", s.trials},
         {"restarts", s.restarts},
         {"max_iterations", s.max_iterations},
         {"damping", s.damping},
         {"attempts", s.attempts},
         {"early_termination", s.early_termination},
         {"what", s.what}};
  j["k"] = s.k ? json(*s.k) : json();
  j["n"] = s.n ? json(*s.n) : json();
  j["tree"] = s.tree ? json(*s.tree) : json();
  if (!s.value.empty()) j["value"] = s.value;
  return j;
}

int require_k(const Settings& s) {
  if (!s.k) throw UsageError("this command needs --k");
  if (*s.k < 1) throw UsageError("--k must be positive");
  return *s.k;
}

int require_n(const Settings& s) {
  if (!s.n) throw UsageError("this command needs --n");
  if (*s.n < 1) throw UsageError("--n must be positive");
  return *s.n;
}

Tree load_tree(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tree(buffer.str());
  }
  return parse_tree(spec);
}

std::vector<Tree> selected_trees(const Settings& s) {
  if (s.tree) return {load_tree(*s.tree)};
  if (s.n) return enumerate_trees(require_n(s), TreeEnumeration::unlabeled);
  throw UsageError("this command needs --tree or --n");
}

json tree_summary(const Tree& t) {
  return {{"code", canonical_code(t).code}, {"graph6", to_graph6(t)}, {"edges", t.edges()}};
}

// NDJSON (or CSV) writer. Every line carries the run manifest.
class Emitter {
 public:
  Emitter(std::ostream& out, bool csv, json manifest) : out_(out), csv_(csv), manifest_(std::move(manifest)) {
    if (csv_) out_ << csv_line({"kind", "claim", "tree", "status", "result"}) << '\n';
  }

  void line(const std::string& claim, const std::string& tree, const std::string& status, const json& result,
            const json& evidence) {
    if (csv_) {
      out_ << csv_line({"instance", claim, tree, status, result.dump()}) << '\n';
    } else {
      json j{{"claim", claim}, {"tree", tree}, {"status", status}, {"result", result}, {"manifest", manifest_}};
      if (!evidence.is_null()) j["evidence"] = evidence;
      out_ << j.dump() << '\n';
    }
    out_.flush();
  }

  void report(const VerificationReport& r) {
    for (const auto& i : r.instances) {
      const std::string claim = i.result.contains("claim") ? i.result["claim"].get<std::string>() : r.claim;
      line(claim, i.tree, instance_status(i), i.result, i.evidence);
    }
  }

  void summary(const std::string& status, json extra, const ResultCache* cache, double total_ms) {
    json manifest = manifest_;
    manifest["cache"] = {{"hits", cache ? cache->hits() : 0}, {"misses", cache ? cache->misses() : 0}};
    manifest["timings"] = {{"total_ms", total_ms}};
    if (csv_) {
      out_ << csv_line({"summary", manifest["command"].get<std::string>(), "", status, extra.dump()}) << '\n';
    } else {
      json j{{"summary", true}, {"status", status}, {"manifest", manifest}};
      for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
      out_ << j.dump() << '\n';
    }
    out_.flush();
  }

 private:
  static std::string instance_status(const InstanceResult& i) {
    if (i.evidence.contains("counterexample")) return "refuted";
    if (i.result.contains("ok") && !i.result["ok"].get<bool>()) return "refuted";
    if (i.result.contains("found") && !i.result["found"].get<bool>()) return "inconclusive";
    return "verified";
  }

  std::ostream& out_;
  bool csv_;
  json manifest_;
};

int exit_code(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::verified: return kExitVerified;
    case VerificationStatus::refuted: return kExitRefuted;
    case VerificationStatus::inconclusive: return kExitInconclusive;
  }
  return kExitRefuted;
}

struct Context {
  Settings& s;
  Emitter& emit;
  ResultCache* cache;

  ResultantProvider provider() const {
    ResultCache* c = cache;
    return [c](const Tree& t, int k, ResultantMode mode, Normalization norm, const ResultantOptions& options) {
      return cached_gradient_resultant(c, t, k, mode, norm, options);
    };
  }
  ResultantOptions options() const { return {s.seed, s.attempts, s.early_termination}; }
};

VerificationStatus emit_report(Context& ctx, const VerificationReport& r, json* extra) {
  ctx.emit.report(r);
  (*extra)["claim"] = r.claim;
  (*extra)["params"] = r.params;
  (*extra)["instances"] = r.instances.size();
  (*extra)["started"] = r.started;
  (*extra)["wall_ms"] = r.wall_ms;
  return r.status;
}

VerificationStatus cmd_trees(Context& ctx, json* extra) {
  const int n = require_n(ctx.s);
  long count = 0;
  auto visit = [&](const Tree& t) {
    ++count;
    ctx.emit.line("trees", canonical_code(t).code, "verified", tree_summary(t), json());
  };
  if (ctx.s.labeled) {
    for_each_labeled_tree(n, visit);
  } else {
    for (const Tree& t : enumerate_trees(n, TreeEnumeration::unlabeled)) visit(t);
  }
  (*extra)["count"] = count;
  return VerificationStatus::verified;
}

VerificationStatus cmd_steiner(Context& ctx, json* extra) {
  const int k = require_k(ctx.s);
  const std::string& what = ctx.s.what;
  if (what != "all" && what != "hypermatrix" && what != "polynomial" && what != "gradient")
    throw UsageError("--what must be one of all, hypermatrix, polynomial, gradient");
  long count = 0;
  for (const Tree& t : selected_trees(ctx.s)) {
    json result{{"k", k}, {"tree", tree_summary(t)}};
    if (what == "all" || what == "hypermatrix") result["hypermatrix"] = to_json(build_hypermatrix(t, k));
    if (what == "all" || what == "polynomial") result["polynomial"] = to_json(steiner_polynomial(t, k));
    if (what == "all" || what == "gradient") {
      json forms = json::array();
      for (const auto& g : gradient_system(t, k).forms) forms.push_back(to_json(g));
      result["gradient"] = forms;
    }
    ctx.emit.line("steiner", canonical_code(t).code, "verified", result, json());
    ++count;
  }
  (*extra)["count"] = count;
  return VerificationStatus::verified;
}

VerificationStatus cmd_resultant(Context& ctx, json* extra) {
  const int k = require_k(ctx.s);
  const Normalization norm = normalization_from_string(ctx.s.normalization);
  const std::string& mode = ctx.s.mode;
  VerificationStatus status = VerificationStatus::verified;
  long count = 0;
  for (const Tree& t : selected_trees(ctx.s)) {
    const int n = t.vertex_count();
    json result{{"k", k}, {"n", n}, {"normalization", to_string(norm)},
                {"normalization_factor", normalization_factor(k, n).get_str()}};
    std::string line_status = "verified";
    if (mode == "modular") {
      if (ctx.s.primes < 1) throw UsageError("--primes must be positive");
      json residues = json::array();
      for (const auto& [p, r] : gradient_residues(t, k, ctx.s.primes, ctx.s.seed, norm))
        residues.push_back({{"prime", std::to_string(p)}, {"residue", std::to_string(r)}});
      result["residues"] = residues;
      result["label"] = "evidence";
    } else {
      ResultantMode rmode;
      if (mode == "exact") {
        rmode = ResultantMode::exact;
      } else if (mode == "witness") {
        rmode = ResultantMode::witness;
      } else if (mode == "zero-certify") {
        rmode = ResultantMode::zero_certify;
      } else {
        throw UsageError("--mode must be one of exact, witness, modular, zero-certify");
      }
      if (rmode != ResultantMode::witness) require_exact_feasible(k, n);
      const ResultantOutcome outcome = cached_gradient_resultant(ctx.cache, t, k, rmode, norm, ctx.options());
      result["outcome"] = outcome_json(outcome, norm);
      if (outcome.status == ResultantStatus::inconclusive) {
        line_status = "inconclusive";
        status = VerificationStatus::inconclusive;
      }
    }
    ctx.emit.line("resultant", canonical_code(t).code, line_status, result, json{{"tree", tree_summary(t)}});
    ++count;
  }
  (*extra)["count"] = count;
  return status;
}

VerificationStatus cmd_conjecture(Context& ctx, json* extra) {
  const int k = require_k(ctx.s);
  const int n = require_n(ctx.s);
  InvarianceMode mode;
  if (ctx.s.mode == "exact") {
    mode = InvarianceMode::exact;
  } else if (ctx.s.mode == "modular") {
    mode = InvarianceMode::modular;
  } else {
    throw UsageError("conjecture: --mode must be exact or modular");
  }
  return emit_report(ctx, invariance_experiment(k, n, mode, ctx.s.primes, ctx.s.seed, ctx.provider()), extra);
}

VerificationStatus cmd_nullvector(Context& ctx, json* extra) {
  const int k = require_k(ctx.s);
  NewtonOptions options;
  options.restarts = ctx.s.restarts;
  options.max_iterations = ctx.s.max_iterations;
  options.damping = ctx.s.damping;
  options.seed = ctx.s.seed;
  std::vector<VerificationReport> parts;
  for (const Tree& t : selected_trees(ctx.s)) parts.push_back(nullvector_search(t, k, options));
  VerificationReport merged = merge_reports("nullvector-search", {{"k", k}}, parts);
  return emit_report(ctx, merged, extra);
}

VerificationStatus cmd_factor(Context& ctx, json* extra) {
  Integer value;
  if (ctx.s.value.empty() || value.set_str(ctx.s.value, 10) != 0) throw UsageError("factor: expected a decimal integer");
  const Factorization f = factor_integer(value);
  ctx.emit.line("factor", "", f.complete() ? "verified" : "inconclusive",
                json{{"value", value.get_str()}, {"factorization", to_json(f)}}, json());
  (*extra)["complete"] = f.complete();
  return f.complete() ? VerificationStatus::verified : VerificationStatus::inconclusive;
}

VerificationStatus cmd_compare_table(Context& ctx, json* extra) {
  TableIndex index;
  if (ctx.s.table_index == "kn") {
    index = TableIndex::kn;
  } else if (ctx.s.table_index == "nk") {
    index = TableIndex::nk;
  } else {
    throw UsageError("--table-index must be kn or nk");
  }
  std::vector<std::pair<int, int>> pairs;
  if (ctx.s.k || ctx.s.n) {
    pairs.emplace_back(require_k(ctx.s), require_n(ctx.s));
  } else {
    for (const auto& row : hyperdeterminant_table())
      pairs.push_back(index == TableIndex::kn ? std::pair{row.first, row.second} : std::pair{row.second, row.first});
  }
  std::vector<VerificationReport> parts;
  json skipped = json::array();
  for (const auto& [k, n] : pairs) {
    if (pairs.size() > 1 && !exact_feasible(k, n)) {
      skipped.push_back({{"k", k}, {"n", n}, {"reason", "outside the exact-resultant size limits"}});
      continue;
    }
    parts.push_back(table_comparison(k, n, index, ctx.s.seed, ctx.provider()));
  }
  VerificationReport merged =
      merge_reports("table-comparison", {{"table_index", ctx.s.table_index}, {"rows", pairs.size()}}, parts);
  // Keep one line per row even when two rows share a tree code.
  for (std::size_t i = 0; i < parts.size(); ++i) ctx.emit.report(parts[i]);
  (*extra)["claim"] = merged.claim;
  (*extra)["params"] = merged.params;
  (*extra)["instances"] = merged.instances.size();
  (*extra)["skipped"] = skipped;
  return merged.status;
}

VerificationStatus cmd_verify(Context& ctx, const std::string& subject, json* extra) {
  if (subject == "graham-pollak") return emit_report(ctx, graham_pollak_suite(ctx.s.max_n), extra);
  const int k = require_k(ctx.s);
  const int n = require_n(ctx.s);
  if (subject == "parity") return emit_report(ctx, parity_theorem_check(k, n, ctx.s.seed, ctx.provider()), extra);
  if (subject == "propositions") return emit_report(ctx, propositions_suite(k, n, ctx.s.seed), extra);
  if (subject == "proof-identity")
    return emit_report(ctx, proof_identity_suite(k, n, ctx.s.trials, ctx.s.seed), extra);
  throw UsageError("unknown verify subject " + subject);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Steiner distance hypermatrices of trees: resultants, suites and experiments", "steiner"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--k", s.k, "hypermatrix order");
  app.add_option("--n", s.n, "vertex count");
  app.add_option("--tree", s.tree, "tree file, text edge list, or graph6 string");
  app.add_option("--mode", s.mode, "exact | witness | modular | zero-certify")->capture_default_str();
  app.add_option("--seed", s.seed, "seed for primes and random points")->capture_default_str();
  app.add_option("--primes", s.primes, "prime count for modular mode")->capture_default_str();
  app.add_option("--normalization", s.normalization, "paper-g | full-Dp")->capture_default_str();
  app.add_option("--table-index", s.table_index, "kn | nk")->capture_default_str();
  app.add_option("--cache-dir", s.cache_dir, "cache directory (overrides STEINER_CACHE)");
  app.add_flag("--csv", s.csv, "CSV instead of NDJSON");
  app.add_flag("--no-cache", s.no_cache, "bypass the result cache");
  app.add_option("--max-n", s.max_n, "largest vertex count for graham-pollak")->capture_default_str();
  app.add_flag("--labeled", s.labeled, "list labeled trees");
  app.add_option("--trials", s.trials, "random points per tree")->capture_default_str();
  app.add_option("--restarts", s.restarts, "Newton restarts")->capture_default_str();
  app.add_option("--max-iterations", s.max_iterations, "Newton iterations per restart")->capture_default_str();
  app.add_option("--damping", s.damping, "Newton step shrink factor")->capture_default_str();
  app.add_option("--attempts", s.attempts, "primes tried in witness mode")->capture_default_str();
  app.add_flag("--early-termination", s.early_termination, "stop CRT after 3 stable values (heuristic)");
  app.add_option("--what", s.what, "steiner output: all | hypermatrix | polynomial | gradient")->capture_default_str();

  auto* trees = app.add_subcommand("trees", "enumerate trees on --n vertices");
  auto* steiner_cmd = app.add_subcommand("steiner", "hypermatrix, Steiner polynomial and gradient forms");
  auto* resultant = app.add_subcommand("resultant", "resultant of the gradient forms");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  const char* subjects[] = {"graham-pollak", "parity", "propositions", "proof-identity"};
  for (const char* subject : subjects) verify->add_subcommand(subject);
  auto* conjecture = app.add_subcommand("conjecture", "tree invariance of the resultant");
  auto* nullvector = app.add_subcommand("nullvector", "Newton search for a gradient zero");
  auto* factor = app.add_subcommand("factor", "factor an integer");
  factor->add_option("value", s.value, "decimal integer")->required();
  auto* compare = app.add_subcommand("compare-table", "compare with the factored value table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::string command;
  CLI::App* chosen = app.get_subcommands().front();
  command = chosen->get_name();
  std::string subject;
  if (chosen == verify) {
    subject = verify->get_subcommands().front()->get_name();
    command += " " + subject;
  }

  const json manifest{{"command", command}, {"params", settings_json(s)}, {"seed", s.seed},
                      {"tool_version", STEINER_VERSION}};
  const auto start = std::chrono::steady_clock::now();
  std::optional<ResultCache> cache;
  if (!s.no_cache) cache.emplace(default_cache_dir(s.cache_dir));
  Emitter emit(out, s.csv, manifest);
  Context ctx{s, emit, cache ? &*cache : nullptr};
  auto total_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  json extra = json::object();
  try {
    VerificationStatus status;
    if (chosen == trees) status = cmd_trees(ctx, &extra);
    else if (chosen == steiner_cmd) status = cmd_steiner(ctx, &extra);
    else if (chosen == resultant) status = cmd_resultant(ctx, &extra);
    else if (chosen == verify) status = cmd_verify(ctx, subject, &extra);
    else if (chosen == conjecture) status = cmd_conjecture(ctx, &extra);
    else if (chosen == nullvector) status = cmd_nullvector(ctx, &extra);
    else if (chosen == factor) status = cmd_factor(ctx, &extra);
    else status = cmd_compare_table(ctx, &extra);
    (void)compare;
    emit.summary(to_string(status), extra, ctx.cache, total_ms());
    return exit_code(status);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << '\n';
    emit.summary("size-limited", json{{"error", e.what()}}, ctx.cache, total_ms());
    return kExitInconclusive;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitRefuted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace steiner
