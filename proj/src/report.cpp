#include "steiner/report.hpp"

#include <cstdlib>
#include <fstream>

namespace steiner {

std::filesystem::path default_cache_dir(const std::optional<std::string>& override_dir) {
  if (override_dir && !override_dir->empty()) return *override_dir;
  if (const char* env = std::getenv("STEINER_CACHE"); env != nullptr && *env != '\0') return env;
  return ".steiner-cache";
}

std::filesystem::path ResultCache::entry_path(const CanonicalCode& code, int k, ResultantMode mode,
                                              Normalization normalization) const {
  // Canonical codes are parenthesis strings; map them to filename-safe digits.
  std::string name;
  for (char c : code.code) name += c == '(' ? '1' : '0';
  name += "_k" + std::to_string(k) + "_" + to_string(mode) + "_" + to_string(normalization) + ".json";
  return dir_ / name;
}

std::optional<ResultantOutcome> ResultCache::load(const CanonicalCode& code, int k, ResultantMode mode,
                                                  Normalization normalization) {
  std::ifstream in(entry_path(code, k, mode, normalization));
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("code").get<std::string>() != code.code) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return outcome_from_json(j.at("outcome"));
  } catch (const std::exception&) {
    ++misses_;  // unreadable entries are recomputed and overwritten
    return std::nullopt;
  }
}

void ResultCache::store(const CanonicalCode& code, int k, ResultantMode mode, Normalization normalization,
                        const ResultantOutcome& outcome) {
  if (outcome.heuristic) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  const auto path = entry_path(code, k, mode, normalization);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << nlohmann::json{{"code", code.code}, {"k", k}, {"outcome", outcome_json(outcome, normalization)}}.dump()
        << '\n';
  }
  std::filesystem::rename(tmp, path, ec);
}

ResultantOutcome cached_gradient_resultant(ResultCache* cache, const Tree& t, int k, ResultantMode mode,
                                           Normalization normalization, const ResultantOptions& options) {
  const CanonicalCode code = canonical_code(t);
  if (cache != nullptr) {
    if (auto hit = cache->load(code, k, mode, normalization)) return *hit;
  }
  ResultantOutcome out = gradient_resultant(t, k, mode, normalization, options);
  if (cache != nullptr) cache->store(code, k, mode, normalization, out);
  return out;
}

nlohmann::json outcome_json(const ResultantOutcome& outcome, Normalization normalization) {
  nlohmann::json j = to_json(outcome);
  j["normalization"] = to_string(normalization);
  return j;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      line += f;
      continue;
    }
    line += '"';
    for (char c : f) {
      if (c == '"') line += '"';
      line += c;
    }
    line += '"';
  }
  return line;
}

}  // namespace steiner
