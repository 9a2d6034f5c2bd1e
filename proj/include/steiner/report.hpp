#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "steiner/analysis.hpp"
#include "steiner/resultant.hpp"

namespace steiner {

/// Directory from the override, else $STEINER_CACHE, else ./.steiner-cache.
std::filesystem::path default_cache_dir(const std::optional<std::string>& override_dir = std::nullopt);

/*
 * On-disk store of resultant outcomes, one JSON file per
 * (canonical code, k, mode, normalization).
 *
 * Isomorphic trees share an entry: relabeling permutes variables and forms
 * together, which leaves the resultant unchanged.
 */
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const CanonicalCode& code, int k, ResultantMode mode,
                                   Normalization normalization) const;

  std::optional<ResultantOutcome> load(const CanonicalCode& code, int k, ResultantMode mode,
                                       Normalization normalization);
  /// Heuristic outcomes are never stored.
  void store(const CanonicalCode& code, int k, ResultantMode mode, Normalization normalization,
             const ResultantOutcome& outcome);

  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  int hits_ = 0;
  int misses_ = 0;
};

/// gradient_resultant through the cache when one is given.
ResultantOutcome cached_gradient_resultant(ResultCache* cache, const Tree& t, int k, ResultantMode mode,
                                           Normalization normalization, const ResultantOptions& options);

/// Outcome JSON with the normalization tag.
nlohmann::json outcome_json(const ResultantOutcome& outcome, Normalization normalization);

/// Comma-separated line, quoting fields that need it.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace steiner
