#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpx_cli/group_spec.hpp"
#include "fpx_cli/report.hpp"

namespace fpx::cli {

struct SuiteOptions {
  std::optional<std::size_t> n;  // overrides each suite's default cutoff sweep
  std::uint64_t seed = 42;
  double tolEntry = 1e-10;
  double tolNorm = 1e-9;
  double rankThresh = 1e-8;
  unsigned jobs = 1;
  std::string injectFault;  // "coeff" perturbs predicted coefficients
  bool timing = false;
};

/// Window dimension above which matrix cells are skipped.
inline constexpr std::size_t kSuiteWindowLimit = 100000;

const std::vector<std::string>& suiteNames();
bool isSuiteName(const std::string& name);

/// Runs one named suite, or all of them in fixed order for "all".
std::vector<SuiteResult> runSuites(const std::string& name, const GroupSpec& spec,
                                   const SuiteOptions& opts);

struct CellOutput {
  std::vector<Metric> metrics;
  std::vector<std::string> skips;
};

/// Evaluates cells on up to `jobs` threads; results keep the input order.
std::vector<CellOutput> runCells(const std::vector<std::function<CellOutput()>>& cells,
                                 unsigned jobs);

/// Deterministic per-cell seed derived from the run seed and a cell index.
std::uint64_t cellSeed(std::uint64_t seed, std::uint64_t cell);

/// Words with minLen <= length <= maxLen: all of them when there are at most
/// `limit`, else `sampleSize` distinct seeded draws kept in graded order.
std::vector<Word> testWords(const FreeProduct& group, std::size_t minLen, std::size_t maxLen,
                            std::size_t limit, std::size_t sampleSize, std::uint64_t seed);

}  // namespace fpx::cli
