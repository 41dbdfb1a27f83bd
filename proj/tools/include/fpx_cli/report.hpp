#pragma once

// Suite results and their JSON / CSV serialization. Floating values are
// rounded to 12 significant digits before emission; key and array order is
// fixed, so equal inputs give byte-identical files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpx/cpmaps.hpp"

namespace fpx::cli {

class ReportIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Comparison { AtMost, Exceeds, Equals };
const char* comparisonName(Comparison c);

struct Metric {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  Comparison cmp = Comparison::AtMost;

  bool pass() const;

  static Metric atMost(std::string name, double value, double tol) {
    return {std::move(name), value, tol, Comparison::AtMost};
  }
  /// Passes when value > threshold; used for checks that must fail.
  static Metric exceeds(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, Comparison::Exceeds};
  }
  static Metric equals(std::string name, double value, double expected) {
    return {std::move(name), value, expected, Comparison::Equals};
  }
};

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Metric> metrics;
  std::vector<std::string> skips;
  std::optional<double> timingMs;

  bool metricsPass() const;
  /// Under strict mode a reported skip fails the suite.
  bool passed(bool strict) const { return metricsPass() && (!strict || skips.empty()); }
};

/// 12 significant digits; non-finite values pass through unchanged.
double round12(double v);
std::string format12(double v);

struct Report {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<SuiteResult> suites;
  bool strict = false;
  std::optional<std::vector<StudyRow>> rows;
  std::optional<nlohmann::ordered_json> extra;  // command-specific payload

  bool passed() const;
};

nlohmann::ordered_json suiteToJson(const SuiteResult& s, bool strict);
std::string renderJson(const Report& r);
/// Header `n,m,defect,bound,mode`, one line per row in the given order.
std::string renderCsv(const std::vector<StudyRow>& rows);

/// Writes text to path, or to stdout when path is "-". Throws ReportIoError.
void writeText(const std::filesystem::path& path, const std::string& text);

}  // namespace fpx::cli
