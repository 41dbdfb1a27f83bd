#include "fpx_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fpx/version.hpp"

namespace fpx::cli {

using nlohmann::ordered_json;

const char* comparisonName(Comparison c) {
  switch (c) {
    case Comparison::AtMost: return "<=";
    case Comparison::Exceeds: return ">";
    case Comparison::Equals: return "==";
  }
  return "?";
}

bool Metric::pass() const {
  if (std::isnan(value)) return false;
  switch (cmp) {
    case Comparison::AtMost: return value <= tolerance;
    case Comparison::Exceeds: return value > tolerance;
    case Comparison::Equals: return value == tolerance;
  }
  return false;
}

bool SuiteResult::metricsPass() const {
  for (const auto& m : metrics)
    if (!m.pass()) return false;
  return true;
}

bool Report::passed() const {
  for (const auto& s : suites)
    if (!s.passed(strict)) return false;
  return true;
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format12(v).c_str(), nullptr);
}

namespace {

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

}  // namespace

ordered_json suiteToJson(const SuiteResult& s, bool strict) {
  ordered_json j;
  j["suiteName"] = s.name;
  j["status"] = s.passed(strict) ? "pass" : "fail";
  j["seed"] = s.seed;
  ordered_json metrics = ordered_json::array();
  for (const auto& m : s.metrics) {
    ordered_json mj;
    mj["name"] = m.name;
    mj["value"] = number(m.value);
    mj["comparison"] = comparisonName(m.cmp);
    mj["tolerance"] = number(m.tolerance);
    mj["pass"] = m.pass();
    metrics.push_back(std::move(mj));
  }
  j["metrics"] = std::move(metrics);
  j["skips"] = s.skips;
  if (s.timingMs) j["timing_ms"] = number(*s.timingMs);
  return j;
}

std::string renderJson(const Report& r) {
  ordered_json j;
  j["tool"] = "fpx";
  j["version"] = kVersion;
  j["command"] = r.command;
  j["config"] = r.config;
  j["status"] = r.passed() ? "pass" : "fail";
  ordered_json suites = ordered_json::array();
  for (const auto& s : r.suites) suites.push_back(suiteToJson(s, r.strict));
  j["suites"] = std::move(suites);
  if (r.rows) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : *r.rows) {
      ordered_json rj;
      rj["n"] = row.n;
      rj["m"] = row.m;
      rj["defect"] = number(row.defect);
      rj["bound"] = number(row.bound);
      rj["mode"] = studyModeName(row.mode);
      rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
  }
  if (r.extra)
    for (const auto& [k, v] : r.extra->items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string renderCsv(const std::vector<StudyRow>& rows) {
  std::string out = "n,m,defect,bound,mode\n";
  for (const auto& row : rows)
    out += std::to_string(row.n) + "," + std::to_string(row.m) + "," + format12(row.defect) + "," +
           format12(row.bound) + "," + studyModeName(row.mode) + "\n";
  return out;
}

void writeText(const std::filesystem::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw ReportIoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportIoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw ReportIoError("failed writing " + path.string());
}

}  // namespace fpx::cli
