// fpx: verification suites, convergence studies and decompositions over a
// free product read from a JSON group spec.
//
// Exit status: 0 all checks pass, 1 a verification failed, 2 usage, spec or
// I/O error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpx/cpmaps.hpp"
#include "fpx/decomp.hpp"
#include "fpx/errors.hpp"
#include "fpx/version.hpp"
#include "fpx_cli/group_spec.hpp"
#include "fpx_cli/report.hpp"
#include "fpx_cli/suites.hpp"

namespace {

using fpx::cli::Metric;
using fpx::cli::Report;
using fpx::cli::SuiteResult;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string group;
  std::string out = "-";
  std::string format;  // json or csv; default from the --out extension
  double tolEntry = 1e-10;
  double tolNorm = 1e-9;
  double rankThresh = 1e-8;
  bool timing = false;
};

void addCommon(CLI::App* app, Common& c) {
  app->set_help_flag("--help", "print help");
  app->add_option("--group", c.group, "group spec JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "report path, '-' for stdout");
  app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--tol-entry", c.tolEntry, "entrywise tolerance");
  app->add_option("--tol-norm", c.tolNorm, "norm tolerance");
  app->add_option("--rank-thresh", c.rankThresh, "relative singular value threshold");
  app->add_flag("--timing", c.timing, "include wall-clock timings in the report");
}

std::string formatFor(const Common& c) {
  if (!c.format.empty()) return c.format;
  const auto pos = c.out.rfind('.');
  return pos != std::string::npos && c.out.substr(pos) == ".csv" ? "csv" : "json";
}

ordered_json toleranceConfig(const Common& c) {
  ordered_json j;
  j["tolEntry"] = fpx::cli::round12(c.tolEntry);
  j["tolNorm"] = fpx::cli::round12(c.tolNorm);
  j["rankThresh"] = fpx::cli::round12(c.rankThresh);
  return j;
}

int emit(const Report& report, const Common& c) {
  if (formatFor(c) == "csv") {
    if (!report.rows) throw fpx::cli::SpecError("csv output is only defined for convergence rows");
    fpx::cli::writeText(c.out, fpx::cli::renderCsv(*report.rows));
  } else {
    fpx::cli::writeText(c.out, fpx::cli::renderJson(report));
  }
  for (const auto& s : report.suites)
    std::cerr << s.name << ": " << (s.passed(report.strict) ? "pass" : "fail") << " (" << s.metrics.size()
              << " metrics, " << s.skips.size() << " skips)\n";
  return report.passed() ? kExitPass : kExitFail;
}

int runVerify(const Common& c, const std::string& suite, std::optional<std::size_t> n, std::uint64_t seed,
              bool strict, unsigned jobs, const std::string& fault) {
  const auto spec = fpx::cli::loadGroupSpec(c.group);
  if (!fpx::cli::isSuiteName(suite)) throw fpx::cli::SpecError("unknown suite \"" + suite + "\"");
  fpx::cli::SuiteOptions opts;
  opts.n = n;
  opts.seed = seed;
  opts.tolEntry = c.tolEntry;
  opts.tolNorm = c.tolNorm;
  opts.rankThresh = c.rankThresh;
  opts.jobs = jobs;
  opts.injectFault = fault;
  opts.timing = c.timing;

  Report report;
  report.command = "verify";
  report.strict = strict;
  report.config["group"] = spec.name;
  report.config["suite"] = suite;
  report.config["seed"] = seed;
  report.config["n"] = n ? ordered_json(*n) : ordered_json(nullptr);
  report.config["strict"] = strict;
  report.config["tolerances"] = toleranceConfig(c);
  if (!fault.empty()) report.config["injectFault"] = fault;
  report.suites = fpx::cli::runSuites(suite, spec, opts);
  return emit(report, c);
}

int runConvergence(const Common& c, const std::string& hLiteral, std::size_t nMin, std::size_t nMax,
                   const std::string& modeName) {
  const auto spec = fpx::cli::loadGroupSpec(c.group);
  const fpx::Word h = fpx::cli::parseWordLiteral(spec, hLiteral);
  if (nMin < 2 || nMax < nMin) throw fpx::cli::SpecError("need 2 <= n-min <= n-max");
  const auto mode = modeName == "matrix" ? fpx::StudyMode::Matrix : fpx::StudyMode::Analytic;

  Report report;
  report.command = "convergence";
  report.config["group"] = spec.name;
  report.config["h"] = spec.group.formatWord(h);
  report.config["nMin"] = nMin;
  report.config["nMax"] = nMax;
  report.config["mode"] = modeName;
  report.config["tolerances"] = toleranceConfig(c);

  const auto t0 = std::chrono::steady_clock::now();
  auto rows = fpx::convergenceStudy(spec.group, h, nMin, nMax, mode);
  SuiteResult res;
  res.name = "convergence";
  for (const auto& r : rows)
    res.metrics.push_back(Metric::atMost("defect-bound n=" + std::to_string(r.n), r.defect - r.bound, 1e-12));
  if (c.timing)
    res.timingMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report.suites.push_back(std::move(res));
  report.rows = std::move(rows);
  return emit(report, c);
}

int runDecompose(const Common& c, const std::string& hLiteral, std::size_t n, const std::string& boundName) {
  const auto spec = fpx::cli::loadGroupSpec(c.group);
  const fpx::Word h = fpx::cli::parseWordLiteral(spec, hLiteral);
  if (h.empty()) throw fpx::cli::SpecError("decompose needs h != e");
  if (n < 1) throw fpx::cli::SpecError("--n must be at least 1");
  const auto bound = boundName == "displayed" ? fpx::LeftLengthBound::AsDisplayed : fpx::LeftLengthBound::Full;

  Report report;
  report.command = "decompose";
  report.config["group"] = spec.name;
  report.config["h"] = spec.group.formatWord(h);
  report.config["n"] = n;
  report.config["leftBound"] = boundName;
  report.config["regime"] = spec.hasInfiniteFactor() ? "integer-window" : "finite";
  report.config["tolerances"] = toleranceConfig(c);

  const auto t0 = std::chrono::steady_clock::now();
  const fpx::WindowBasis direct(spec.group, n);
  const auto chk = fpx::verifyDecomposition(h, n, direct, bound);
  SuiteResult res;
  res.name = "decomp";
  res.metrics.push_back(Metric::atMost("maxError", chk.maxError, c.tolEntry));
  if (c.timing)
    res.timingMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report.suites.push_back(std::move(res));

  ordered_json terms = ordered_json::array();
  for (const auto& t : chk.terms) {
    if (t.op.isZero()) continue;
    ordered_json tj;
    tj["line"] = fpx::lineName(t.line);
    tj["r"] = t.r;
    tj["p"] = t.p;
    tj["iota"] = t.iota;
    tj["nnz"] = t.op.nnz();
    tj["jMembership"] = t.jMembership;
    terms.push_back(std::move(tj));
  }
  ordered_json extra;
  extra["maxError"] = fpx::cli::round12(chk.maxError);
  extra["termCount"] = chk.termCount;
  extra["terms"] = std::move(terms);
  report.extra = std::move(extra);
  return emit(report, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fpx: finite-window checks for free products"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.set_version_flag("--version", std::string(fpx::kVersion));

  Common verifyOpts;
  std::string suite = "all";
  std::optional<std::size_t> n;
  std::uint64_t seed = 42;
  bool strict = false;
  unsigned jobs = 1;
  std::string fault;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  addCommon(verify, verifyOpts);
  verify->add_option("--suite", suite, "isometry|coeff|defect|decomp|rank|jpattern|all");
  verify->add_option("--n", n, "cutoff override");
  verify->add_option("--seed", seed, "random seed");
  verify->add_flag("--strict", strict, "reported skips fail the run");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  verify->add_option("--inject-fault", fault)->group("");

  Common convOpts;
  std::string hConv;
  std::size_t nMin = 2;
  std::size_t nMax = 24;
  std::string mode = "analytic";
  auto* conv = app.add_subcommand("convergence", "defect rows over a range of cutoffs");
  addCommon(conv, convOpts);
  conv->add_option("--h", hConv, "word literal")->required();
  conv->add_option("--n-min", nMin);
  conv->add_option("--n-max", nMax);
  conv->add_option("--mode", mode)->check(CLI::IsMember({"matrix", "analytic"}));

  Common decOpts;
  std::string hDec;
  std::size_t nDec = 2;
  std::string leftBound = "full";
  auto* dec = app.add_subcommand("decompose", "split Phi_n(lambda_h) into ideal pieces");
  addCommon(dec, decOpts);
  dec->add_option("--h", hDec, "word literal")->required();
  dec->add_option("--n", nDec, "cutoff");
  dec->add_option("--left-bound", leftBound, "side space length bound")->check(CLI::IsMember({"full", "displayed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return runVerify(verifyOpts, suite, n, seed, strict, jobs, fault);
    if (*conv) return runConvergence(convOpts, hConv, nMin, nMax, mode);
    if (*dec) return runDecompose(decOpts, hDec, nDec, leftBound);
  } catch (const fpx::cli::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fpx::cli::ReportIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fpx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
