#include "fpx_cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <thread>

#include "fpx/cpmaps.hpp"
#include "fpx/decomp.hpp"
#include "fpx/errors.hpp"
#include "fpx/operators.hpp"

namespace fpx::cli {

namespace {

constexpr std::size_t kWordLimit = 64;
constexpr std::size_t kWordSample = 20;
constexpr std::size_t kUnitalityLimit = 20000;
constexpr std::size_t kDecompLimit = 20000;
constexpr std::size_t kStreamLimit = 2000000000;
constexpr double kExact = 1e-12;

std::string label(const GroupSpec& spec, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) {
    std::string tok = std::to_string(l.factor) + ":" + std::to_string(l.element);
    for (const auto& [name, letter] : spec.aliases)
      if (letter == l) tok = name;
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

std::string cellName(const std::string& what, const GroupSpec& spec, const Word& h, std::size_t n) {
  return what + " h=" + label(spec, h) + " n=" + std::to_string(n);
}

Word randomWord(const FreeProduct& group, std::size_t len, std::mt19937_64& rng) {
  std::vector<Letter> ls;
  while (ls.size() < len) {
    std::uniform_int_distribution<int> pf(0, static_cast<int>(group.factorCount()) - 1);
    const int f = pf(rng);
    if (!ls.empty() && ls.back().factor == f) continue;
    const auto& letters = group.factor(f).letters();
    std::uniform_int_distribution<std::size_t> pe(0, letters.size() - 1);
    ls.push_back({f, letters[pe(rng)]});
  }
  return Word(std::move(ls));
}

/// Largest coefficient difference between two lists of tensor terms.
double termDistance(const std::vector<TensorTerm>& a, const std::vector<TensorTerm>& b) {
  std::map<std::pair<Word, Word>, double> diff;
  for (const auto& t : a) diff[{t.left, t.right}] += t.weight;
  for (const auto& t : b) diff[{t.left, t.right}] -= t.weight;
  double out = 0.0;
  for (const auto& [k, v] : diff) out = std::max(out, std::abs(v));
  return out;
}

std::vector<std::size_t> sweep(const SuiteOptions& opts, std::vector<std::size_t> defaults) {
  if (opts.n) return {*opts.n};
  return defaults;
}

/// First letter of the last factor: b in the default group.
Word probeLetter(const FreeProduct& group) {
  const int f = static_cast<int>(group.factorCount()) - 1;
  return Word(std::vector<Letter>{{f, group.factor(f).letters().front()}});
}

// ---------------------------------------------------------------- isometry

std::vector<std::function<CellOutput()>> isometryCells(const GroupSpec& spec, const SuiteOptions& opts) {
  std::vector<std::function<CellOutput()>> cells;
  const std::size_t nMax = opts.n.value_or(8);
  for (std::size_t n = 2; n <= nMax; ++n)
    cells.push_back([&spec, &opts, n]() {
      CellOutput out;
      const auto& group = spec.group;
      const std::size_t cutoff = n + 3;
      const std::size_t size = windowSize(group, cutoff);
      const std::string tag = " n=" + std::to_string(n) + " N=" + std::to_string(cutoff);
      if (size > kStreamLimit) {
        out.skips.push_back("isometry" + tag + ": window of " + std::to_string(size) + " words");
      } else {
        const auto rep = isometryDefect(group, n, cutoff);
        out.metrics.push_back(Metric::atMost("max|V*V-I|" + tag, rep.maxDeviation, opts.tolEntry));
      }

      // Adjacent branches agree at the overlap lengths m and n.
      const std::size_t m = halfParameter(n);
      std::mt19937_64 rng(cellSeed(opts.seed, n));
      double branchGap = 0.0;
      for (const auto& [len, lo, hi] : {std::tuple{m, VnBranch::Short, VnBranch::Middle},
                                         std::tuple{n, VnBranch::Middle, VnBranch::Long}}) {
        std::vector<Word> words;
        if (windowSize(group, len) <= 4000) {
          words = group.wordsOfLength(len);
        } else {
          for (int i = 0; i < 200; ++i) words.push_back(randomWord(group, len, rng));
        }
        for (const auto& g : words)
          branchGap = std::max(branchGap, termDistance(vnBranchTerms(g, n, lo), vnBranchTerms(g, n, hi)));
      }
      out.metrics.push_back(Metric::atMost("branch overlap n=" + std::to_string(n), branchGap, kExact));

      if (size > kUnitalityLimit) {
        out.skips.push_back("unitality" + tag + ": window of " + std::to_string(size) + " words");
        return out;
      }
      const WindowBasis basis(group, cutoff);
      const StinespringDilation psi(n, basis);
      const std::size_t dn = basis.prefixDimension(n);
      const SparseOp psiOne = psi.apply(SparseOp::identity(dn));
      out.metrics.push_back(Metric::atMost("max|Psi(1)-1|" + tag,
                                           psiOne.maxAbsDiff(SparseOp::identity(basis.dimension())), kExact));
      const SparseOp phiOne = compressPhiN(SparseOp::identity(basis.dimension()), basis, n);
      out.metrics.push_back(Metric::equals("max|Phi(1)-1|" + tag, phiOne.maxAbsDiff(SparseOp::identity(dn)), 0.0));
      return out;
    });
  return cells;
}

// ------------------------------------------------------- coeff and defect

std::vector<std::function<CellOutput()>> coefficientCells(const GroupSpec& spec, const SuiteOptions& opts,
                                                          bool defect) {
  std::vector<std::function<CellOutput()>> cells;
  const auto hs = testWords(spec.group, 0, 3, kWordLimit, kWordSample, cellSeed(opts.seed, 0));
  for (std::size_t n : sweep(opts, {4, 6, 9}))
    for (const auto& h : hs)
      cells.push_back([&spec, &opts, h, n, defect]() {
        CellOutput out;
        if (n < 2) throw CutoffTooSmall("coefficient cells need n >= 2");
        const std::size_t cutoff = n + h.size() + 1;
        if (h.size() > 2 * halfParameter(n)) {
          out.skips.push_back(cellName("out of regime", spec, h, n));
          return out;
        }
        const std::size_t size = windowSize(spec.group, cutoff);
        if (size > kSuiteWindowLimit) {
          out.skips.push_back(cellName("window too large", spec, h, n) + " (" + std::to_string(size) + ")");
          return out;
        }
        const WindowBasis basis(spec.group, cutoff);
        if (defect) {
          const auto rep = defectNorm(h, n, basis);
          out.metrics.push_back(Metric::atMost(cellName("|matrix-analytic|", spec, h, n),
                                               std::abs(rep.matrixDefect - rep.analyticDefect), opts.tolEntry));
          out.metrics.push_back(Metric::atMost(cellName("defect-bound", spec, h, n),
                                               std::max(rep.matrixDefect, rep.analyticDefect) - rep.bound, kExact));
          return out;
        }
        const double shift = opts.injectFault == "coeff" ? 1e-3 : 0.0;
        const auto survey = surveyCoefficients(h, n, basis);
        double err = 0.0;
        double off = 0.0;
        std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> range;
        for (const auto& col : survey.columns) {
          const double c = coefficientC(n, col.lenG, col.lenHG).c + shift;
          err = std::max(err, std::abs(col.value - c));
          off = std::max(off, col.offSupport);
          auto [it, fresh] = range.try_emplace({col.lenG, col.lenHG}, col.value, col.value);
          if (!fresh) {
            it->second.first = std::min(it->second.first, col.value);
            it->second.second = std::max(it->second.second, col.value);
          }
        }
        double spread = 0.0;
        for (const auto& [k, r] : range) spread = std::max(spread, r.second - r.first);
        out.metrics.push_back(Metric::atMost(cellName("max|entry-c|", spec, h, n), err, opts.tolEntry));
        out.metrics.push_back(Metric::atMost(cellName("off-support", spec, h, n), off, opts.tolEntry));
        out.metrics.push_back(Metric::atMost(cellName("length spread", spec, h, n), spread, kExact));
        return out;
      });
  return cells;
}

std::vector<std::function<CellOutput()>> studyCells(const GroupSpec& spec) {
  std::vector<std::function<CellOutput()>> cells;
  const Word h = probeLetter(spec.group);
  for (auto [mode, nMax] : {std::pair{StudyMode::Analytic, std::size_t{40}}, std::pair{StudyMode::Matrix, std::size_t{12}}})
    cells.push_back([&spec, h, mode, nMax]() {
      CellOutput out;
      const std::string tag = std::string(studyModeName(mode)) + " study h=" + label(spec, h) + " n=2.." +
                              std::to_string(nMax);
      if (mode == StudyMode::Matrix && windowSize(spec.group, nMax + h.size() + 1) > kMatrixStudyLimit) {
        out.skips.push_back(tag + ": window too large");
        return out;
      }
      const auto rows = convergenceStudy(spec.group, h, 2, nMax, mode);
      double excess = -1.0;
      for (const auto& r : rows) excess = std::max(excess, r.defect - r.bound);
      out.metrics.push_back(Metric::atMost(tag + " max(defect-bound)", excess, kExact));
      out.metrics.push_back(Metric::atMost(tag + " final defect", rows.back().defect, rows.back().bound + kExact));
      return out;
    });
  return cells;
}

// ------------------------------------------------------------------ decomp

bool isMicroCaseGroup(const FreeProduct& g) {
  return g.factorCount() == 2 && g.factor(0).kind() == FactorKind::Cyclic && g.factor(0).order() == 2 &&
         g.factor(1).kind() == FactorKind::Cyclic && g.factor(1).order() == 3;
}

std::vector<std::function<CellOutput()>> decompCells(const GroupSpec& spec, const SuiteOptions& opts) {
  std::vector<std::function<CellOutput()>> cells;
  const auto hs = testWords(spec.group, 1, 3, kWordLimit, kWordSample, cellSeed(opts.seed, 2));
  const std::vector<std::size_t> defaults =
      spec.hasInfiniteFactor() ? std::vector<std::size_t>{2, 3, 4} : std::vector<std::size_t>{2, 3, 4, 5};
  for (std::size_t n : sweep(opts, defaults))
    for (const auto& h : hs)
      cells.push_back([&spec, &opts, h, n]() {
        CellOutput out;
        const std::size_t size = windowSize(spec.group, n);
        if (size > kDecompLimit) {
          out.skips.push_back(cellName("window too large", spec, h, n) + " (" + std::to_string(size) + ")");
          return out;
        }
        const WindowBasis direct(spec.group, n);
        const auto chk = verifyDecomposition(h, n, direct);
        out.metrics.push_back(Metric::atMost(cellName("decomposition maxError", spec, h, n), chk.maxError,
                                             opts.tolEntry));
        return out;
      });

  if (spec.group.factorCount() >= 2)
    cells.push_back([&spec, &opts]() {
      CellOutput out;
      const Word h = probeLetter(spec.group);
      const WindowBasis direct(spec.group, 2);
      const auto full = verifyDecomposition(h, 2, direct, LeftLengthBound::Full);
      const auto shown = verifyDecomposition(h, 2, direct, LeftLengthBound::AsDisplayed);
      out.metrics.push_back(Metric::exceeds(cellName("left bound n-p-1 maxError", spec, h, 2), shown.maxError,
                                            opts.tolEntry));
      if (isMicroCaseGroup(spec.group))
        out.metrics.push_back(Metric::equals(cellName("nonzero terms", spec, h, 2),
                                             static_cast<double>(full.termCount), 6.0));
      return out;
    });
  return cells;
}

// -------------------------------------------------------------------- rank

std::vector<std::function<CellOutput()>> rankCells(const GroupSpec& spec, const SuiteOptions& opts) {
  std::vector<std::function<CellOutput()>> cells;
  for (int iota = 0; iota < static_cast<int>(spec.group.factorCount()); ++iota)
    cells.push_back([&spec, &opts, iota]() {
      CellOutput out;
      const auto& f = spec.group.factor(iota);
      const std::string tag = "factor " + f.label();
      if (!f.isFinite()) {
        out.skips.push_back(tag + ": translations are truncated on an integer window");
        return out;
      }
      std::vector<SparseOp> translations;
      for (int x : factorBasis(spec.group, iota)) translations.push_back(factorTranslation(spec.group, iota, x));
      std::size_t pairRank = 0;
      for (const auto& a1 : translations)
        for (const auto& a2 : translations)
          pairRank = std::max(pairRank, rankOneDefect(a1, a2, opts.rankThresh).rank);
      out.metrics.push_back(Metric::atMost("rank " + tag + " translation pairs", static_cast<double>(pairRank), 1.0));

      std::mt19937_64 rng(cellSeed(opts.seed, 100 + static_cast<std::uint64_t>(iota)));
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      auto combo = [&]() {
        SparseOp a(translations.front().rows(), translations.front().cols());
        for (const auto& t : translations) a = a + t.scaled(coef(rng));
        return a;
      };
      std::size_t randomRank = 0;
      for (int i = 0; i < 50; ++i) {
        const SparseOp a1 = combo();
        const SparseOp a2 = combo();
        randomRank = std::max(randomRank, rankOneDefect(a1, a2, opts.rankThresh).rank);
      }
      out.metrics.push_back(Metric::atMost("rank " + tag + " random combinations", static_cast<double>(randomRank), 1.0));
      return out;
    });
  return cells;
}

// ---------------------------------------------------------------- jpattern

std::vector<std::function<CellOutput()>> jpatternCells(const GroupSpec& spec, const SuiteOptions& opts) {
  std::vector<std::function<CellOutput()>> cells;
  const std::size_t n = opts.n.value_or(4);
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t q = 1; q <= n; ++q)
      cells.push_back([&spec, &opts, n, p, q]() {
        CellOutput out;
        const std::string tag = " p=" + std::to_string(p) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
        if (windowSize(spec.group, n) > kDecompLimit) {
          out.skips.push_back("jpattern" + tag + ": window too large");
          return out;
        }
        std::mt19937_64 rng(cellSeed(opts.seed, 1000 + p * 64 + q));
        PatternReport worst;
        for (int i = 0; i < 20; ++i) {
          const SparseOp x = randomJpGenerator(spec.group, n, p, rng);
          const SparseOp y = randomJpGenerator(spec.group, n, q, rng);
          const auto rep = productPatternCheck(spec.group, n, x, p, y, q);
          worst.supportViolation = std::max(worst.supportViolation, rep.supportViolation);
          worst.offDiagonalMax = std::max(worst.offDiagonalMax, rep.offDiagonalMax);
          worst.tailDeviation = std::max(worst.tailDeviation, rep.tailDeviation);
        }
        out.metrics.push_back(Metric::atMost("supportViolation" + tag, worst.supportViolation, opts.tolEntry));
        out.metrics.push_back(Metric::atMost("offDiagonalMax" + tag, worst.offDiagonalMax, opts.tolEntry));
        out.metrics.push_back(Metric::atMost("tailDeviation" + tag, worst.tailDeviation, opts.tolEntry));
        return out;
      });
  return cells;
}

SuiteResult runOne(const std::string& name, const GroupSpec& spec, const SuiteOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::function<CellOutput()>> cells;
  if (name == "isometry") cells = isometryCells(spec, opts);
  else if (name == "coeff") cells = coefficientCells(spec, opts, false);
  else if (name == "defect") {
    cells = coefficientCells(spec, opts, true);
    for (auto& c : studyCells(spec)) cells.push_back(std::move(c));
  } else if (name == "decomp") cells = decompCells(spec, opts);
  else if (name == "rank") cells = rankCells(spec, opts);
  else if (name == "jpattern") cells = jpatternCells(spec, opts);
  else throw SpecError("unknown suite \"" + name + "\"");

  SuiteResult res;
  res.name = name;
  res.seed = opts.seed;
  for (auto& c : runCells(cells, opts.jobs)) {
    for (auto& m : c.metrics) res.metrics.push_back(std::move(m));
    for (auto& s : c.skips) res.skips.push_back(std::move(s));
  }
  if (opts.timing)
    res.timingMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"isometry", "coeff", "defect", "decomp", "rank", "jpattern"};
  return names;
}

bool isSuiteName(const std::string& name) {
  return name == "all" || std::find(suiteNames().begin(), suiteNames().end(), name) != suiteNames().end();
}

std::vector<SuiteResult> runSuites(const std::string& name, const GroupSpec& spec, const SuiteOptions& opts) {
  if (!opts.injectFault.empty() && opts.injectFault != "coeff")
    throw SpecError("unknown fault \"" + opts.injectFault + "\"");
  if (opts.n && *opts.n < 2) throw SpecError("--n must be at least 2");
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& s : suiteNames()) out.push_back(runOne(s, spec, opts));
  } else {
    out.push_back(runOne(name, spec, opts));
  }
  return out;
}

std::vector<CellOutput> runCells(const std::vector<std::function<CellOutput()>>& cells, unsigned jobs) {
  std::vector<CellOutput> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = cells[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::uint64_t cellSeed(std::uint64_t seed, std::uint64_t cell) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (cell + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Word> testWords(const FreeProduct& group, std::size_t minLen, std::size_t maxLen,
                            std::size_t limit, std::size_t sampleSize, std::uint64_t seed) {
  std::vector<Word> all;
  for (std::size_t k = minLen; k <= maxLen; ++k)
    for (auto& w : group.wordsOfLength(k)) all.push_back(std::move(w));
  if (all.size() <= limit) return all;
  std::vector<Word> out;
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), sampleSize, rng);
  return out;
}

}  // namespace fpx::cli
