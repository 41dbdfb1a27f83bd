// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
// Criteria 1-9 call the library directly with the fixed sweeps below;
// criterion 10 drives the installed-layout CLI binary through the shell.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fpx/cpmaps.hpp"
#include "fpx/decomp.hpp"
#include "fpx/operators.hpp"
#include "fpx/spaces.hpp"
#include "fpx/words.hpp"

namespace {

using namespace fpx;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the worst value of each named check so a criterion can print one
// summary line and still name the first thing that broke.
class Tally {
 public:
  void atMost(const std::string& what, double value, double limit) {
    worst_[what] = std::max(worst_.count(what) ? worst_[what] : 0.0, value);
    if (!(value <= limit)) fail(what + " = " + fmt(value) + " > " + fmt(limit));
  }
  void require(const std::string& what, bool ok) {
    if (!ok) fail(what);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  Outcome outcome() const {
    Outcome o;
    o.pass = firstFailure_.empty();
    std::string s;
    for (const auto& [k, v] : worst_) s += (s.empty() ? "" : ", ") + k + " " + fmt(v);
    if (!notes_.empty()) s += (s.empty() ? "" : "; ") + notes_;
    o.detail = o.pass ? s : firstFailure_ + " [" + s + "]";
    return o;
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  void fail(const std::string& s) {
    if (firstFailure_.empty()) firstFailure_ = s;
  }
  std::map<std::string, double> worst_;
  std::string firstFailure_;
  std::string notes_;
};

FreeProduct z2z3() { return FreeProduct({FactorSpec::cyclic(2, "Z2"), FactorSpec::cyclic(3, "Z3")}); }
FreeProduct z3z4() { return FreeProduct({FactorSpec::cyclic(3, "Z3"), FactorSpec::cyclic(4, "Z4")}); }
FreeProduct zwindow(int b) {
  return FreeProduct({FactorSpec::integerWindow(b, "A"), FactorSpec::integerWindow(b, "B")});
}

const AliasTable kAliases{{"a", Letter{0, 1}}, {"b", Letter{1, 1}}};

std::vector<Word> wordsUpTo(const FreeProduct& g, std::size_t minLen, std::size_t maxLen) {
  std::vector<Word> out;
  for (const auto& w : g.enumerateWindow(maxLen))
    if (w.size() >= minLen) out.push_back(w);
  return out;
}

Word randomWord(const FreeProduct& g, std::size_t len, std::mt19937_64& rng) {
  const auto letters = g.allLetters();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Letter> out;
  while (out.size() < len) {
    const Letter l = letters[pick(rng)];
    if (!out.empty() && out.back().factor == l.factor) continue;
    out.push_back(l);
  }
  return Word(std::move(out));
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ------------------------------------------------------------------------

Outcome isometry() {
  Tally t;
  const auto t0 = Clock::now();
  std::size_t streamed = 0;
  for (const auto& g : {z2z3(), z3z4(), zwindow(3)})
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto rep = isometryDefect(g, n, n + 3);
      streamed += rep.streamed ? 1 : 0;
      t.atMost("max|V*V-I|", rep.maxDeviation, 1e-10);
    }
  const double s = seconds(t0);
  t.atMost("seconds", s, 30.0);
  t.note("3 groups x n=2..8, N=n+3, " + std::to_string(streamed) + " windows streamed");
  return t.outcome();
}

double termDistance(const std::vector<TensorTerm>& a, const std::vector<TensorTerm>& b) {
  std::map<std::pair<Word, Word>, double> diff;
  for (const auto& x : a) diff[{x.left, x.right}] += x.weight;
  for (const auto& x : b) diff[{x.left, x.right}] -= x.weight;
  double out = 0.0;
  for (const auto& [k, v] : diff) out = std::max(out, std::abs(v));
  return out;
}

Outcome branchConsistency() {
  Tally t;
  std::size_t words = 0;
  for (const auto& g : {z2z3(), z3z4()})
    for (std::size_t n = 2; n <= 8; ++n) {
      const std::size_t m = halfParameter(n);
      for (const auto& g1 : g.wordsOfLength(m)) {
        t.atMost("gap at l=m", termDistance(vnBranchTerms(g1, n, VnBranch::Short), vnBranchTerms(g1, n, VnBranch::Middle)),
                 1e-12);
        ++words;
      }
      for (const auto& g1 : g.wordsOfLength(n)) {
        t.atMost("gap at l=n", termDistance(vnBranchTerms(g1, n, VnBranch::Middle), vnBranchTerms(g1, n, VnBranch::Long)),
                 1e-12);
        ++words;
      }
    }
  t.note(std::to_string(words) + " boundary words");
  return t.outcome();
}

Outcome coefficientEquivalence() {
  Tally t;
  const auto g = z2z3();
  const auto hs = wordsUpTo(g, 0, 3);
  t.require("14 words of length <= 3", hs.size() == 14);
  std::size_t columns = 0;
  for (std::size_t n : {4u, 6u, 9u})
    for (const auto& h : hs) {
      const WindowBasis basis(g, n + h.size() + 1);
      const auto survey = surveyCoefficients(h, n, basis);
      std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> range;
      for (const auto& col : survey.columns) {
        ++columns;
        t.require("nonzero at index(hg)", col.row == basis.indexOf(g.multiply(h, basis.word(col.column))));
        t.atMost("off-support", col.offSupport, 0.0);
        t.atMost("|entry-c|", std::abs(col.value - coefficientC(n, col.lenG, col.lenHG).c), 1e-10);
        auto [it, fresh] = range.try_emplace({col.lenG, col.lenHG}, col.value, col.value);
        if (!fresh) {
          it->second.first = std::min(it->second.first, col.value);
          it->second.second = std::max(it->second.second, col.value);
        }
      }
      for (const auto& [k, r] : range) t.atMost("length spread", r.second - r.first, 1e-12);
    }
  t.note(std::to_string(columns) + " safe-zone columns");
  return t.outcome();
}

Outcome defectIdentity() {
  Tally t;
  const auto g = z2z3();
  for (std::size_t n : {4u, 6u, 9u})
    for (const auto& h : wordsUpTo(g, 0, 3)) {
      const auto d = defectNorm(h, n, WindowBasis(g, n + h.size() + 1));
      t.atMost("|matrix-analytic|", std::abs(d.matrixDefect - d.analyticDefect), 1e-10);
      t.atMost("matrix-bound", d.matrixDefect - d.bound, 1e-12);
      t.atMost("analytic-bound", d.analyticDefect - d.bound, 1e-12);
    }
  const Word b = g.parseWord("b", kAliases);
  const auto d9 = defectNorm(b, 9, WindowBasis(g, 11));
  t.atMost("|defect(b,9)-0.25|", std::abs(d9.matrixDefect - 0.25), 1e-12);
  return t.outcome();
}

Outcome convergence() {
  Tally t;
  const auto g = z2z3();
  const Word b = g.parseWord("b", kAliases);
  const auto matrix = convergenceStudy(g, b, 2, 24, StudyMode::Matrix);
  t.require("23 matrix rows", matrix.size() == 23);
  for (const auto& r : matrix) {
    t.require("matrix mode used", r.mode == StudyMode::Matrix);
    t.require("bound = 1/(n-m)", r.bound == 1.0 / static_cast<double>(r.n - halfParameter(r.n)));
    t.atMost("matrix defect-bound", r.defect - r.bound, 1e-12);
  }
  const auto analytic = convergenceStudy(g, b, 2, 40, StudyMode::Analytic);
  t.require("39 analytic rows", analytic.size() == 39);
  for (const auto& r : analytic) t.atMost("analytic defect-bound", r.defect - r.bound, 1e-12);
  t.atMost("defect(40)", analytic.back().defect, 0.05 + 1e-12);
  return t.outcome();
}

Outcome rankOneDefects() {
  Tally t;
  const FreeProduct g({FactorSpec::cyclic(3), FactorSpec::cyclic(4), FactorSpec::cyclic(5)});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int iota = 0; iota < 3; ++iota) {
    std::vector<SparseOp> tr;
    for (int x : factorBasis(g, iota)) tr.push_back(factorTranslation(g, iota, x));
    for (const auto& a1 : tr)
      for (const auto& a2 : tr) t.atMost("rank (pairs)", static_cast<double>(rankOneDefect(a1, a2, 1e-8).rank), 1.0);
    auto combo = [&]() {
      SparseOp a(tr.front().rows(), tr.front().cols());
      for (const auto& x : tr) a = a + x.scaled(coef(rng));
      return a;
    };
    for (int i = 0; i < 50; ++i) {
      const SparseOp a1 = combo();
      const SparseOp a2 = combo();
      t.atMost("rank (random)", static_cast<double>(rankOneDefect(a1, a2, 1e-8).rank), 1.0);
    }
  }
  t.note("Z3, Z4, Z5");
  return t.outcome();
}

// The six nonzero terms for h = b, n = 2 on Z2*Z3 and one matrix entry each
// must carry: (line, r, p, iota, target word, source word).
struct MicroTerm {
  DecompLine line;
  std::size_t r, p;
  int iota;
  const char* to;
  const char* from;
};

Outcome decomposition() {
  Tally t;
  std::size_t cells = 0;
  for (const auto& g : {z2z3(), z3z4()})
    for (const auto& h : wordsUpTo(g, 1, 3))
      for (std::size_t n = 2; n <= 5; ++n, ++cells)
        t.atMost("maxError (a)", verifyDecomposition(h, n, WindowBasis(g, n)).maxError, 1e-10);

  const auto zw = zwindow(4);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> len(1, 3);
  for (int i = 0; i < 20; ++i) {
    const Word h = randomWord(zw, len(rng), rng);
    for (std::size_t n = 2; n <= 4; ++n, ++cells)
      t.atMost("maxError (b)", verifyDecomposition(h, n, WindowBasis(zw, n)).maxError, 1e-10);
  }

  const auto g = z2z3();
  const Word b = g.parseWord("b", kAliases);
  const WindowBasis w2(g, 2);
  const auto full = verifyDecomposition(b, 2, w2, LeftLengthBound::Full);
  t.atMost("micro maxError", full.maxError, 1e-12);
  t.require("micro termCount == 6", full.termCount == 6);
  const std::vector<MicroTerm> expected{
      {DecompLine::I, 0, 0, -1, "", "1:2"},         {DecompLine::I, 1, 0, -1, "b", ""},
      {DecompLine::II, 0, 1, 0, "a", "1:2 a"},      {DecompLine::II, 1, 1, 0, "b a", "a"},
      {DecompLine::III, 1, 1, 1, "1:2", "b"},       {DecompLine::III, 1, 2, 1, "1:2 a", "b a"}};
  std::vector<const DecompositionTerm*> nonzero;
  for (const auto& term : full.terms)
    if (!term.op.isZero()) nonzero.push_back(&term);
  bool listMatches = nonzero.size() == expected.size();
  for (std::size_t i = 0; listMatches && i < expected.size(); ++i) {
    const auto& e = expected[i];
    const auto& term = *nonzero[i];
    listMatches = term.line == e.line && term.r == e.r && (e.line == DecompLine::I || (term.p == e.p && term.iota == e.iota)) &&
                  std::abs(term.op.at(w2.indexOf(g.parseWord(e.to, kAliases)), w2.indexOf(g.parseWord(e.from, kAliases))) -
                           1.0) <= 1e-12;
  }
  t.require("micro term list", listMatches);

  const auto shown = verifyDecomposition(b, 2, w2, LeftLengthBound::AsDisplayed);
  t.require("k <= n-p-1 micro-case fails", shown.maxError > 1e-10);
  t.note(std::to_string(cells) + " cells; k<=n-p-1 gives error " + Tally::fmt(shown.maxError) + " with " +
         std::to_string(shown.termCount) + " terms");
  return t.outcome();
}

Outcome jpattern() {
  Tally t;
  const auto g = z2z3();
  const std::size_t n = 4;
  std::mt19937_64 rng(42);
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t q = 1; q <= n; ++q)
      for (int i = 0; i < 20; ++i) {
        const SparseOp x = randomJpGenerator(g, n, p, rng);
        const SparseOp y = randomJpGenerator(g, n, q, rng);
        const auto rep = productPatternCheck(g, n, x, p, y, q);
        t.atMost("supportViolation", rep.supportViolation, 1e-10);
        t.atMost("offDiagonalMax", rep.offDiagonalMax, 1e-10);
        t.atMost("tailDeviation", rep.tailDeviation, 1e-10);
      }
  t.note("320 pairs");
  return t.outcome();
}

Outcome unitality() {
  Tally t;
  for (const auto& [g, extra] : {std::pair{z2z3(), std::size_t{3}}, std::pair{z3z4(), std::size_t{1}}})
    for (std::size_t n = 2; n <= 8; ++n) {
      const WindowBasis basis(g, n + extra);
      const std::size_t dn = basis.prefixDimension(n);
      const SparseOp psiOne = applyPsiN(SparseOp::identity(dn), n, basis);
      t.atMost("max|Psi(1)-1|", psiOne.maxAbsDiff(SparseOp::identity(basis.dimension())), 1e-12);
      const SparseOp phiOne = compressPhiN(SparseOp::identity(basis.dimension()), basis, n);
      t.atMost("max|Phi(1)-1|", phiOne.maxAbsDiff(SparseOp::identity(dn)), 0.0);
    }
  t.note("Z2*Z3 with N=n+3, Z3*Z4 with N=n+1");
  return t.outcome();
}

// ------------------------------------------------------------------------

int run(const std::string& cmd) {
  const int raw = std::system((cmd + " 2>/dev/null").c_str());
  return raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cliContract() {
  Tally t;
  namespace fs = std::filesystem;
  const fs::path work = fs::path(FPX_ACCEPTANCE_WORK_DIR);
  fs::create_directories(work);
  const std::string cli = std::string("\"") + FPX_CLI_PATH + "\"";
  const std::string group = std::string(" --group \"") + FPX_DATA_DIR + "/z2z3.json\"";
  auto verify = [&](const std::string& extra, const fs::path& out) {
    return run(cli + " verify" + group + " --suite all --seed 42" + extra + " --out \"" + out.string() + "\"");
  };
  const fs::path r1 = work / "run1.json", r2 = work / "run2.json", r3 = work / "run3.json", rf = work / "fault.json";
  const int e1 = verify("", r1);
  const int e2 = verify("", r2);
  const int e3 = verify(" --jobs 3", r3);
  const int ef = verify(" --inject-fault coeff", rf);
  t.require("verify exit 0 (got " + std::to_string(e1) + ")", e1 == 0 && e2 == 0 && e3 == 0);
  const std::string a = slurp(r1);
  t.require("report written", !a.empty());
  t.require("byte-identical reports across runs", a == slurp(r2));
  t.require("byte-identical reports across job counts", a == slurp(r3));
  t.require("injected fault exits 1 (got " + std::to_string(ef) + ")", ef == 1);
  t.note("exits " + std::to_string(e1) + "/" + std::to_string(e2) + "/" + std::to_string(e3) + ", fault " +
         std::to_string(ef) + ", report " + std::to_string(a.size()) + " bytes");
  return t.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"isometry", isometry},
      {"branch consistency", branchConsistency},
      {"coefficient oracle equivalence", coefficientEquivalence},
      {"defect identity and bound", defectIdentity},
      {"convergence study", convergence},
      {"rank-one defect", rankOneDefects},
      {"decomposition identity", decomposition},
      {"J-pattern", jpattern},
      {"unitality", unitality},
      {"CLI contract", cliContract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
