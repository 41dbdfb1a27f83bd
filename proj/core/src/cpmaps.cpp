#include "fpx/cpmaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fpx/errors.hpp"
#include "fpx/operators.hpp"

namespace fpx {

std::size_t halfParameter(std::size_t n) {
  if (n < 2) throw CutoffTooSmall("n must be at least 2 so that n - m >= 1");
  return (n + 1) / 2;
}

VnBranch vnBranchFor(std::size_t len, std::size_t n) {
  const std::size_t m = halfParameter(n);
  if (len <= m) return VnBranch::Short;
  if (len < n) return VnBranch::Middle;
  return VnBranch::Long;
}

bool vnBranchApplies(VnBranch b, std::size_t len, std::size_t n) {
  const std::size_t m = halfParameter(n);
  switch (b) {
    case VnBranch::Short: return len <= m;
    case VnBranch::Middle: return m <= len && len <= n;
    case VnBranch::Long: return len >= n;
  }
  return false;
}

std::vector<SplitWeight> vnSplitWeights(std::size_t len, std::size_t n, VnBranch branch) {
  if (!vnBranchApplies(branch, len, n)) throw InvalidPosition("V_n branch does not cover this length");
  const std::size_t m = halfParameter(n);
  const double d = static_cast<double>(n - m);
  const double splitWeight = 1.0 / std::sqrt(d);
  std::vector<SplitWeight> out;
  switch (branch) {
    case VnBranch::Short:
      out.push_back({len, 1.0});
      break;
    case VnBranch::Middle: {
      const double head = std::sqrt(static_cast<double>(n - len)) / std::sqrt(d);
      if (head != 0.0) out.push_back({len, head});
      for (std::size_t j = m; j < len; ++j) out.push_back({j, splitWeight});
      break;
    }
    case VnBranch::Long:
      for (std::size_t j = m; j < n; ++j) out.push_back({j, splitWeight});
      break;
  }
  return out;
}

std::vector<TensorTerm> vnBranchTerms(const Word& g, std::size_t n, VnBranch branch) {
  std::vector<TensorTerm> out;
  for (const auto& s : vnSplitWeights(g.size(), n, branch))
    out.push_back({g.prefix(s.prefixLength), g.suffix(s.prefixLength), s.weight});
  return out;
}

std::vector<TensorTerm> vnColumn(const Word& g, std::size_t n) {
  return vnBranchTerms(g, n, vnBranchFor(g.size(), n));
}

SparseOp buildVn(std::size_t n, const WindowBasis& basisN) {
  halfParameter(n);
  if (basisN.cutoff() < n) throw CutoffTooSmall("V_n needs a window with N >= n");
  const std::size_t inner = basisN.prefixDimension(n);
  const std::size_t outer = basisN.dimension();
  std::vector<Entry> entries;
  for (std::size_t col = 0; col < outer; ++col)
    for (const auto& t : vnColumn(basisN.word(col), n)) {
      const std::size_t li = basisN.indexOf(t.left);
      const std::size_t ri = basisN.indexOf(t.right);
      entries.push_back({li * outer + ri, col, t.weight});
    }
  return SparseOp::fromEntries(inner * outer, outer, std::move(entries));
}

StinespringDilation::StinespringDilation(std::size_t n, const WindowBasis& basisN)
    : n_(n),
      m_(halfParameter(n)),
      innerDim_(0),
      outerDim_(basisN.dimension()),
      v_(buildVn(n, basisN)) {
  innerDim_ = basisN.prefixDimension(n);
  vAdjoint_ = v_.adjoint();
}

SparseOp StinespringDilation::apply(const SparseOp& x) const {
  if (x.rows() != innerDim_ || x.cols() != innerDim_)
    throw DimensionMismatch("Psi_n expects an operator on l2(W_n)");
  return vAdjoint_ * tensorIdentityCompose(x, outerDim_, v_);
}

SparseOp applyPsiN(const SparseOp& x, std::size_t n, const WindowBasis& basisN) {
  return StinespringDilation(n, basisN).apply(x);
}

// ------------------------------------------------------------ coefficients

bool caseRegionContains(int caseId, std::size_t n, std::size_t lenG, std::size_t lenHG) {
  const std::size_t m = halfParameter(n);
  auto low = [&](std::size_t l) { return l <= m; };
  auto mid = [&](std::size_t l) { return m <= l && l <= n; };
  auto high = [&](std::size_t l) { return l >= n; };
  switch (caseId) {
    case 1: return low(lenG) && low(lenHG);
    case 2: return low(lenG) && mid(lenHG);
    case 3: return mid(lenG) && low(lenHG);
    case 4: return mid(lenG) && mid(lenHG);
    case 5: return mid(lenG) && high(lenHG);
    case 6: return high(lenG) && mid(lenHG);
    case 7: return high(lenG) && high(lenHG);
    default: return false;
  }
}

double caseFormula(int caseId, std::size_t n, std::size_t lenG, std::size_t lenHG) {
  const std::size_t m = halfParameter(n);
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double g = static_cast<double>(lenG);
  const double hg = static_cast<double>(lenHG);
  const double d = nn - mm;
  switch (caseId) {
    case 1: return 1.0;
    case 2: return std::sqrt(nn - hg) / std::sqrt(d);
    case 3: return std::sqrt(nn - g) / std::sqrt(d);
    case 4: return (std::sqrt((nn - g) * (nn - hg)) + std::min(g, hg) - mm) / d;
    case 5: return (nn + g - hg - mm) / d;
    case 6: return (nn - g + hg - mm) / d;
    case 7: return (d - std::abs(g - hg)) / d;
    default: throw InvalidPosition("case id must be in 1..7");
  }
}

CoefficientResult coefficientC(std::size_t n, std::size_t lenG, std::size_t lenHG) {
  CoefficientResult r;
  r.n = n;
  r.m = halfParameter(n);
  r.lenG = lenG;
  r.lenHG = lenHG;
  const std::size_t diff = lenG > lenHG ? lenG - lenHG : lenHG - lenG;
  if (diff > 2 * r.m)
    throw OutOfRegime("|l(g) - l(hg)| exceeds 2m; raise n");

  // On shared boundaries the higher-numbered case is reported; the formulas
  // agree there, so c does not depend on the choice.
  for (int id = 7; id >= 1; --id) {
    if (!caseRegionContains(id, n, lenG, lenHG)) continue;
    const double c = caseFormula(id, n, lenG, lenHG);
    if (c < 0.0) break;  // past the overlap of the translated splits
    r.caseId = id;
    r.c = c;
    return r;
  }
  r.caseId = 0;
  r.c = 0.0;
  return r;
}

CoefficientSurvey surveyCoefficients(const Word& h, std::size_t n, const WindowBasis& basisN) {
  const auto& group = basisN.group();
  group.validate(h);
  CoefficientSurvey s;
  s.n = n;
  s.m = halfParameter(n);
  s.cutoff = basisN.cutoff();
  const std::size_t lh = h.size();
  if (s.cutoff < n + lh + 1) throw CutoffTooSmall("defect evaluation needs N >= n + l(h) + 1");
  if (lh > 2 * s.m) throw OutOfRegime("l(h) exceeds 2m; raise n");
  s.safeZoneCutoff = s.cutoff - lh;

  const SparseOp phi = compressPhiN(lambdaOp(h, basisN), basisN, n);
  const SparseOp psi = StinespringDilation(n, basisN).apply(phi);

  for (std::size_t col = 0; col < basisN.dimension(); ++col) {
    const Word& g = basisN.word(col);
    if (g.size() > s.safeZoneCutoff) break;  // graded order
    Word hg;
    try {
      hg = group.multiply(h, g);
    } catch (const WindowOverflow&) {
      ++s.overflowColumns;
      continue;
    }
    ColumnCoefficient cc;
    cc.column = col;
    cc.row = basisN.indexOf(hg);
    cc.lenG = g.size();
    cc.lenHG = hg.size();
    for (const auto& e : psi.column(col)) {
      if (e.row == cc.row)
        cc.value = e.value;
      else
        cc.offSupport = std::max(cc.offSupport, std::abs(e.value));
    }
    s.columns.push_back(cc);
  }
  return s;
}

DefectReport defectNorm(const Word& h, std::size_t n, const WindowBasis& basisN) {
  const auto survey = surveyCoefficients(h, n, basisN);
  DefectReport rep;
  rep.h = h;
  rep.n = n;
  rep.m = survey.m;
  rep.bound = static_cast<double>(h.size()) / static_cast<double>(n - survey.m);
  rep.safeZoneCutoff = survey.safeZoneCutoff;
  rep.safeColumns = survey.columns.size();

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& cc : survey.columns) {
    rep.matrixDefect = std::max(rep.matrixDefect, std::abs(1.0 - cc.value));
    rep.maxOffSupport = std::max(rep.maxOffSupport, cc.offSupport);
    pairs.emplace(cc.lenG, cc.lenHG);
  }
  double minC = 1.0;
  for (const auto& [lg, lhg] : pairs) minC = std::min(minC, coefficientC(n, lg, lhg).c);
  rep.analyticDefect = 1.0 - minC;
  for (const auto& [lg, lhg] : pairs)
    if (coefficientC(n, lg, lhg).c == minC) rep.worstPairs.emplace_back(lg, lhg);
  return rep;
}

std::set<std::pair<std::size_t, std::size_t>> realizedLengthPairs(const FreeProduct& group,
                                                                  const Word& h,
                                                                  std::size_t maxLenG) {
  group.validate(h);
  const std::size_t lh = h.size();
  std::set<std::pair<std::size_t, std::size_t>> out;
  auto lengthOfProduct = [&](const Word& g, std::size_t lenG) {
    const auto prof = group.cancellationProfile(h, g);
    return lh + lenG - 2 * prof.q - (prof.merged ? 1 : 0);
  };

  for (std::size_t len = 0; len <= std::min(maxLenG, lh); ++len)
    for (const auto& g : group.wordsOfLength(len)) out.emplace(len, lengthOfProduct(g, len));

  if (maxLenG > lh) {
    // The profile of h against g only reads the first l(h) letters of g, and
    // with two or more factors every reduced prefix extends to any length.
    const auto prefixes = group.wordsOfLength(lh);
    const bool extendable = group.factorCount() >= 2;
    for (std::size_t len = lh + 1; len <= maxLenG && extendable; ++len)
      for (const auto& pre : prefixes) out.emplace(len, lengthOfProduct(pre, len));
  }
  return out;
}

const char* studyModeName(StudyMode m) { return m == StudyMode::Matrix ? "matrix" : "analytic"; }

std::vector<StudyRow> convergenceStudy(const FreeProduct& group, const Word& h, std::size_t nMin,
                                       std::size_t nMax, StudyMode mode, std::size_t maxDimension) {
  group.validate(h);
  if (nMin < 2) throw CutoffTooSmall("convergence study starts at n >= 2");
  const std::size_t lh = h.size();
  std::vector<StudyRow> rows;
  for (std::size_t n = nMin; n <= nMax; ++n) {
    StudyRow row;
    row.n = n;
    row.m = halfParameter(n);
    row.mode = mode;
    row.bound = static_cast<double>(lh) / static_cast<double>(n - row.m);
    if (mode == StudyMode::Matrix) {
      const std::size_t cutoff = n + lh + 1;
      if (windowSize(group, cutoff) > maxDimension)
        throw TooLarge("matrix study window W_" + std::to_string(cutoff) + " exceeds the dimension limit");
      row.defect = defectNorm(h, n, WindowBasis(group, cutoff)).matrixDefect;
    } else {
      if (lh > 2 * row.m) throw OutOfRegime("l(h) exceeds 2m; raise n");
      double minC = 1.0;
      for (const auto& [lg, lhg] : realizedLengthPairs(group, h, n + 1))
        minC = std::min(minC, coefficientC(n, lg, lhg).c);
      row.defect = 1.0 - minC;
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- isometry

std::size_t windowSize(const FreeProduct& group, std::size_t cutoff) {
  const std::size_t k = group.factorCount();
  std::vector<double> endingIn(k, 0.0);
  double total = 1.0;
  for (std::size_t len = 1; len <= cutoff; ++len) {
    double all = 0.0;
    for (double v : endingIn) all += v;
    std::vector<double> next(k);
    for (std::size_t f = 0; f < k; ++f) {
      const double letters = static_cast<double>(group.factors()[f].letters().size());
      next[f] = letters * (len == 1 ? 1.0 : all - endingIn[f]);
    }
    endingIn = std::move(next);
    for (double v : endingIn) total += v;
  }
  if (total > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max() / 2;
  return static_cast<std::size_t>(total);
}

namespace {

IsometryReport streamedIsometry(const FreeProduct& group, std::size_t n, std::size_t cutoff) {
  IsometryReport rep;
  rep.streamed = true;

  std::vector<std::vector<SplitWeight>> weights(cutoff + 1);
  std::vector<double> diag(cutoff + 1, 0.0);
  for (std::size_t len = 0; len <= cutoff; ++len) {
    weights[len] = vnSplitWeights(len, n, vnBranchFor(len, n));
    for (const auto& w : weights[len]) diag[len] += w.weight * w.weight;
  }

  const auto letters = group.allLetters();
  std::vector<int> factorOf(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) factorOf[i] = letters[i].factor;

  // Depth-first walk over W_N; stack[d] is the letter index at depth d.
  std::vector<int> stack;
  stack.reserve(cutoff);
  std::vector<int> seamFactor;  // factor of each placed letter
  seamFactor.reserve(cutoff);

  auto visit = [&](std::size_t len) {
    ++rep.columns;
    double dev = std::abs(diag[len] - 1.0);
    for (const auto& w : weights[len]) {
      const std::size_t j = w.prefixLength;
      // A tensor key (g_1..g_j, g_{j+1}..g_l) multiplies back to g itself
      // exactly when the seam letters lie in different factors.
      if (j > 0 && j < len && seamFactor[j - 1] == seamFactor[j]) dev = std::max(dev, 1.0);
    }
    rep.maxDeviation = std::max(rep.maxDeviation, dev);
  };

  visit(0);
  if (cutoff == 0) return rep;
  const int nl = static_cast<int>(letters.size());
  stack.push_back(-1);
  seamFactor.push_back(-1);
  while (!stack.empty()) {
    const std::size_t depth = stack.size() - 1;
    int& cur = stack.back();
    const int prevFactor = depth == 0 ? -1 : seamFactor[depth - 1];
    ++cur;
    while (cur < nl && factorOf[static_cast<std::size_t>(cur)] == prevFactor) ++cur;
    if (cur >= nl) {
      stack.pop_back();
      seamFactor.pop_back();
      continue;
    }
    seamFactor[depth] = factorOf[static_cast<std::size_t>(cur)];
    visit(depth + 1);
    if (depth + 1 < cutoff) {
      stack.push_back(-1);
      seamFactor.push_back(-1);
    }
  }
  return rep;
}

}  // namespace

IsometryReport isometryDefect(const FreeProduct& group, std::size_t n, std::size_t cutoff,
                              std::size_t materializeLimit) {
  halfParameter(n);
  if (cutoff < n) throw CutoffTooSmall("isometry check needs N >= n");
  if (windowSize(group, cutoff) > materializeLimit) return streamedIsometry(group, n, cutoff);

  IsometryReport rep;
  const WindowBasis basis(group, cutoff);
  const SparseOp v = buildVn(n, basis);
  const SparseOp gram = v.adjoint() * v;
  rep.maxDeviation = (gram - SparseOp::identity(basis.dimension())).maxAbs();
  rep.columns = basis.dimension();
  return rep;
}

}  // namespace fpx
