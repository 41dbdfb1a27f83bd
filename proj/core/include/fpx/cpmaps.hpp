#pragma once

// The isometries V_n : l2(G) -> l2(W_n) x l2(G), the unital completely
// positive maps Psi_n(x) = V_n* (x tensor 1) V_n, the closed-form coefficients
// of Psi_n(Phi_n(lambda_h)), and the defect and convergence experiments built
// on them. Everything is evaluated on a finite window l2(W_N) with N >= n.

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "fpx/sparse_op.hpp"
#include "fpx/spaces.hpp"
#include "fpx/words.hpp"

namespace fpx {

/// m = floor((n + 1) / 2). Throws CutoffTooSmall for n < 2.
std::size_t halfParameter(std::size_t n);

/// The three branches of V_n, keyed by block length:
/// Short for l <= m, Middle for m <= l <= n, Long for l >= n.
enum class VnBranch { Short, Middle, Long };

/// Branch used by buildVn for a word of the given length.
VnBranch vnBranchFor(std::size_t len, std::size_t n);
bool vnBranchApplies(VnBranch b, std::size_t len, std::size_t n);

/// One term weight * (delta_{g_1..g_j} tensor delta_{g_{j+1}..g_l}), keyed by j.
/// j == l is the head term delta_g tensor delta_e.
struct SplitWeight {
  std::size_t prefixLength = 0;
  double weight = 0.0;
};

/// Weights of the given branch for a word of length len; zero weights are
/// dropped. Throws InvalidPosition when the branch does not cover len.
std::vector<SplitWeight> vnSplitWeights(std::size_t len, std::size_t n, VnBranch branch);

struct TensorTerm {
  Word left;
  Word right;
  double weight = 0.0;
};

std::vector<TensorTerm> vnBranchTerms(const Word& g, std::size_t n, VnBranch branch);
/// V_n delta_g.
std::vector<TensorTerm> vnColumn(const Word& g, std::size_t n);

/// V_n restricted to l2(W_N) as an operator into l2(W_n) x l2(W_N), tensor
/// index left * |W_N| + right. Requires N >= n >= 2.
SparseOp buildVn(std::size_t n, const WindowBasis& basisN);

/// V_n together with Psi_n on a fixed window.
class StinespringDilation {
 public:
  StinespringDilation(std::size_t n, const WindowBasis& basisN);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t innerDimension() const { return innerDim_; }
  std::size_t outerDimension() const { return outerDim_; }
  const SparseOp& isometry() const { return v_; }

  /// Psi_n(x) for x on l2(W_n).
  SparseOp apply(const SparseOp& x) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t innerDim_;
  std::size_t outerDim_;
  SparseOp v_;
  SparseOp vAdjoint_;
};

SparseOp applyPsiN(const SparseOp& x, std::size_t n, const WindowBasis& basisN);

/// Psi_n(Phi_n(lambda_h)) delta_g = c delta_{hg} with c depending only on
/// (n, l(g), l(hg)). caseId 1..7 follows the seven length regimes (the
/// highest one on a shared boundary); caseId 0
/// marks pairs where V_n delta_g and V_n delta_{hg} share no split after
/// translation, so c = 0 (the literal 5/6/7 formulas would go negative
/// there, and the two corner regimes are covered by no case).
struct CoefficientResult {
  int caseId = 1;
  double c = 1.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t lenG = 0;
  std::size_t lenHG = 0;
};

/// Throws OutOfRegime when |lenG - lenHG| > 2m: no h with l(h) <= 2m, the
/// range where the length-only formula is exact, realizes such a pair.
CoefficientResult coefficientC(std::size_t n, std::size_t lenG, std::size_t lenHG);

/// Raw formula of one case (1..7), without regime checks.
double caseFormula(int caseId, std::size_t n, std::size_t lenG, std::size_t lenHG);
/// Whether the defining inequalities of case caseId (1..7) hold.
bool caseRegionContains(int caseId, std::size_t n, std::size_t lenG, std::size_t lenHG);

/// Safe-zone column data of Psi_n(Phi_n(lambda_h)).
struct ColumnCoefficient {
  std::size_t column = 0;  // index of g
  std::size_t row = 0;     // index of hg
  std::size_t lenG = 0;
  std::size_t lenHG = 0;
  double value = 0.0;       // entry at (hg, g)
  double offSupport = 0.0;  // largest |entry| elsewhere in the column
};

struct CoefficientSurvey {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t cutoff = 0;
  std::size_t safeZoneCutoff = 0;
  std::size_t overflowColumns = 0;  // integer-window columns with hg outside the window
  std::vector<ColumnCoefficient> columns;
};

/// Requires N >= n + l(h) + 1 and l(h) <= 2m.
CoefficientSurvey surveyCoefficients(const Word& h, std::size_t n, const WindowBasis& basisN);

struct DefectReport {
  Word h;
  std::size_t n = 0;
  std::size_t m = 0;
  double matrixDefect = 0.0;
  double analyticDefect = 0.0;
  double bound = 0.0;  // l(h) / (n - m)
  std::size_t safeZoneCutoff = 0;
  std::size_t safeColumns = 0;
  double maxOffSupport = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> worstPairs;
};

DefectReport defectNorm(const Word& h, std::size_t n, const WindowBasis& basisN);

/// Length pairs (l(g), l(hg)) realized by some g with l(g) <= maxLenG, found
/// from the cancellation profiles of h against all prefixes of length l(h).
std::set<std::pair<std::size_t, std::size_t>> realizedLengthPairs(const FreeProduct& group,
                                                                  const Word& h,
                                                                  std::size_t maxLenG);

enum class StudyMode { Matrix, Analytic };
const char* studyModeName(StudyMode m);

struct StudyRow {
  std::size_t n = 0;
  std::size_t m = 0;
  double defect = 0.0;
  double bound = 0.0;
  StudyMode mode = StudyMode::Analytic;
};

inline constexpr std::size_t kMatrixStudyLimit = 100000;

/// One row per n in [nMin, nMax]. Matrix mode evaluates defectNorm on
/// W_{n + l(h) + 1}; analytic mode minimizes coefficientC over realized pairs
/// with the same safe zone l(g) <= n + 1.
std::vector<StudyRow> convergenceStudy(const FreeProduct& group, const Word& h, std::size_t nMin,
                                       std::size_t nMax, StudyMode mode,
                                       std::size_t maxDimension = kMatrixStudyLimit);

/// |W_N| without enumerating.
std::size_t windowSize(const FreeProduct& group, std::size_t cutoff);

struct IsometryReport {
  double maxDeviation = 0.0;  // max |V_n* V_n - I|
  std::size_t columns = 0;
  bool streamed = false;
};

inline constexpr std::size_t kIsometryMaterializeLimit = 150000;

/// max entry of |V_n* V_n - I| on l2(W_N). Windows above the limit are
/// streamed word by word: each column's tensor keys are checked to be reduced
/// splits of that column's own word (so distinct columns have disjoint
/// support) and the Gram diagonal is accumulated from the weights.
IsometryReport isometryDefect(const FreeProduct& group, std::size_t n, std::size_t cutoff,
                              std::size_t materializeLimit = kIsometryMaterializeLimit);

}  // namespace fpx
