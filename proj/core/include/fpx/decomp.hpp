#pragma once

// Structural decomposition of Phi_n(lambda_h) into rank-one pieces of the
// compacts (J_0) and conjugated tensor pieces V_{p,i}(K x A x 1)V_{p,i}* of
// the ideals J_p, plus the single-factor compressions Q° a Q° behind them.

#include <cstddef>
#include <random>
#include <vector>

#include "fpx/sparse_op.hpp"
#include "fpx/spaces.hpp"
#include "fpx/words.hpp"

namespace fpx {

/// Basis of l2(G_i): index 0 is delta_e, then the letters of factor i in
/// order. For integer windows this is the letter window plus e.
std::vector<int> factorBasis(const FreeProduct& group, int iota);

/// lambda_x on l2(G_i), truncated for integer windows.
SparseOp factorTranslation(const FreeProduct& group, int iota, int element);

/// Q° a Q°: drops the delta_e row and column of an operator on l2(G_i).
SparseOp compressQ(const SparseOp& a);

struct RankOneDefect {
  SparseOp defect;  // Q° a1 a2 Q° - Q° a1 Q° a2 Q°
  std::size_t rank = 0;
};

RankOneDefect rankOneDefect(const SparseOp& a1, const SparseOp& a2, double threshold = 1e-8);

enum class DecompLine { I = 1, II = 2, III = 3 };
const char* lineName(DecompLine l);

struct DecompositionTerm {
  DecompLine line = DecompLine::I;
  std::size_t r = 0;
  std::size_t p = 0;     // 0 for line i
  int iota = -1;         // -1 for line i
  std::size_t jMembership = 0;
  SparseOp op;           // on l2(W_n)
};

/// All summands of Phi_n(lambda_h), in (line, r, p, iota) order. Terms whose
/// rank-one vectors fall outside the side space (possible only under
/// LeftLengthBound::AsDisplayed) are kept with a zero operator.
std::vector<DecompositionTerm> buildPhiDecomposition(const FreeProduct& group, const Word& h,
                                                     std::size_t n,
                                                     LeftLengthBound bound = LeftLengthBound::Full);

struct DecompositionCheck {
  double maxError = 0.0;
  std::size_t termCount = 0;  // nonzero terms
  std::vector<DecompositionTerm> terms;
};

/// Compares the sum of the terms with compressPhiN(lambdaOp(h)) taken on
/// `direct`, which must have cutoff >= n.
DecompositionCheck verifyDecomposition(const Word& h, std::size_t n, const WindowBasis& direct,
                                       LeftLengthBound bound = LeftLengthBound::Full);

/// V_{p,i} (E_{row,col} x aMid x 1) V_{p,i}* on l2(W_n), where E is the matrix
/// unit of the left side space.
SparseOp jpGenerator(const FreeProduct& group, std::size_t n, std::size_t p, int iota,
                     std::size_t leftRow, std::size_t leftCol, const SparseOp& aMid);

struct PatternReport {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t minIdx = 0;
  double offDiagonalMax = 0.0;
  double tailDeviation = 0.0;
  double supportViolation = 0.0;

  bool passes(double tol = 1e-10) const {
    return offDiagonalMax <= tol && tailDeviation <= tol && supportViolation <= tol;
  }
};

/// Checks that z = x*y has the shape of an element of J_{min(p,q)}: supported
/// on words of length >= min(p,q), block diagonal over the factor of the
/// letter at that position, and of the form T x 1 on the right side space.
PatternReport productPatternCheck(const FreeProduct& group, std::size_t n, const SparseOp& x,
                                  std::size_t p, const SparseOp& y, std::size_t q);

/// A random generator of J_p for pattern tests: random side-space matrix unit
/// and a middle factor drawn from compressed translations or matrix units.
SparseOp randomJpGenerator(const FreeProduct& group, std::size_t n, std::size_t p,
                           std::mt19937_64& rng);

}  // namespace fpx
