#pragma once

#include <cstddef>
#include <string>

#include "fpx/sparse_op.hpp"
#include "fpx/spaces.hpp"
#include "fpx/words.hpp"

namespace fpx {

/// P_N lambda_h P_N on the window basis: column g carries a 1 at row hg when
/// hg is in the window. For integer-window factors a product whose merged
/// letter leaves [-B, B] is outside the truncated space and contributes 0.
SparseOp lambdaOp(const Word& h, const WindowBasis& basis);

/// Leading |W_n| x |W_n| corner of an operator on l2(W_N).
SparseOp compressPhiN(const SparseOp& x, const WindowBasis& basisN, std::size_t n);

/// Rank one operator z -> v <w, z>.
SparseOp rankOne(const SparseVector& v, const SparseVector& w);

/// Kronecker product; row (i1, i2) -> i1 * y.rows() + i2, likewise for columns.
SparseOp tensorOp(const SparseOp& x, const SparseOp& y);

/// (x tensor 1_k) * b without materializing x tensor 1_k.
SparseOp tensorIdentityCompose(const SparseOp& x, std::size_t k, const SparseOp& b);

enum class NormMethod { MonomialExact, DenseSvd, PowerIteration };
const char* normMethodName(NormMethod m);

struct NormReport {
  double value = 0.0;
  NormMethod method = NormMethod::MonomialExact;
  std::size_t iterations = 0;
  double tolerance = 0.0;
};

inline constexpr std::size_t kDenseLimit = 4096;

/// Spectral norm. Monomial operators are evaluated exactly as max |entry|;
/// otherwise dense SVD up to kDenseLimit, then power iteration on x* x.
NormReport operatorNorm(const SparseOp& x, double relTol = 1e-12, std::size_t maxIter = 20000);

/// Number of singular values above threshold * (largest singular value).
std::size_t numericalRank(const SparseOp& x, double threshold = 1e-8);

/// Smallest eigenvalue of a symmetric operator (dense, dimension <= kDenseLimit).
double minEigenvalue(const SparseOp& x);

}  // namespace fpx
