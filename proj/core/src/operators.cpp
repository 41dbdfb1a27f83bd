#include "fpx/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fpx/errors.hpp"

namespace fpx {

SparseOp lambdaOp(const Word& h, const WindowBasis& basis) {
  const auto& group = basis.group();
  group.validate(h);
  std::vector<Entry> entries;
  entries.reserve(basis.dimension());
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    Word hg;
    try {
      hg = group.multiply(h, basis.word(j));
    } catch (const WindowOverflow&) {
      continue;
    }
    if (auto i = basis.find(hg)) entries.push_back({*i, j, 1.0});
  }
  return SparseOp::fromEntries(basis.dimension(), basis.dimension(), std::move(entries));
}

SparseOp compressPhiN(const SparseOp& x, const WindowBasis& basisN, std::size_t n) {
  if (n > basisN.cutoff()) throw CutoffTooLarge("compression cutoff exceeds the basis cutoff");
  if (x.rows() != basisN.dimension() || x.cols() != basisN.dimension())
    throw DimensionMismatch("operator is not on the window basis");
  const std::size_t d = basisN.prefixDimension(n);
  std::vector<Entry> entries;
  for (const auto& e : x.entries())
    if (e.row < d && e.col < d) entries.push_back(e);
  return SparseOp::fromEntries(d, d, std::move(entries));
}

SparseOp rankOne(const SparseVector& v, const SparseVector& w) {
  std::vector<Entry> entries;
  entries.reserve(v.entries.size() * w.entries.size());
  for (const auto& [i, a] : v.entries)
    for (const auto& [j, b] : w.entries) entries.push_back({i, j, a * b});
  return SparseOp::fromEntries(v.dim, w.dim, std::move(entries));
}

SparseOp tensorOp(const SparseOp& x, const SparseOp& y) {
  std::vector<Entry> entries;
  entries.reserve(x.nnz() * y.nnz());
  for (const auto& a : x.entries())
    for (const auto& b : y.entries())
      entries.push_back({a.row * y.rows() + b.row, a.col * y.cols() + b.col, a.value * b.value});
  return SparseOp::fromEntries(x.rows() * y.rows(), x.cols() * y.cols(), std::move(entries));
}

SparseOp tensorIdentityCompose(const SparseOp& x, std::size_t k, const SparseOp& b) {
  if (b.rows() != x.cols() * k) throw DimensionMismatch("tensor-identity composition shape mismatch");
  std::vector<Entry> entries;
  entries.reserve(b.nnz());
  for (const auto& e : b.entries()) {
    const std::size_t u = e.row / k;
    const std::size_t t = e.row % k;
    for (const auto& a : x.column(u)) entries.push_back({a.row * k + t, e.col, a.value * e.value});
  }
  return SparseOp::fromEntries(x.rows() * k, b.cols(), std::move(entries));
}

const char* normMethodName(NormMethod m) {
  switch (m) {
    case NormMethod::MonomialExact: return "monomial-exact";
    case NormMethod::DenseSvd: return "dense-SVD";
    case NormMethod::PowerIteration: return "power-iteration";
  }
  return "?";
}

namespace {

Eigen::MatrixXd toDense(const SparseOp& x) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(x.rows()),
                                            static_cast<Eigen::Index>(x.cols()));
  for (const auto& e : x.entries())
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  return m;
}

Eigen::VectorXd singularValues(const SparseOp& x) {
  if (std::max(x.rows(), x.cols()) > kDenseLimit)
    throw TooLarge("dense SVD limited to dimension " + std::to_string(kDenseLimit));
  if (x.rows() == 0 || x.cols() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(toDense(x));
  return svd.singularValues();
}

}  // namespace

NormReport operatorNorm(const SparseOp& x, double relTol, std::size_t maxIter) {
  NormReport rep;
  rep.tolerance = relTol;
  if (x.isMonomial()) {
    rep.method = NormMethod::MonomialExact;
    rep.value = x.maxAbs();
    return rep;
  }
  if (std::max(x.rows(), x.cols()) <= kDenseLimit) {
    rep.method = NormMethod::DenseSvd;
    const auto s = singularValues(x);
    rep.value = s.size() ? s(0) : 0.0;
    return rep;
  }

  // Power iteration on x* x from a fixed start vector.
  rep.method = NormMethod::PowerIteration;
  const SparseOp xt = x.adjoint();
  SparseVector v;
  v.dim = x.cols();
  for (std::size_t i = 0; i < x.cols(); ++i)
    v.entries.emplace_back(i, 1.0 + 1e-3 * static_cast<double>(i % 7));
  double prev = 0.0;
  for (std::size_t it = 1; it <= maxIter; ++it) {
    const double nv = v.norm();
    if (nv == 0.0) {
      rep.value = 0.0;
      rep.iterations = it;
      return rep;
    }
    for (auto& [i, a] : v.entries) a /= nv;
    const SparseVector w = x.apply(v);
    const double sigma = w.norm();
    v = xt.apply(w);
    if (std::abs(sigma - prev) <= relTol * std::max(sigma, 1e-300)) {
      rep.value = sigma;
      rep.iterations = it;
      return rep;
    }
    prev = sigma;
  }
  throw NonConvergence("power iteration did not stabilize");
}

std::size_t numericalRank(const SparseOp& x, double threshold) {
  if (x.isZero()) return 0;
  const auto s = singularValues(x);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold * s(0)) ++r;
  return r;
}

double minEigenvalue(const SparseOp& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("eigenvalues need a square operator");
  if (x.rows() > kDenseLimit) throw TooLarge("dense eigenvalue solve limited in dimension");
  if (x.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(toDense(x), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace fpx
