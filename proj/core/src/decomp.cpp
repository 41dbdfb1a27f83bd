#include "fpx/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "fpx/errors.hpp"
#include "fpx/operators.hpp"

namespace fpx {

std::vector<int> factorBasis(const FreeProduct& group, int iota) {
  const auto& f = group.factor(iota);
  std::vector<int> out{f.identity()};
  out.insert(out.end(), f.letters().begin(), f.letters().end());
  return out;
}

SparseOp factorTranslation(const FreeProduct& group, int iota, int element) {
  const auto& f = group.factor(iota);
  if (!f.isElement(element)) throw FactorMismatch("translation by a non-element");
  const auto basis = factorBasis(group, iota);
  auto position = [&](int e) -> std::optional<std::size_t> {
    auto it = std::find(basis.begin(), basis.end(), e);
    if (it == basis.end()) return std::nullopt;
    return static_cast<std::size_t>(it - basis.begin());
  };
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto prod = f.product(element, basis[j]);
    if (!prod) continue;
    if (auto i = position(*prod)) entries.push_back({*i, j, 1.0});
  }
  return SparseOp::fromEntries(basis.size(), basis.size(), std::move(entries));
}

SparseOp compressQ(const SparseOp& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw DimensionMismatch("compressQ expects a square operator");
  const std::size_t d = a.rows() - 1;
  std::vector<Entry> entries;
  for (const auto& e : a.entries())
    if (e.row > 0 && e.col > 0) entries.push_back({e.row - 1, e.col - 1, e.value});
  return SparseOp::fromEntries(d, d, std::move(entries));
}

RankOneDefect rankOneDefect(const SparseOp& a1, const SparseOp& a2, double threshold) {
  RankOneDefect out;
  out.defect = compressQ(a1 * a2) - compressQ(a1) * compressQ(a2);
  out.rank = numericalRank(out.defect, threshold);
  return out;
}

const char* lineName(DecompLine l) {
  switch (l) {
    case DecompLine::I: return "i";
    case DecompLine::II: return "ii";
    case DecompLine::III: return "iii";
  }
  return "?";
}

namespace {

class EmbeddingCache {
 public:
  EmbeddingCache(const WindowBasis& basis, LeftLengthBound bound) : basis_(basis), bound_(bound) {}

  const PositionEmbedding& get(std::size_t p, int iota) {
    auto key = std::make_pair(p, iota);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, buildPositionEmbedding(basis_.cutoff(), p, iota, basis_, bound_)).first;
    return it->second;
  }

 private:
  const WindowBasis& basis_;
  LeftLengthBound bound_;
  std::map<std::pair<std::size_t, int>, PositionEmbedding> cache_;
};

SparseVector windowVector(const WindowBasis& basis, const Word& w) {
  SparseVector v;
  v.dim = basis.dimension();
  if (auto i = basis.find(w)) v.entries.emplace_back(*i, 1.0);
  return v;
}

SparseVector leftVector(const PositionEmbedding& emb, const Word& w) {
  SparseVector v;
  v.dim = emb.leftDimension();
  if (auto i = emb.side.findLeft(w)) v.entries.emplace_back(*i, 1.0);
  return v;
}

SparseOp conjugate(const PositionEmbedding& emb, const SparseOp& left, const SparseOp& middle) {
  const SparseOp inner = tensorOp(tensorOp(left, middle), SparseOp::identity(emb.rightDimension()));
  return emb.isometry * inner * emb.isometry.adjoint();
}

}  // namespace

std::vector<DecompositionTerm> buildPhiDecomposition(const FreeProduct& group, const Word& h,
                                                     std::size_t n, LeftLengthBound bound) {
  group.validate(h);
  if (h.empty()) throw InvalidWord("the decomposition is stated for h != e");
  if (n < 1) throw CutoffTooSmall("decomposition needs n >= 1");

  const WindowBasis basis(group, n);
  EmbeddingCache embeddings(basis, bound);
  const long M = static_cast<long>(h.size());
  const long N = static_cast<long>(n);
  const auto ur = [](long v) { return static_cast<std::size_t>(v); };

  auto head = [&](long r) { return h.prefix(ur(r)); };                   // h_1..h_r
  auto tailInv = [&](long r) { return group.inverse(h.suffix(ur(r))); };  // h_M^-1..h_{r+1}^-1
  auto factorAt = [&](long r) { return h[ur(r - 1)].factor; };            // iota_r, 1-based

  std::vector<DecompositionTerm> terms;

  for (long r = std::max(M - N, 0L); r <= std::min(M, N); ++r) {
    DecompositionTerm t;
    t.line = DecompLine::I;
    t.r = ur(r);
    t.op = rankOne(windowVector(basis, head(r)), windowVector(basis, tailInv(r)));
    terms.push_back(std::move(t));
  }

  for (long r = std::max(M - N + 1, 0L); r <= std::min(M, N - 1); ++r) {
    const long pMax = N - std::max(r, M - r);
    for (long p = 1; p <= pMax; ++p)
      for (int iota = 0; iota < static_cast<int>(group.factorCount()); ++iota) {
        if (r >= 1 && iota == factorAt(r)) continue;
        if (r + 1 <= M && iota == factorAt(r + 1)) continue;
        const auto& emb = embeddings.get(ur(p), iota);
        DecompositionTerm t;
        t.line = DecompLine::II;
        t.r = ur(r);
        t.p = ur(p);
        t.iota = iota;
        t.jMembership = ur(p);
        const SparseOp k = rankOne(leftVector(emb, head(r)), leftVector(emb, tailInv(r)));
        t.op = conjugate(emb, k, SparseOp::identity(emb.middleDimension()));
        terms.push_back(std::move(t));
      }
  }

  for (long r = std::max(M - N, 0L) + 1; r <= std::min(M, N); ++r) {
    const long pMax = N - std::max(r - 1, M - r);
    const int iota = factorAt(r);
    const SparseOp mid = compressQ(factorTranslation(group, iota, h[ur(r - 1)].element));
    for (long p = 1; p <= pMax; ++p) {
      const auto& emb = embeddings.get(ur(p), iota);
      DecompositionTerm t;
      t.line = DecompLine::III;
      t.r = ur(r);
      t.p = ur(p);
      t.iota = iota;
      t.jMembership = ur(p);
      const SparseOp k = rankOne(leftVector(emb, head(r - 1)), leftVector(emb, tailInv(r)));
      t.op = conjugate(emb, k, mid);
      terms.push_back(std::move(t));
    }
  }
  return terms;
}

DecompositionCheck verifyDecomposition(const Word& h, std::size_t n, const WindowBasis& direct,
                                       LeftLengthBound bound) {
  if (direct.cutoff() < n) throw CutoffTooSmall("direct side needs a window with N >= n");
  DecompositionCheck out;
  out.terms = buildPhiDecomposition(direct.group(), h, n, bound);
  const std::size_t d = direct.prefixDimension(n);
  SparseOp sum(d, d);
  for (const auto& t : out.terms) {
    if (t.op.isZero()) continue;
    ++out.termCount;
    sum = sum + t.op;
  }
  const SparseOp phi = compressPhiN(lambdaOp(h, direct), direct, n);
  out.maxError = (sum - phi).maxAbs();
  return out;
}

SparseOp jpGenerator(const FreeProduct& group, std::size_t n, std::size_t p, int iota,
                     std::size_t leftRow, std::size_t leftCol, const SparseOp& aMid) {
  const WindowBasis basis(group, n);
  const auto emb = buildPositionEmbedding(n, p, iota, basis);
  if (leftRow >= emb.leftDimension() || leftCol >= emb.leftDimension())
    throw InvalidPosition("matrix unit outside the left side space");
  if (aMid.rows() != emb.middleDimension() || aMid.cols() != emb.middleDimension())
    throw DimensionMismatch("middle operator must act on l2(G_i°)");
  const SparseOp unit = rankOne(SparseVector::basis(emb.leftDimension(), leftRow),
                                SparseVector::basis(emb.leftDimension(), leftCol));
  return conjugate(emb, unit, aMid);
}

PatternReport productPatternCheck(const FreeProduct& group, std::size_t n, const SparseOp& x,
                                  std::size_t p, const SparseOp& y, std::size_t q) {
  PatternReport rep;
  rep.p = p;
  rep.q = q;
  rep.minIdx = std::min(p, q);
  if (rep.minIdx == 0) return rep;  // J_0 holds every operator at finite size

  const WindowBasis basis(group, n);
  const SparseOp z = x * y;

  for (const auto& e : z.entries())
    if (basis.word(e.row).size() < rep.minIdx || basis.word(e.col).size() < rep.minIdx)
      rep.supportViolation = std::max(rep.supportViolation, std::abs(e.value));

  std::vector<PositionEmbedding> embs;
  for (int iota = 0; iota < static_cast<int>(group.factorCount()); ++iota)
    embs.push_back(buildPositionEmbedding(n, rep.minIdx, iota, basis));

  for (std::size_t a = 0; a < embs.size(); ++a)
    for (std::size_t b = 0; b < embs.size(); ++b) {
      const SparseOp block = embs[a].isometry.adjoint() * z * embs[b].isometry;
      if (a != b) {
        rep.offDiagonalMax = std::max(rep.offDiagonalMax, block.maxAbs());
        continue;
      }
      const std::size_t rd = embs[a].rightDimension();
      std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> slices;
      for (const auto& e : block.entries()) {
        const std::size_t r1 = e.row % rd;
        const std::size_t r2 = e.col % rd;
        if (r1 != r2) {
          rep.tailDeviation = std::max(rep.tailDeviation, std::abs(e.value));
          continue;
        }
        auto& v = slices[{e.row / rd, e.col / rd}];
        if (v.empty()) v.assign(rd, 0.0);
        v[r1] = e.value;
      }
      for (const auto& [key, v] : slices)
        for (double val : v) rep.tailDeviation = std::max(rep.tailDeviation, std::abs(val - v[0]));
    }
  return rep;
}

SparseOp randomJpGenerator(const FreeProduct& group, std::size_t n, std::size_t p,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pickFactor(0, static_cast<int>(group.factorCount()) - 1);
  const int iota = pickFactor(rng);
  const auto side = buildSideBases(group, n, p, iota);
  std::uniform_int_distribution<std::size_t> pickLeft(0, side.left.size() - 1);
  const std::size_t row = pickLeft(rng);
  const std::size_t col = pickLeft(rng);

  const auto& letters = group.factor(iota).letters();
  std::uniform_int_distribution<std::size_t> pickLetter(0, letters.size() - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const SparseOp translated = compressQ(factorTranslation(group, iota, letters[pickLetter(rng)]));
  const SparseOp unit = rankOne(SparseVector::basis(letters.size(), pickLetter(rng)),
                                SparseVector::basis(letters.size(), pickLetter(rng)));
  const SparseOp mid = translated.scaled(coef(rng)) + unit.scaled(coef(rng));
  return jpGenerator(group, n, p, iota, row, col, mid);
}

}  // namespace fpx
