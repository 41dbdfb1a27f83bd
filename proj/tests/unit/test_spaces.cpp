#include <gtest/gtest.h>

#include <set>

#include "fpx/errors.hpp"
#include "fpx/spaces.hpp"

using namespace fpx;

namespace {

FreeProduct z2z3() { return FreeProduct({FactorSpec::cyclic(2, "Z2"), FactorSpec::cyclic(3, "Z3")}); }
const AliasTable kAliases{{"a", Letter{0, 1}}, {"b", Letter{1, 1}}};
Word w(const FreeProduct& g, const char* s) { return g.parseWord(s, kAliases); }

std::vector<FreeProduct> families() {
  return {z2z3(), FreeProduct({FactorSpec::cyclic(3), FactorSpec::cyclic(4)}),
          FreeProduct({FactorSpec::cyclic(2), FactorSpec::cyclic(2), FactorSpec::cyclic(3)}),
          FreeProduct({FactorSpec::integerWindow(2), FactorSpec::integerWindow(1)})};
}

/// 1 + sum over alternating factor paths of prod (d_i - 1).
std::size_t pathCount(const FreeProduct& g, std::size_t n) {
  std::vector<std::size_t> endingIn(g.factorCount(), 0);
  std::size_t total = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::size_t> next(g.factorCount(), 0);
    for (std::size_t f = 0; f < g.factorCount(); ++f) {
      std::size_t prev = len == 1 ? 1 : 0;
      for (std::size_t k = 0; k < g.factorCount(); ++k)
        if (k != f) prev += endingIn[k];
      next[f] = prev * g.factor(static_cast<int>(f)).letters().size();
      total += next[f];
    }
    endingIn = next;
  }
  return total;
}

}  // namespace

TEST(WindowBasis, Basics) {
  const auto g = z2z3();
  const WindowBasis b(g, 2);
  EXPECT_EQ(b.dimension(), 8u);
  EXPECT_TRUE(b.word(0).empty());
  for (std::size_t i = 0; i < b.dimension(); ++i) EXPECT_EQ(b.indexOf(b.word(i)), i);
  EXPECT_EQ(WindowBasis(g, 0).dimension(), 1u);
  EXPECT_EQ(b.prefixDimension(1), 4u);
  EXPECT_FALSE(b.find(w(g, "a b a")).has_value());
  EXPECT_THROW(b.indexOf(w(g, "a b a")), InvalidWord);
  const auto t = WindowBasis(g, 5).truncated(2);
  EXPECT_EQ(t.words(), b.words());
}

TEST(WindowBasis, DimensionBookkeeping) {
  for (const auto& g : families())
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(WindowBasis(g, n).dimension(), pathCount(g, n)) << n;
}

TEST(TensorAddress, ExamplesAndRoundTrip) {
  const auto g = z2z3();
  const auto ad = tensorAddress(w(g, "a b"));
  EXPECT_EQ(ad.path, (std::vector<int>{0, 1}));
  EXPECT_EQ(ad.legs, (std::vector<int>{1, 1}));
  EXPECT_TRUE(tensorAddress(Word{}).path.empty());
  for (const auto& x : g.enumerateWindow(4)) EXPECT_EQ(wordFromAddress(tensorAddress(x)), x);
}

TEST(SideBases, Examples) {
  const auto g = z2z3();
  const auto s22 = buildSideBases(g, 2, 2, 0);
  EXPECT_EQ(s22.left, (std::vector<Word>{Word{}}));
  EXPECT_EQ(s22.right, (std::vector<Word>{w(g, "b"), w(g, "1:2")}));
  const auto s22b = buildSideBases(g, 2, 2, 1);
  EXPECT_EQ(s22b.right, (std::vector<Word>{w(g, "a")}));

  const auto s21 = buildSideBases(g, 2, 1, 0);
  EXPECT_EQ(s21.right, (std::vector<Word>{Word{}}));
  EXPECT_EQ(s21.left, (std::vector<Word>{Word{}, w(g, "b"), w(g, "1:2")}));

  const auto s31 = buildSideBases(g, 3, 1, 1);
  std::vector<Word> want{Word{}};
  for (const auto& x : g.enumerateWindow(2))
    if (!x.empty() && x.back().factor != 1) want.push_back(x);
  EXPECT_EQ(s31.left, want);

  EXPECT_THROW(buildSideBases(g, 2, 0, 0), InvalidPosition);
  EXPECT_THROW(buildSideBases(g, 2, 3, 0), InvalidPosition);
}

TEST(SideBases, DisplayedBoundDropsTopLength) {
  const auto g = z2z3();
  const auto full = buildSideBases(g, 3, 1, 0, LeftLengthBound::Full);
  const auto shown = buildSideBases(g, 3, 1, 0, LeftLengthBound::AsDisplayed);
  for (const auto& x : full.left) EXPECT_LE(x.size(), 2u);
  for (const auto& x : shown.left) EXPECT_LE(x.size(), 1u);
  EXPECT_LT(shown.left.size(), full.left.size());
  EXPECT_EQ(buildSideBases(g, 3, 3, 0, LeftLengthBound::AsDisplayed).left.size(), 1u);
}

TEST(SideBases, Invariants) {
  for (const auto& g : families())
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t p = 1; p <= n; ++p)
        for (int iota = 0; iota < static_cast<int>(g.factorCount()); ++iota) {
          const auto s = buildSideBases(g, n, p, iota);
          EXPECT_EQ(std::count(s.left.begin(), s.left.end(), Word{}), 1);
          EXPECT_TRUE(s.left.front().empty());
          for (const auto& l : s.left) {
            EXPECT_LE(l.size(), n - p);
            if (!l.empty()) EXPECT_NE(l.back().factor, iota);
          }
          for (const auto& r : s.right) {
            EXPECT_EQ(r.size(), p - 1);
            if (!r.empty()) EXPECT_NE(r.front().factor, iota);
          }
          for (std::size_t i = 0; i < s.left.size(); ++i) EXPECT_EQ(s.findLeft(s.left[i]), i);
          for (std::size_t i = 0; i < s.right.size(); ++i) EXPECT_EQ(s.findRight(s.right[i]), i);
        }
}

TEST(PositionEmbedding, ConcatenationExamples) {
  const auto g = z2z3();
  const WindowBasis basis(g, 2);
  const auto e = buildPositionEmbedding(2, 1, 0, basis);
  const auto col = [&](std::size_t l, std::size_t x, std::size_t r) { return e.isometry.column(e.domainIndex(l, x, r)); };
  ASSERT_EQ(col(0, 0, 0).size(), 1u);
  EXPECT_EQ(col(0, 0, 0)[0].row, basis.indexOf(w(g, "a")));
  EXPECT_EQ(col(1, 0, 0)[0].row, basis.indexOf(w(g, "b a")));
}

TEST(PositionEmbedding, IsometryOrthogonalRangesAndCover) {
  for (const auto& g : families())
    for (std::size_t n = 1; n <= 5; ++n) {
      const WindowBasis basis(g, n);
      if (basis.dimension() > 3000) continue;
      for (std::size_t p = 1; p <= n; ++p) {
        std::vector<std::size_t> hits(basis.dimension(), 0);
        for (int iota = 0; iota < static_cast<int>(g.factorCount()); ++iota) {
          const auto v = buildVpIota(n, p, iota, basis);
          ASSERT_EQ(v.rows(), basis.dimension());
          ASSERT_EQ(v.adjoint() * v, SparseOp::identity(v.cols()));
          for (const auto& en : v.entries()) {
            ASSERT_EQ(en.value, 1.0);
            const Word& x = basis.word(en.row);
            ASSERT_GE(x.size(), p);
            ASSERT_EQ(x[x.size() - p].factor, iota);
            ++hits[en.row];
          }
        }
        for (std::size_t i = 0; i < basis.dimension(); ++i)
          ASSERT_EQ(hits[i], basis.word(i).size() >= p ? 1u : 0u) << "n=" << n << " p=" << p;
      }
    }
}

TEST(PositionEmbedding, RejectsBadPosition) {
  const auto g = z2z3();
  const WindowBasis basis(g, 2);
  EXPECT_THROW(buildVpIota(2, 0, 0, basis), InvalidPosition);
  EXPECT_THROW(buildVpIota(2, 3, 0, basis), InvalidPosition);
}
