#include "fpx/spaces.hpp"

#include <algorithm>

#include "fpx/errors.hpp"

namespace fpx {

WindowBasis::WindowBasis(FreeProduct group, std::size_t cutoff)
    : group_(std::move(group)), cutoff_(cutoff), words_(group_.enumerateWindow(cutoff)) {
  lengthEnd_.assign(cutoff_ + 1, 0);
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], i);
    lengthEnd_[words_[i].size()] = i + 1;
  }
  // Lengths with no words (single-factor products) inherit the previous end.
  for (std::size_t k = 1; k <= cutoff_; ++k) lengthEnd_[k] = std::max(lengthEnd_[k], lengthEnd_[k - 1]);
}

std::optional<std::size_t> WindowBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WindowBasis::indexOf(const Word& w) const {
  if (auto i = find(w)) return *i;
  throw InvalidWord("word '" + group_.formatWord(w) + "' is not in the window basis");
}

std::size_t WindowBasis::prefixDimension(std::size_t n) const {
  if (n > cutoff_) throw CutoffTooLarge("requested |W_n| beyond the basis cutoff");
  return lengthEnd_[n];
}

WindowBasis WindowBasis::truncated(std::size_t n) const {
  if (n > cutoff_) throw CutoffTooLarge("cannot truncate a basis to a larger cutoff");
  return WindowBasis(group_, n);
}

WindowBasis buildWindowBasis(const FreeProduct& group, std::size_t cutoff) {
  return WindowBasis(group, cutoff);
}

TensorAddress tensorAddress(const Word& w) {
  TensorAddress a;
  a.path.reserve(w.size());
  a.legs.reserve(w.size());
  for (const auto& l : w.letters) {
    a.path.push_back(l.factor);
    a.legs.push_back(l.element);
  }
  return a;
}

Word wordFromAddress(const TensorAddress& a) {
  if (a.path.size() != a.legs.size()) throw InvalidWord("tensor address legs do not match path");
  std::vector<Letter> ls;
  ls.reserve(a.path.size());
  for (std::size_t i = 0; i < a.path.size(); ++i) ls.push_back({a.path[i], a.legs[i]});
  return Word(std::move(ls));
}

namespace {

std::optional<std::size_t> findSorted(const std::vector<Word>& ws, const Word& w) {
  // Vacuum first, then graded order: the whole list is sorted.
  auto it = std::lower_bound(ws.begin(), ws.end(), w);
  if (it == ws.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - ws.begin());
}

}  // namespace

std::optional<std::size_t> SideBases::findLeft(const Word& w) const { return findSorted(left, w); }
std::optional<std::size_t> SideBases::findRight(const Word& w) const { return findSorted(right, w); }

SideBases buildSideBases(const FreeProduct& group, std::size_t n, std::size_t p, int iota,
                         LeftLengthBound bound) {
  if (p < 1 || p > n) throw InvalidPosition("position p must satisfy 1 <= p <= n");
  group.factor(iota);

  SideBases s;
  s.n = n;
  s.p = p;
  s.iota = iota;
  s.bound = bound;

  std::size_t kmax = n - p;
  if (bound == LeftLengthBound::AsDisplayed && p < n) kmax = n - p - 1;
  for (auto& w : group.enumerateWindow(kmax))
    if (w.empty() || w.back().factor != iota) s.left.push_back(std::move(w));

  if (p == 1) {
    s.right.push_back(Word{});
  } else {
    for (auto& w : group.wordsOfLength(p - 1))
      if (w.front().factor != iota) s.right.push_back(std::move(w));
  }
  return s;
}

PositionEmbedding buildPositionEmbedding(std::size_t n, std::size_t p, int iota,
                                         const WindowBasis& windowN, LeftLengthBound bound) {
  if (p < 1 || p > n) throw InvalidPosition("position p must satisfy 1 <= p <= n");
  if (windowN.cutoff() < n) throw CutoffTooSmall("window basis is smaller than W_n");
  const auto& group = windowN.group();

  PositionEmbedding emb;
  emb.side = buildSideBases(group, n, p, iota, bound);
  emb.middle = group.factor(iota).letters();

  const std::size_t rows = windowN.prefixDimension(n);
  std::vector<Entry> entries;
  entries.reserve(emb.domainDimension());
  for (std::size_t li = 0; li < emb.leftDimension(); ++li)
    for (std::size_t xi = 0; xi < emb.middleDimension(); ++xi)
      for (std::size_t ri = 0; ri < emb.rightDimension(); ++ri) {
        const Word mid({Letter{iota, emb.middle[xi]}});
        const Word w = concatReduced(emb.side.left[li], mid, emb.side.right[ri]);
        entries.push_back({windowN.indexOf(w), emb.domainIndex(li, xi, ri), 1.0});
      }
  emb.isometry = SparseOp::fromEntries(rows, emb.domainDimension(), std::move(entries));
  return emb;
}

SparseOp buildVpIota(std::size_t n, std::size_t p, int iota, const WindowBasis& windowN,
                     LeftLengthBound bound) {
  return buildPositionEmbedding(n, p, iota, windowN, bound).isometry;
}

}  // namespace fpx
