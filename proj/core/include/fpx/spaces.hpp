#pragma once

// Bases for the truncated spaces l2(W_N), the tensor picture of l2(W_n), the
// side spaces L_{p,i} and R_{p,i}, and the position embeddings V_{p,i}.

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fpx/sparse_op.hpp"
#include "fpx/words.hpp"

namespace fpx {

/// Ordered basis of l2(W_N): every reduced word of block length <= N in
/// graded order, so words[0] = e and W_n is a prefix for every n <= N.
class WindowBasis {
 public:
  WindowBasis(FreeProduct group, std::size_t cutoff);

  const FreeProduct& group() const { return group_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t dimension() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(std::size_t i) const { return words_[i]; }

  std::optional<std::size_t> find(const Word& w) const;
  /// Throws InvalidWord when w is not in the window.
  std::size_t indexOf(const Word& w) const;

  /// |W_n| for n <= cutoff; the leading block of this basis.
  std::size_t prefixDimension(std::size_t n) const;
  /// The basis of W_n as its own object (n <= cutoff).
  WindowBasis truncated(std::size_t n) const;

 private:
  FreeProduct group_;
  std::size_t cutoff_;
  std::vector<Word> words_;
  std::vector<std::size_t> lengthEnd_;  // lengthEnd_[k] = |W_k|
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

WindowBasis buildWindowBasis(const FreeProduct& group, std::size_t cutoff);

/// Coordinates of a word in the decomposition of l2(W_n) into tensor products
/// l2(G_{i_1}°) x ... x l2(G_{i_k}°) indexed by alternating factor paths.
struct TensorAddress {
  std::vector<int> path;  // factor ids
  std::vector<int> legs;  // elements

  bool operator==(const TensorAddress&) const = default;
};

TensorAddress tensorAddress(const Word& w);
Word wordFromAddress(const TensorAddress& a);

/// Length cap used for the left side space L_{p,i}. `Full` admits words of
/// length <= n-p; `AsDisplayed` admits length <= n-p-1 for p < n, which drops
/// words whose letter at position p still fits in W_n.
enum class LeftLengthBound { Full, AsDisplayed };

/// Bases of L_{p,i} and R_{p,i}. The vacuum vector is represented by the empty
/// word and always comes first.
struct SideBases {
  std::size_t n = 0;
  std::size_t p = 0;
  int iota = 0;
  LeftLengthBound bound = LeftLengthBound::Full;
  std::vector<Word> left;   // vacuum, then words not ending in factor iota
  std::vector<Word> right;  // vacuum if p == 1, else length p-1 words not beginning in iota

  std::optional<std::size_t> findLeft(const Word& w) const;
  std::optional<std::size_t> findRight(const Word& w) const;
};

SideBases buildSideBases(const FreeProduct& group, std::size_t n, std::size_t p, int iota,
                         LeftLengthBound bound = LeftLengthBound::Full);

/// V_{p,i}: L_{p,i} x l2(G_i°) x R_{p,i} -> l2(W_n), concatenating the three
/// legs. Domain index of (l, x, r) is (l * |X| + x) * |R| + r.
struct PositionEmbedding {
  SideBases side;
  std::vector<int> middle;  // letters of factor iota
  SparseOp isometry;

  std::size_t leftDimension() const { return side.left.size(); }
  std::size_t middleDimension() const { return middle.size(); }
  std::size_t rightDimension() const { return side.right.size(); }
  std::size_t domainDimension() const {
    return leftDimension() * middleDimension() * rightDimension();
  }
  std::size_t domainIndex(std::size_t l, std::size_t x, std::size_t r) const {
    return (l * middleDimension() + x) * rightDimension() + r;
  }
};

/// `windowN` must have cutoff >= n; rows of the result index W_n.
PositionEmbedding buildPositionEmbedding(std::size_t n, std::size_t p, int iota,
                                         const WindowBasis& windowN,
                                         LeftLengthBound bound = LeftLengthBound::Full);

SparseOp buildVpIota(std::size_t n, std::size_t p, int iota, const WindowBasis& windowN,
                     LeftLengthBound bound = LeftLengthBound::Full);

}  // namespace fpx
