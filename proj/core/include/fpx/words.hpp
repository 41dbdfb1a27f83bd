#pragma once

// Free-product arithmetic: factors, letters, reduced words, and the
// concatenate-and-reduce product.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpx {

enum class FactorKind { Cyclic, FiniteTable, IntegerWindow };

/// One free factor G_i.
///
/// Elements are plain integers. For the cyclic group of order d they are the
/// residues 0..d-1 with identity 0; for a finite table they are row indices of
/// the product table; for an integer window they are the integers themselves,
/// with identity 0 and letters the nonzero z with |z| <= bound.
class FactorSpec {
 public:
  static FactorSpec cyclic(int order, std::string label = {});
  /// Validates the group axioms; throws InvalidFactor when they fail.
  static FactorSpec finiteTable(std::vector<std::vector<int>> table, int identity,
                                std::string label = {});
  static FactorSpec integerWindow(int bound, std::string label = {});

  FactorKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool isFinite() const { return kind_ != FactorKind::IntegerWindow; }
  /// Group order for finite kinds, 0 for an integer window.
  int order() const { return order_; }
  /// Letter bound B for an integer window, 0 otherwise.
  int bound() const { return bound_; }
  int identity() const { return identity_; }

  /// Nonidentity elements in ascending order.
  const std::vector<int>& letters() const { return letters_; }
  bool isLetter(int element) const;
  bool isElement(int element) const;

  /// Product a*b; nullopt when an integer-window sum leaves [-B, B].
  std::optional<int> product(int a, int b) const;
  int inverse(int a) const;

  bool operator==(const FactorSpec&) const = default;

 private:
  FactorSpec() = default;

  FactorKind kind_ = FactorKind::Cyclic;
  std::string label_;
  int order_ = 0;
  int bound_ = 0;
  int identity_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  std::vector<int> letters_;
};

struct Letter {
  int factor = 0;
  int element = 0;

  auto operator<=>(const Letter&) const = default;
};

/// A reduced alternating word. The empty word is the identity e.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const Letter& operator[](std::size_t i) const { return letters[i]; }
  const Letter& front() const { return letters.front(); }
  const Letter& back() const { return letters.back(); }

  /// g_1...g_j
  Word prefix(std::size_t j) const;
  /// g_{j+1}...g_l
  Word suffix(std::size_t j) const;

  bool operator==(const Word&) const = default;
  /// Graded order: block length first, then lexicographic on (factor, element).
  std::strong_ordering operator<=>(const Word& other) const;
};

std::size_t blockLength(const Word& w);

/// Concatenation of two words that is already reduced at the seam.
/// Throws InvalidWord if the seam letters share a factor.
Word concatReduced(const Word& a, const Word& b);
Word concatReduced(const Word& a, const Word& b, const Word& c);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// The seven cancellation patterns of a product h*g, labelled by how the
/// boundary of h meets the boundary of g, plus the degenerate argument g = e.
enum class ProductCase {
  Disjoint = 1,             // last factor of h differs from first factor of g
  PartialCancellation = 2,  // 1 <= q < min, next letters in different factors
  LeftAbsorbed = 3,         // h cancels completely into a longer g
  RightAbsorbed = 4,        // g cancels completely into a longer h
  MutualCancellation = 5,   // g = h^{-1}
  Merge = 6,                // no cancellation, boundary letters merge
  CancellationThenMerge = 7,
  IdentityArgument = 0,     // g = e
};

/// 1..7, with IdentityArgument folded into 1.
int caseNumber(ProductCase c);
const char* caseName(ProductCase c);

struct CancellationProfile {
  std::size_t q = 0;
  bool merged = false;
  ProductCase caseLabel = ProductCase::Disjoint;
};

using AliasTable = std::map<std::string, Letter, std::less<>>;

/// The free product of a finite family of factors; factor ids are positions.
class FreeProduct {
 public:
  explicit FreeProduct(std::vector<FactorSpec> factors);

  std::size_t factorCount() const { return factors_.size(); }
  const FactorSpec& factor(int id) const;
  const std::vector<FactorSpec>& factors() const { return factors_; }
  /// All letters ordered by (factor, element).
  std::vector<Letter> allLetters() const;

  /// Throws FactorMismatch for unknown factors or elements and InvalidWord for
  /// words that are not reduced.
  void validate(const Word& w) const;
  bool isValid(const Word& w) const noexcept;

  Word multiply(const Word& a, const Word& b) const;
  Word inverse(const Word& w) const;
  CancellationProfile cancellationProfile(const Word& h, const Word& g) const;

  /// All reduced words of block length <= n in graded order.
  std::vector<Word> enumerateWindow(std::size_t n) const;
  /// All reduced words of block length exactly k in graded order.
  std::vector<Word> wordsOfLength(std::size_t k) const;

  /// Parses whitespace-separated tokens `<factor>:<element>` or alias names.
  /// The empty literal is e.
  Word parseWord(std::string_view literal, const AliasTable& aliases = {}) const;
  std::string formatWord(const Word& w) const;

  bool operator==(const FreeProduct&) const = default;

 private:
  std::vector<FactorSpec> factors_;
};

}  // namespace fpx
