#include "fpx/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "fpx/errors.hpp"

namespace fpx {

// ---------------------------------------------------------------- FactorSpec

FactorSpec FactorSpec::cyclic(int order, std::string label) {
  if (order < 2) throw InvalidFactor("cyclic factor needs order >= 2");
  FactorSpec f;
  f.kind_ = FactorKind::Cyclic;
  f.label_ = label.empty() ? "Z" + std::to_string(order) : std::move(label);
  f.order_ = order;
  f.identity_ = 0;
  for (int a = 1; a < order; ++a) f.letters_.push_back(a);
  return f;
}

FactorSpec FactorSpec::finiteTable(std::vector<std::vector<int>> table, int identity,
                                   std::string label) {
  const int d = static_cast<int>(table.size());
  if (d < 2) throw InvalidFactor("table factor needs at least two elements");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != d) throw InvalidFactor("product table is not square");
    for (int v : row)
      if (v < 0 || v >= d) throw InvalidFactor("product table entry out of range");
  }
  if (identity < 0 || identity >= d) throw InvalidFactor("identity index out of range");
  for (int a = 0; a < d; ++a)
    if (table[identity][a] != a || table[a][identity] != a)
      throw InvalidFactor("declared identity is not a two-sided identity");
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InvalidFactor("product table is not associative");

  FactorSpec f;
  f.kind_ = FactorKind::FiniteTable;
  f.label_ = label.empty() ? "T" + std::to_string(d) : std::move(label);
  f.order_ = d;
  f.identity_ = identity;
  f.inverses_.assign(d, -1);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b)
      if (table[a][b] == identity && table[b][a] == identity) {
        f.inverses_[a] = b;
        break;
      }
    if (f.inverses_[a] < 0) throw InvalidFactor("element without inverse in product table");
  }
  for (int a = 0; a < d; ++a)
    if (a != identity) f.letters_.push_back(a);
  f.table_ = std::move(table);
  return f;
}

FactorSpec FactorSpec::integerWindow(int bound, std::string label) {
  if (bound < 1) throw InvalidFactor("integer window needs bound >= 1");
  FactorSpec f;
  f.kind_ = FactorKind::IntegerWindow;
  f.label_ = label.empty() ? "Z[" + std::to_string(bound) + "]" : std::move(label);
  f.bound_ = bound;
  f.identity_ = 0;
  for (int z = -bound; z <= bound; ++z)
    if (z != 0) f.letters_.push_back(z);
  return f;
}

bool FactorSpec::isElement(int element) const {
  if (kind_ == FactorKind::IntegerWindow) return std::abs(element) <= bound_;
  return element >= 0 && element < order_;
}

bool FactorSpec::isLetter(int element) const {
  return isElement(element) && element != identity_;
}

std::optional<int> FactorSpec::product(int a, int b) const {
  switch (kind_) {
    case FactorKind::Cyclic:
      return (a + b) % order_;
    case FactorKind::FiniteTable:
      return table_[a][b];
    case FactorKind::IntegerWindow: {
      const int s = a + b;
      if (std::abs(s) > bound_) return std::nullopt;
      return s;
    }
  }
  return std::nullopt;
}

int FactorSpec::inverse(int a) const {
  switch (kind_) {
    case FactorKind::Cyclic:
      return (order_ - a) % order_;
    case FactorKind::FiniteTable:
      return inverses_[a];
    case FactorKind::IntegerWindow:
      return -a;
  }
  return a;
}

// ---------------------------------------------------------------------- Word

Word Word::prefix(std::size_t j) const {
  return Word(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(j)));
}

Word Word::suffix(std::size_t j) const {
  return Word(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(j), letters.end()));
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters.size() <=> other.letters.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(letters.begin(), letters.end(),
                                                other.letters.begin(), other.letters.end());
}

std::size_t blockLength(const Word& w) { return w.size(); }

Word concatReduced(const Word& a, const Word& b) {
  if (!a.empty() && !b.empty() && a.back().factor == b.front().factor)
    throw InvalidWord("concatenation is not reduced at the seam");
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

Word concatReduced(const Word& a, const Word& b, const Word& c) {
  return concatReduced(concatReduced(a, b), c);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (const auto& l : w.letters) {
    const auto v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.factor)) << 32) ^
                   static_cast<std::uint32_t>(l.element);
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int caseNumber(ProductCase c) {
  return c == ProductCase::IdentityArgument ? 1 : static_cast<int>(c);
}

const char* caseName(ProductCase c) {
  switch (c) {
    case ProductCase::Disjoint: return "disjoint";
    case ProductCase::PartialCancellation: return "partial-cancellation";
    case ProductCase::LeftAbsorbed: return "left-absorbed";
    case ProductCase::RightAbsorbed: return "right-absorbed";
    case ProductCase::MutualCancellation: return "mutual-cancellation";
    case ProductCase::Merge: return "merge";
    case ProductCase::CancellationThenMerge: return "cancellation-then-merge";
    case ProductCase::IdentityArgument: return "identity-argument";
  }
  return "?";
}

// --------------------------------------------------------------- FreeProduct

FreeProduct::FreeProduct(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidFactor("a free product needs at least one factor");
}

const FactorSpec& FreeProduct::factor(int id) const {
  if (id < 0 || id >= static_cast<int>(factors_.size()))
    throw FactorMismatch("unknown factor id " + std::to_string(id));
  return factors_[static_cast<std::size_t>(id)];
}

std::vector<Letter> FreeProduct::allLetters() const {
  std::vector<Letter> out;
  for (int f = 0; f < static_cast<int>(factors_.size()); ++f)
    for (int e : factors_[static_cast<std::size_t>(f)].letters()) out.push_back({f, e});
  return out;
}

void FreeProduct::validate(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& l = w[i];
    if (!factor(l.factor).isLetter(l.element))
      throw FactorMismatch("element " + std::to_string(l.element) + " is not a letter of factor " +
                           std::to_string(l.factor));
    if (i > 0 && w[i - 1].factor == l.factor)
      throw InvalidWord("adjacent letters share factor " + std::to_string(l.factor));
  }
}

bool FreeProduct::isValid(const Word& w) const noexcept {
  try {
    validate(w);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Word FreeProduct::multiply(const Word& a, const Word& b) const {
  validate(a);
  validate(b);
  std::vector<Letter> out = a.letters;
  for (const auto& l : b.letters) {
    if (!out.empty() && out.back().factor == l.factor) {
      const auto& f = factors_[static_cast<std::size_t>(l.factor)];
      const auto p = f.product(out.back().element, l.element);
      if (!p)
        throw WindowOverflow("merge " + std::to_string(out.back().element) + "+" +
                             std::to_string(l.element) + " leaves the window of factor " +
                             std::to_string(l.factor));
      if (*p == f.identity())
        out.pop_back();
      else
        out.back().element = *p;
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word FreeProduct::inverse(const Word& w) const {
  validate(w);
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.push_back({it->factor, factors_[static_cast<std::size_t>(it->factor)].inverse(it->element)});
  return Word(std::move(out));
}

CancellationProfile FreeProduct::cancellationProfile(const Word& h, const Word& g) const {
  validate(h);
  validate(g);
  CancellationProfile prof;
  const std::size_t lh = h.size();
  const std::size_t lg = g.size();
  if (lh == 0) return prof;
  if (lg == 0) {
    prof.caseLabel = ProductCase::IdentityArgument;
    return prof;
  }
  const std::size_t lim = std::min(lh, lg);
  std::size_t q = 0;
  while (q < lim) {
    const auto& x = h[lh - 1 - q];
    const auto& y = g[q];
    if (x.factor != y.factor) break;
    if (factors_[static_cast<std::size_t>(x.factor)].inverse(x.element) != y.element) break;
    ++q;
  }
  prof.q = q;
  prof.merged = q < lim && h[lh - 1 - q].factor == g[q].factor;

  if (q == 0)
    prof.caseLabel = prof.merged ? ProductCase::Merge : ProductCase::Disjoint;
  else if (q < lim)
    prof.caseLabel = prof.merged ? ProductCase::CancellationThenMerge : ProductCase::PartialCancellation;
  else if (lh < lg)
    prof.caseLabel = ProductCase::LeftAbsorbed;
  else if (lh > lg)
    prof.caseLabel = ProductCase::RightAbsorbed;
  else
    prof.caseLabel = ProductCase::MutualCancellation;
  return prof;
}

std::vector<Word> FreeProduct::wordsOfLength(std::size_t k) const {
  std::vector<Word> level{Word{}};
  const auto letters = allLetters();
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (const auto& l : letters) {
        if (!w.empty() && w.back().factor == l.factor) continue;
        Word x = w;
        x.letters.push_back(l);
        next.push_back(std::move(x));
      }
    level = std::move(next);
  }
  return level;
}

std::vector<Word> FreeProduct::enumerateWindow(std::size_t n) const {
  // Extending a lexicographically sorted level letter by letter, in letter
  // order, yields the next level sorted.
  std::vector<Word> out{Word{}};
  std::size_t levelBegin = 0;
  const auto letters = allLetters();
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t levelEnd = out.size();
    for (std::size_t i = levelBegin; i < levelEnd; ++i)
      for (const auto& l : letters) {
        if (!out[i].empty() && out[i].back().factor == l.factor) continue;
        Word x = out[i];
        x.letters.push_back(l);
        out.push_back(std::move(x));
      }
    levelBegin = levelEnd;
    if (levelBegin == out.size()) break;
  }
  return out;
}

namespace {

int parseInt(std::string_view s, std::string_view token) {
  int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw InvalidWord("malformed token '" + std::string(token) + "'");
  return v;
}

}  // namespace

Word FreeProduct::parseWord(std::string_view literal, const AliasTable& aliases) const {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < literal.size()) {
    while (i < literal.size() && std::isspace(static_cast<unsigned char>(literal[i]))) ++i;
    if (i >= literal.size()) break;
    std::size_t j = i;
    while (j < literal.size() && !std::isspace(static_cast<unsigned char>(literal[j]))) ++j;
    const std::string_view token = literal.substr(i, j - i);
    i = j;

    if (auto it = aliases.find(token); it != aliases.end()) {
      out.push_back(it->second);
      continue;
    }
    const auto colon = token.find(':');
    if (colon == std::string_view::npos)
      throw InvalidWord("unknown token '" + std::string(token) + "'");
    out.push_back({parseInt(token.substr(0, colon), token), parseInt(token.substr(colon + 1), token)});
  }
  Word w(std::move(out));
  validate(w);
  return w;
}

std::string FreeProduct::formatWord(const Word& w) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i].factor << ':' << w[i].element;
  }
  return os.str();
}

}  // namespace fpx
