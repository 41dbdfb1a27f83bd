#include "fpx/sparse_op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_set>

#include "fpx/errors.hpp"

namespace fpx {

SparseVector SparseVector::basis(std::size_t dim, std::size_t index, double value) {
  SparseVector v;
  v.dim = dim;
  if (index >= dim) throw DimensionMismatch("basis index out of range");
  if (value != 0.0) v.entries.emplace_back(index, value);
  return v;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [i, x] : entries) s += x * x;
  return std::sqrt(s);
}

double SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != entries.end() && it->first == i) ? it->second : 0.0;
}

namespace {

bool colMajorLess(const Entry& a, const Entry& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

}  // namespace

SparseOp SparseOp::fromEntries(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols) throw DimensionMismatch("entry outside operator shape");
  std::sort(entries.begin(), entries.end(), colMajorLess);
  SparseOp op(rows, cols);
  op.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    Entry acc = entries[i];
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].row == acc.row && entries[j].col == acc.col)
      acc.value += entries[j++].value;
    if (acc.value != 0.0) op.entries_.push_back(acc);
    i = j;
  }
  return op;
}

SparseOp SparseOp::identity(std::size_t n) {
  SparseOp op(n, n);
  op.entries_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) op.entries_.push_back({i, i, 1.0});
  return op;
}

std::span<const Entry> SparseOp::column(std::size_t c) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), c,
                             [](const Entry& e, std::size_t k) { return e.col < k; });
  auto hi = lo;
  while (hi != entries_.end() && hi->col == c) ++hi;
  return {lo, hi};
}

double SparseOp::at(std::size_t r, std::size_t c) const {
  for (const auto& e : column(c))
    if (e.row == r) return e.value;
  return 0.0;
}

SparseOp SparseOp::adjoint() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  std::sort(t.begin(), t.end(), colMajorLess);
  SparseOp out(cols_, rows_);
  out.entries_ = std::move(t);
  return out;
}

SparseOp SparseOp::scaled(double s) const {
  if (s == 0.0) return SparseOp(rows_, cols_);
  SparseOp out = *this;
  for (auto& e : out.entries_) e.value *= s;
  return out;
}

SparseOp SparseOp::operator+(const SparseOp& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator sum shape mismatch");
  std::vector<Entry> all(entries_);
  all.insert(all.end(), o.entries_.begin(), o.entries_.end());
  return fromEntries(rows_, cols_, std::move(all));
}

SparseOp SparseOp::operator-(const SparseOp& o) const { return *this + o.scaled(-1.0); }

SparseOp SparseOp::operator*(const SparseOp& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("operator composition shape mismatch");
  SparseOp out(rows_, o.cols_);
  std::vector<std::pair<std::size_t, double>> acc;
  const auto& be = o.entries_;
  for (std::size_t i = 0; i < be.size();) {
    const std::size_t col = be[i].col;
    acc.clear();
    for (; i < be.size() && be[i].col == col; ++i)
      for (const auto& a : column(be[i].row)) acc.emplace_back(a.row, a.value * be[i].value);
    std::sort(acc.begin(), acc.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < acc.size();) {
      double v = 0.0;
      const std::size_t row = acc[k].first;
      for (; k < acc.size() && acc[k].first == row; ++k) v += acc[k].second;
      if (v != 0.0) out.entries_.push_back({row, col, v});
    }
  }
  return out;
}

SparseVector SparseOp::apply(const SparseVector& v) const {
  if (v.dim != cols_) throw DimensionMismatch("vector dimension mismatch");
  std::vector<std::pair<std::size_t, double>> acc;
  for (const auto& [j, x] : v.entries)
    for (const auto& e : column(j)) acc.emplace_back(e.row, e.value * x);
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  out.dim = rows_;
  for (std::size_t k = 0; k < acc.size();) {
    double s = 0.0;
    const std::size_t r = acc[k].first;
    for (; k < acc.size() && acc[k].first == r; ++k) s += acc[k].second;
    if (s != 0.0) out.entries.emplace_back(r, s);
  }
  return out;
}

double SparseOp::maxAbs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

double SparseOp::maxAbsDiff(const SparseOp& o) const { return (*this - o).maxAbs(); }

bool SparseOp::isMonomial() const {
  std::unordered_set<std::size_t> rowsSeen;
  rowsSeen.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && entries_[i].col == entries_[i - 1].col) return false;
    if (!rowsSeen.insert(entries_[i].row).second) return false;
  }
  return true;
}

bool SparseOp::operator==(const SparseOp& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& a = entries_[i];
    const auto& b = o.entries_[i];
    if (a.row != b.row || a.col != b.col || a.value != b.value) return false;
  }
  return true;
}

void writeCoordinateText(std::ostream& os, const SparseOp& op) {
  std::vector<Entry> byRow(op.entries().begin(), op.entries().end());
  std::sort(byRow.begin(), byRow.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  char buf[64];
  for (const auto& e : byRow) {
    std::snprintf(buf, sizeof buf, "%.12g", e.value);
    os << e.row << ' ' << e.col << ' ' << buf << '\n';
  }
}

}  // namespace fpx
