#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace fpx {

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Sparse vector as sorted (index, value) pairs.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, double>> entries;

  static SparseVector basis(std::size_t dim, std::size_t index, double value = 1.0);
  double norm() const;
  double at(std::size_t i) const;
};

/// A real linear operator held as a canonical coordinate list: entries sorted
/// by (col, row), duplicates summed, exact zeros dropped.
///
/// Indices are 64-bit, so tensor-product bases far larger than any dense
/// allocation are representable as long as the entry count stays modest.
class SparseOp {
 public:
  SparseOp() = default;
  SparseOp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseOp fromEntries(std::size_t rows, std::size_t cols, std::vector<Entry> entries);
  static SparseOp identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool isZero() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  std::span<const Entry> column(std::size_t c) const;
  double at(std::size_t r, std::size_t c) const;

  SparseOp adjoint() const;
  SparseOp scaled(double s) const;
  SparseOp operator+(const SparseOp& o) const;
  SparseOp operator-(const SparseOp& o) const;
  /// Composition: (*this) * o.
  SparseOp operator*(const SparseOp& o) const;
  SparseVector apply(const SparseVector& v) const;

  double maxAbs() const;
  double maxAbsDiff(const SparseOp& o) const;

  /// Each column has at most one nonzero and each row at most one nonzero.
  bool isMonomial() const;
  /// Keeps only entries whose column index satisfies pred.
  template <class Pred>
  SparseOp restrictColumns(Pred pred) const {
    SparseOp out(rows_, cols_);
    for (const auto& e : entries_)
      if (pred(e.col)) out.entries_.push_back(e);
    return out;
  }

  /// Exact structural equality.
  bool operator==(const SparseOp&) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Coordinate text dump: one `row col value` line per entry, sorted by
/// (row, col), values rounded to 12 significant digits.
void writeCoordinateText(std::ostream& os, const SparseOp& op);

}  // namespace fpx
