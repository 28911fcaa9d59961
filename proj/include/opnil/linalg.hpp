#ifndef OPNIL_LINALG_HPP
#define OPNIL_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "opnil/errors.hpp"
#include "opnil/rational.hpp"

namespace opnil {

// Sparse row over exact rationals: (column, coefficient) pairs sorted by
// column, no zero coefficients.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

inline SparseRow row_axpy(const SparseRow& r, const Rational& c, const SparseRow& p) {
  // r + c * p, merged.
  SparseRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, c * p[j].second);
      ++j;
    } else {
      Rational v = r[i].second + c * p[j].second;
      if (!is_zero(v)) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline void row_scale(SparseRow& r, const Rational& c) {
  for (auto& [col, v] : r) v *= c;
}

// Reduced row echelon form of the span of `rows`, maintained incrementally.
// The RREF of a row space is unique for a given column order, so the result
// does not depend on insertion order.
class EchelonForm {
public:
  EchelonForm() = default;

  explicit EchelonForm(std::vector<SparseRow> rows) {
    for (auto& r : rows) insert(std::move(r));
  }

  // Eliminate all pivot columns from r.
  SparseRow residual(SparseRow r) const {
    std::size_t scan = 0;
    while (scan < r.size()) {
      auto it = pivot_index_.size() > r[scan].first ? pivot_index_[r[scan].first] : kNoPivot;
      if (it == kNoPivot) {
        ++scan;
        continue;
      }
      Rational c = -r[scan].second;
      r = row_axpy(r, c, rows_[it]);
      // Columns before scan are pivot-free already; the eliminated column is
      // gone, so scanning resumes at the same index.
    }
    return r;
  }

  // Returns true if the row added rank.
  bool insert(SparseRow r) {
    r = residual(std::move(r));
    if (r.empty()) return false;
    Rational inv = 1 / r[0].second;
    row_scale(r, inv);
    std::size_t col = r[0].first;
    // Back-substitute the new pivot into existing rows.
    for (auto& row : rows_) {
      for (const auto& [c0, v0] : row) {
        if (c0 == col) {
          row = row_axpy(row, -v0, r);
          break;
        }
        if (c0 > col) break;
      }
    }
    if (pivot_index_.size() <= col) pivot_index_.resize(col + 1, kNoPivot);
    pivot_index_[col] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const SparseRow& r) const { return residual(r).empty(); }

  std::size_t rank() const { return rows_.size(); }

  // Rows sorted by pivot column.
  std::vector<SparseRow> reduced_rows() const {
    std::vector<SparseRow> out = rows_;
    std::sort(out.begin(), out.end(),
              [](const SparseRow& a, const SparseRow& b) { return a[0].first < b[0].first; });
    return out;
  }

  std::size_t nonzero_entries() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

private:
  static constexpr std::size_t kNoPivot = static_cast<std::size_t>(-1);
  std::vector<SparseRow> rows_;          // monic at pivot, mutually reduced
  std::vector<std::size_t> pivot_index_; // column -> row position
};

} // namespace opnil

#endif
