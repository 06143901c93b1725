#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "dualbraid/golden.hpp"

namespace dualbraid {

/// Dense matrix over Z[phi]; only the handful of sizes that show up here
/// (rank <= 8 blocks, stacked pairs of them).
class GoldenMatrix {
public:
  GoldenMatrix() = default;
  GoldenMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GoldenInt& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const GoldenInt& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  /// Rows of `other` appended below; column counts must match.
  GoldenMatrix stacked_on(const GoldenMatrix& other) const {
    GoldenMatrix r(rows_ + other.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < other.rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = other.at(i, j);
    return r;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<GoldenInt> a_;
};

/// Fraction-free Gaussian elimination (Bareiss). Exact: every division is a
/// division of one minor by another and stays in Z[phi].
inline int bareiss_rank(GoldenMatrix m) {
  int rank = 0;
  GoldenInt denom(1);
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int pivot = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    for (int i = rank + 1; i < m.rows(); ++i) {
      for (int j = c + 1; j < m.cols(); ++j)
        m.at(i, j) = (m.at(i, j) * m.at(rank, c) - m.at(i, c) * m.at(rank, j)).exact_div(denom);
      m.at(i, c) = GoldenInt(0);
    }
    denom = m.at(rank, c);
    ++rank;
  }
  return rank;
}

/// ker(a) included in ker(b), both acting on the same column space.
inline bool kernel_included(const GoldenMatrix& a, const GoldenMatrix& b) {
  return bareiss_rank(a.stacked_on(b)) == bareiss_rank(a);
}

}  // namespace dualbraid
