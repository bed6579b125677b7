#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "shs/error.hpp"

namespace shs::stats {

/// Dense row-major matrix of observations (rows) by variables (columns).
class DataMatrix {
 public:
  DataMatrix() = default;
  DataMatrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  DataMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    cells_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DomainError("ragged matrix literal");
      cells_.insert(cells_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<double> row_sums() const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
    }
    return out;
  }

  DataMatrix without_column(std::size_t drop) const {
    DataMatrix out(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::size_t k = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c != drop) out(r, k++) = (*this)(r, c);
      }
    }
    return out;
  }

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

}  // namespace shs::stats
