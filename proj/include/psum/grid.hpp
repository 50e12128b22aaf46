#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "psum/errors.hpp"

namespace psum {

// Dense m-by-n grid over the support {0..m-1} x {0..n-1}. The first
// index x selects the row, the second index y the column. Storage is
// column-major, so the flat position of (x, y) is y*m + x, the same
// order the vectorized form uses.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
      throw Error(Errc::RaggedInput, "grid needs at least one row and one column");
    }
  }

  // From row-major nested vectors (the JSON "entries" layout).
  explicit Grid(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows.front().empty()) {
      throw Error(Errc::RaggedInput, "grid needs at least one row and one column");
    }
    rows_ = rows.size();
    cols_ = rows.front().size();
    data_.resize(rows_ * cols_);
    for (std::size_t x = 0; x < rows_; ++x) {
      if (rows[x].size() != cols_) {
        throw Error(Errc::RaggedInput,
                    "row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) +
                        " entries, expected " + std::to_string(cols_));
      }
      for (std::size_t y = 0; y < cols_; ++y) (*this)(x, y) = rows[x][y];
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(std::size_t x, std::size_t y) { return data_[y * rows_ + x]; }
  const T& operator()(std::size_t x, std::size_t y) const { return data_[y * rows_ + x]; }

  // Column-major flat view; index of (x, y) is y*rows + x.
  const std::vector<T>& data() const noexcept { return data_; }
  std::vector<T>& data() noexcept { return data_; }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_, std::vector<T>(cols_));
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y) out[x][y] = (*this)(x, y);
    return out;
  }

  bool same_shape(const Grid& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename U, typename T, typename F>
Grid<U> map_grid(const Grid<T>& in, F&& f) {
  Grid<U> out(in.rows(), in.cols());
  for (std::size_t i = 0; i < in.size(); ++i) out.data()[i] = f(in.data()[i]);
  return out;
}

}  // namespace psum
