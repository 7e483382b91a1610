#pragma once

#include <map>
#include <vector>

#include "nops/polynomial.hpp"

namespace nops {

/// Dense row-major matrix over a field K.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<K>& row) {
    if (row.size() != cols_) throw Error("row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

/// In-place reduced row echelon form; returns pivot column per pivot row.
/// Pivots are taken left to right, first nonzero row wins.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && coeff_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    K inv = K(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!coeff_zero(a(r, j))) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || coeff_zero(a(i, c))) continue;
      K f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!coeff_zero(a(r, j))) a(i, j) = a(i, j) - f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> a) {
  return rref(a).size();
}

/// Basis of the right kernel {v : A v = 0}; one vector per free column with a
/// 1 in that column, in column order.
template <class K>
std::vector<std::vector<K>> kernel(Matrix<K> a) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(a.cols(), K(0));
    v[free] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Sparse vector keyed by an ordered index.
template <class K, class Key>
using SparseVector = std::map<Key, K>;

template <class K, class Key>
void axpy(SparseVector<K, Key>& y, const K& a, const SparseVector<K, Key>& x) {
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, a * v);
    if (!inserted) {
      it->second += a * v;
      if (coeff_zero(it->second)) y.erase(it);
    }
  }
}

/// Streaming Gaussian elimination that reports linear dependencies.
///
/// Each call to add() supplies the image of one source vector (identified by
/// an index). When the image reduces to zero against the images seen so far,
/// the reducing combination of source indices is returned: it is an element of
/// the kernel of the map.
template <class K, class Key>
class IncrementalKernel {
 public:
  using Image = SparseVector<K, Key>;
  using Combination = std::map<std::size_t, K>;

  std::optional<Combination> add(std::size_t source, Image image) {
    Combination comb{{source, K(1)}};
    auto it = image.begin();
    while (it != image.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Key key = it->first;
      K f = -it->second;
      axpy(image, f, row->second.image);
      axpy(comb, f, row->second.comb);
      it = image.lower_bound(key);
    }
    if (image.empty()) return comb;
    Key pivot = image.begin()->first;
    K inv = K(1) / image.begin()->second;
    for (auto& [k, v] : image) v *= inv;
    for (auto& [k, v] : comb) v *= inv;
    rows_.emplace(pivot, Row{std::move(image), std::move(comb)});
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    Image image;
    Combination comb;
  };
  std::map<Key, Row> rows_;
};

}  // namespace nops
