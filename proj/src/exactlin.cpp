#include "superjordan/exactlin.hpp"

#include <cassert>
#include <sstream>

namespace sj {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = RatFunc(1);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_);
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      RatFunc acc;
      for (int k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
        acc = acc + at(i, k) * o.at(k, j);
      }
      r.at(i, j) = acc;
    }
  return r;
}

std::vector<RatFunc> Mat::apply(const std::vector<RatFunc>& v) const {
  assert((int)v.size() == cols_);
  std::vector<RatFunc> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    RatFunc acc;
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero() || v[k].is_zero()) continue;
      acc = acc + at(i, k) * v[k];
    }
    out[i] = acc;
  }
  return out;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (!(e_[k] == o.e_[k])) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
// Pivots are chosen by lowest expression weight to limit swell.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int best = -1;
    long best_w = 0;
    for (int i = r; i < m.rows(); ++i) {
      if (m.at(i, c).is_zero()) continue;
      long w = m.at(i, c).weight();
      if (best < 0 || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(best, j));
    RatFunc inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j)
      if (!m.at(r, j).is_zero()) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      RatFunc f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) {
        if (m.at(r, j).is_zero()) continue;
        m.at(i, j) = m.at(i, j) - f * m.at(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<RatFunc>> kernel_basis(const Mat& m_in) {
  Mat m = m_in;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<RatFunc>> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<RatFunc> v(m.cols());
    v[c] = RatFunc(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr) {
      v[pivots[pr]] = -m.at((int)pr, c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(const Mat& m_in) {
  Mat m = m_in;
  return (int)rref(m).size();
}

std::optional<std::vector<RatFunc>> solve(const Mat& m, const std::vector<RatFunc>& b) {
  assert((int)b.size() == m.rows());
  Mat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  for (int c : pivots)
    if (c == m.cols()) return std::nullopt;  // row [0 ... 0 | 1]
  std::vector<RatFunc> x(m.cols());
  for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at((int)pr, m.cols());
  return x;
}

Mat invert(const Mat& m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = RatFunc(1);
  }
  std::vector<int> pivots = rref(aug);
  if ((int)pivots.size() < n || pivots[n - 1] >= n) throw SingularMatrix();
  for (int k = 0; k < n; ++k)
    if (pivots[k] != k) throw SingularMatrix();
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

RatFunc det(const Mat& m_in) {
  assert(m_in.rows() == m_in.cols());
  Mat m = m_in;
  int n = m.rows();
  RatFunc d(1);
  for (int c = 0; c < n; ++c) {
    int best = -1;
    long best_w = 0;
    for (int i = c; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      long w = m.at(i, c).weight();
      if (best < 0 || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best < 0) return RatFunc();
    if (best != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(c, j), m.at(best, j));
      d = -d;
    }
    d = d * m.at(c, c);
    RatFunc inv = m.at(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      RatFunc f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) {
        if (m.at(c, j).is_zero()) continue;
        m.at(i, j) = m.at(i, j) - f * m.at(c, j);
      }
    }
  }
  return d;
}

}  // namespace sj
