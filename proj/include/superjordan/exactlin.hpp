// Dense exact linear algebra over the rational-function field.
#ifndef SUPERJORDAN_EXACTLIN_HPP
#define SUPERJORDAN_EXACTLIN_HPP

#include <optional>
#include <vector>

#include "superjordan/scalar.hpp"

namespace sj {

struct SingularMatrix : ScalarError {
  SingularMatrix() : ScalarError("matrix is singular over the function field") {}
};

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RatFunc& at(int r, int c) { return e_[r * cols_ + c]; }
  const RatFunc& at(int r, int c) const { return e_[r * cols_ + c]; }

  Mat operator*(const Mat& o) const;
  std::vector<RatFunc> apply(const std::vector<RatFunc>& v) const;
  Mat transpose() const;
  bool operator==(const Mat& o) const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<RatFunc> e_;
};

// Basis of the right kernel {v : Mv = 0}, echelonized; one vector per free
// column with unit entry at that column.
std::vector<std::vector<RatFunc>> kernel_basis(const Mat& m);

int rank(const Mat& m);

// One particular solution of Mx = b with free coordinates set to zero;
// nullopt when the system is inconsistent.
std::optional<std::vector<RatFunc>> solve(const Mat& m, const std::vector<RatFunc>& b);

Mat invert(const Mat& m);  // throws SingularMatrix

RatFunc det(const Mat& m);

}  // namespace sj

#endif
