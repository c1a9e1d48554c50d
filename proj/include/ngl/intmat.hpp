#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ngl/core.hpp"

namespace ngl {

using BigInt = boost::multiprecision::cpp_int;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw numerical_error("integer overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw numerical_error("integer overflow");
  return r;
}

inline std::int64_t narrow(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw numerical_error("integer overflow");
  return static_cast<std::int64_t>(v);
}

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols_)
        throw validation_error("ragged matrix rows");
      for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  std::vector<std::int64_t> row(int i) const {
    return {a_.begin() + std::size_t(i) * cols_, a_.begin() + std::size_t(i + 1) * cols_};
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator-() const {
    IntMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    check_same(o);
    IntMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = checked_add(a_[k], o.a_[k]);
    return r;
  }

  IntMatrix operator-(const IntMatrix& o) const { return *this + (-o); }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw validation_error("matrix product dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        std::int64_t a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          r(i, j) = checked_add(r(i, j), checked_mul(a, o(k, j)));
      }
    return r;
  }

  bool is_zero() const {
    for (auto x : a_)
      if (x != 0) return false;
    return true;
  }

  IntMatrix select_rows(const std::vector<int>& idx) const {
    IntMatrix r(static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < r.rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (int i = 0; i < m.rows_; ++i) {
      for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "\n";
    }
    return os;
  }

 private:
  void check_same(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw validation_error("hstack row mismatch");
  IntMatrix r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw validation_error("vstack column mismatch");
  IntMatrix r(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

// Exact rank by fraction-free (Bareiss) elimination.
inline int rank(const IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  int r = 0;
  BigInt prev = 1;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < m.rows(); ++i) {
      for (int j = c + 1; j < m.cols(); ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

// Greedy maximal independent subset of rows, scanning in the given order.
// Returned indices are sorted.
inline std::vector<int> independent_rows(const IntMatrix& m, const std::vector<int>& order) {
  std::vector<int> keep;
  for (int i : order) {
    auto trial = keep;
    trial.push_back(i);
    if (rank(m.select_rows(trial)) == static_cast<int>(trial.size())) keep = std::move(trial);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

// Integer solution of m x = b, via unimodular column operations bringing m to
// lower-triangular Hermite form.
inline std::optional<std::vector<std::int64_t>> solve_integer(const IntMatrix& m,
                                                              const std::vector<std::int64_t>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw validation_error("rhs length mismatch");
  const int R = m.rows(), C = m.cols();
  std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C));
  std::vector<std::vector<BigInt>> u(C, std::vector<BigInt>(C, 0));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) a[i][j] = m(i, j);
  for (int j = 0; j < C; ++j) u[j][j] = 1;
  auto colop = [&](int p, int q, const BigInt& x, const BigInt& y, const BigInt& z, const BigInt& w) {
    // (col p, col q) <- (x col p + y col q, z col p + w col q)
    for (int i = 0; i < R; ++i) {
      BigInt cp = a[i][p], cq = a[i][q];
      a[i][p] = x * cp + y * cq;
      a[i][q] = z * cp + w * cq;
    }
    for (int i = 0; i < C; ++i) {
      BigInt cp = u[i][p], cq = u[i][q];
      u[i][p] = x * cp + y * cq;
      u[i][q] = z * cp + w * cq;
    }
  };
  std::vector<int> pivot_col(R, -1);
  int p = 0;
  for (int i = 0; i < R && p < C; ++i) {
    for (int j = p + 1; j < C; ++j) {
      if (a[i][j] == 0) continue;
      BigInt x0 = a[i][p], y0 = a[i][j];
      // extended gcd
      BigInt old_r = x0, r = y0, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
      }
      BigInt g = old_r;
      colop(p, j, old_s, old_t, -y0 / g, x0 / g);
    }
    if (a[i][p] == 0) continue;
    if (a[i][p] < 0) {
      for (int k = 0; k < R; ++k) a[k][p] = -a[k][p];
      for (int k = 0; k < C; ++k) u[k][p] = -u[k][p];
    }
    // reduce entries left of the pivot modulo the pivot to keep numbers small
    for (int k = 0; k < p; ++k) {
      BigInt q = a[i][k] / a[i][p];
      if (a[i][k] - q * a[i][p] < 0) q -= 1;
      if (q != 0) colop(k, p, 1, -q, 0, 1);
    }
    pivot_col[i] = p;
    ++p;
  }
  std::vector<BigInt> y(C, 0);
  for (int i = 0; i < R; ++i) {
    BigInt res = b[i];
    for (int k = 0; k < C; ++k)
      if (k != pivot_col[i]) res -= a[i][k] * y[k];
    if (pivot_col[i] < 0) {
      if (res != 0) return std::nullopt;
      continue;
    }
    const BigInt& d = a[i][pivot_col[i]];
    if (res % d != 0) return std::nullopt;
    y[pivot_col[i]] = res / d;
  }
  std::vector<std::int64_t> x(C);
  for (int i = 0; i < C; ++i) {
    BigInt v = 0;
    for (int j = 0; j < C; ++j) v += u[i][j] * y[j];
    x[i] = narrow(v);
  }
  return x;
}

}  // namespace ngl
