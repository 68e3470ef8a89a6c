// Exact integer and rational scalars, the library-wide error type, and a small
// dense integer matrix.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iwk {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Error carrying a machine-readable code (e.g. "NOT_DOMINANT") next to the
/// human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Least nonnegative residue; `d` must be positive.
inline Int mod_floor(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

/// Floor division for positive `d`.
inline Int div_floor(const Int& a, const Int& d) {
  Int q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) q -= 1;
  return q;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
  const Int num = boost::multiprecision::numerator(v);
  const Int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rat make_rat(const Int& num, const Int& den = 1) { return Rat(num, den); }

inline bool is_integral(const Rat& v) {
  return boost::multiprecision::denominator(v) == 1;
}

inline Int rat_numerator(const Rat& v) { return boost::multiprecision::numerator(v); }

/// Converts a length-like quantity to a machine integer; lengths of elements
/// that could ever be materialised as words fit comfortably.
inline std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw Error("OVERFLOW", "value " + v.str() + " exceeds machine range");
  }
  return v.convert_to<std::int64_t>();
}

template <typename T>
std::string join(const std::vector<T>& xs, const std::string& sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_same_v<T, Int> || std::is_same_v<T, Rat>) {
      os << to_string(xs[i]);
    } else {
      os << xs[i];
    }
  }
  return os.str();
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("BAD_MATRIX", "ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows,
                             std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error("BAD_MATRIX", "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Builds a matrix whose columns are the given vectors.
  static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols,
                                std::size_t rows_if_empty) {
    IntMatrix m(cols.empty() ? rows_if_empty : cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw Error("BAD_MATRIX", "ragged columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Int> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }
  std::vector<Int> col(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw Error("BAD_MATRIX", "dimension mismatch in apply");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!data_[i * cols_ + j].is_zero()) acc += data_[i * cols_ + j] * v[j];
      }
      out[i] = std::move(acc);
    }
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("BAD_MATRIX", "dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error("BAD_MATRIX", "dimension mismatch in difference");
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
    return c;
  }

  /// Horizontal concatenation [a | b].
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw Error("BAD_MATRIX", "row mismatch in hcat");
    IntMatrix c(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v.is_zero(); });
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  const std::vector<Int>& data() const noexcept { return data_; }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i) os << ',';
      os << '[' << join(m.row(i)) << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Solves A x = b over the rationals for a possibly non-square A, returning
/// one solution (free variables set to zero) or nothing when inconsistent.
inline bool solve_rational(const std::vector<std::vector<Rat>>& a_rows,
                           const std::vector<Rat>& b, std::vector<Rat>& x) {
  const std::size_t m = a_rows.size();
  const std::size_t n = m ? a_rows[0].size() : x.size();
  std::vector<std::vector<Rat>> a = a_rows;
  std::vector<Rat> rhs = b;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    std::swap(rhs[p], rhs[r]);
    const Rat inv = Rat(1) / a[r][c];
    for (std::size_t j = c; j < n; ++j) a[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i] != 0) return false;
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return true;
}

}  // namespace iwk
