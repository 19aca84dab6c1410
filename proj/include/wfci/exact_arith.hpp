#pragma once

// Exact integer and rational primitives: gcd/lcm over lists, Bezout
// coefficients, unimodular completion of primitive vectors.

#include <cstddef>
#include <cstdint>
#include <ranges>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wfci/error.hpp"

namespace wfci {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

}  // namespace detail

template <class T>
T gcd(T a, T b) {
  a = detail::abs_value(a);
  b = detail::abs_value(b);
  while (b != 0) {
    T r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

template <class T>
T lcm(const T& a, const T& b) {
  if (a == 0 || b == 0) return T(0);
  return detail::abs_value(T(a / gcd(a, b) * b));
}

template <std::ranges::input_range R>
auto gcd_many(const R& values) {
  using T = std::ranges::range_value_t<R>;
  auto it = std::ranges::begin(values);
  if (it == std::ranges::end(values)) throw InvalidInput("gcd_many: empty input");
  T g = detail::abs_value(T(*it));
  for (++it; it != std::ranges::end(values); ++it) g = gcd(g, T(*it));
  return g;
}

template <std::ranges::input_range R>
auto lcm_many(const R& values) {
  using T = std::ranges::range_value_t<R>;
  auto it = std::ranges::begin(values);
  if (it == std::ranges::end(values)) throw InvalidInput("lcm_many: empty input");
  T l = detail::abs_value(T(*it));
  for (++it; it != std::ranges::end(values); ++it) l = lcm(l, T(*it));
  return l;
}

template <class T>
struct ExtendedGcd {
  T g;  // always >= 0
  T s;
  T t;  // s*a + t*b == g
};

template <class T>
ExtendedGcd<T> extended_gcd(const T& a, const T& b) {
  T old_r = a, r = b;
  T old_s = 1, s = 0;
  T old_t = 0, t = 1;
  while (r != 0) {
    T q = old_r / r;
    T next = old_r - q * r;
    old_r = std::move(r);
    r = std::move(next);
    next = old_s - q * s;
    old_s = std::move(s);
    s = std::move(next);
    next = old_t - q * t;
    old_t = std::move(t);
    t = std::move(next);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

template <class T>
struct BezoutResult {
  T g;
  std::vector<T> coeffs;
};

// Left fold of the extended Euclidean algorithm:
// sum(values[i] * coeffs[i]) == g == gcd(values).
template <class T>
BezoutResult<T> bezout(const std::vector<T>& values) {
  if (values.empty()) throw InvalidInput("bezout: empty input");
  BezoutResult<T> out{values.front(), {T(1)}};
  if (out.g < 0) {
    out.g = -out.g;
    out.coeffs.front() = T(-1);
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    auto step = extended_gcd(out.g, values[i]);
    for (auto& c : out.coeffs) c *= step.s;
    out.coeffs.push_back(step.t);
    out.g = step.g;
  }
  return out;
}

// Dense row-major matrix; only what the chart computations need.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

// Fraction-free (Bareiss) elimination; exact for integer matrices.
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidInput("determinant: matrix not square");
  if (n == 0) return Integer(1);
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Square integer matrix with determinant +1 or -1. Carries its inverse,
// which is again integral.
class UnimodularMatrix {
 public:
  UnimodularMatrix(IntMatrix matrix, IntMatrix inverse) : m_(std::move(matrix)), inv_(std::move(inverse)) {
    if (m_.rows() != m_.cols() || m_ * inv_ != IntMatrix::identity(m_.rows()))
      throw PreconditionViolation("unimodular", "matrix/inverse pair is not unimodular");
  }

  const IntMatrix& matrix() const noexcept { return m_; }
  const IntMatrix& inverse() const noexcept { return inv_; }
  std::size_t size() const noexcept { return m_.rows(); }
  Integer determinant() const { return wfci::determinant(m_); }

 private:
  IntMatrix m_;
  IntMatrix inv_;
};

// Completes a primitive integer vector v to a unimodular matrix whose first
// row is v. Iterated 2x2 Euclid steps clear v against its first entry; the
// accumulated inverse transform, transposed, has v as first row.
inline UnimodularMatrix unimodular_complete(const std::vector<Integer>& v) {
  if (v.empty()) throw InvalidInput("unimodular_complete: empty vector");
  if (gcd_many(v) != 1) throw PreconditionViolation("not-primitive", "vector not primitive");

  const std::size_t n = v.size();
  std::vector<Integer> x = v;
  IntMatrix forward = IntMatrix::identity(n);  // forward * v == e_0
  IntMatrix backward = IntMatrix::identity(n); // backward == forward^-1

  for (std::size_t k = 1; k < n; ++k) {
    if (x[k] == 0) continue;
    auto eg = extended_gcd(x[0], x[k]);
    const Integer p = x[0] / eg.g;
    const Integer q = x[k] / eg.g;
    // E = [[s, t], [-q, p]] acting on rows (0, k); det E = 1.
    for (std::size_t c = 0; c < n; ++c) {
      Integer r0 = eg.s * forward(0, c) + eg.t * forward(k, c);
      Integer rk = -q * forward(0, c) + p * forward(k, c);
      forward(0, c) = std::move(r0);
      forward(k, c) = std::move(rk);
    }
    // E^-1 = [[p, -t], [q, s]] acting on columns (0, k).
    for (std::size_t r = 0; r < n; ++r) {
      Integer c0 = backward(r, 0) * p + backward(r, k) * q;
      Integer ck = -backward(r, 0) * eg.t + backward(r, k) * eg.s;
      backward(r, 0) = std::move(c0);
      backward(r, k) = std::move(ck);
    }
    x[0] = eg.g;
    x[k] = 0;
  }
  if (x[0] != 1) {
    // A primitive vector reduces to +-1; only a leading -1 can remain here.
    for (std::size_t c = 0; c < n; ++c) forward(0, c) = -forward(0, c);
    for (std::size_t r = 0; r < n; ++r) backward(r, 0) = -backward(r, 0);
  }
  // v == backward * e_0, so v is the first row of backward^T and
  // (backward^T)^-1 == forward^T.
  return UnimodularMatrix(backward.transposed(), forward.transposed());
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

inline std::string to_string(const Integer& z) {
  return z.str();
}

// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw InvalidInput("malformed rational: '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidInput("malformed rational: '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw InvalidInput("malformed rational: '" + std::string(text) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("malformed rational: zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

// Factors |m| into square part and square-free part: m == s^2 * r, r square-free,
// sign carried by r.
inline std::pair<Integer, Integer> square_free_decomposition(const Integer& m) {
  if (m == 0) return {Integer(0), Integer(1)};
  Integer rest = detail::abs_value(m);
  Integer square = 1;
  Integer free_part = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    int mult = 0;
    while (rest % p == 0) {
      rest /= p;
      ++mult;
    }
    for (int k = 0; k + 1 < mult; k += 2) square *= p;
    if (mult % 2 == 1) free_part *= p;
  }
  free_part *= rest;
  if (m < 0) free_part = -free_part;
  return {square, free_part};
}

}  // namespace wfci
