#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsos/matrix.hpp"
#include "qsos/poly.hpp"

namespace qsos {

/// Homogeneous polynomial in (x, y) of declared degree d. Coefficient k belongs
/// to x^(d-k) y^k, so the coefficient list is exactly the descending list of the
/// dehomogenization f(x, 1) taken with nominal degree d.
template <class T>
class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(std::initializer_list<T> coeffs) : p_(std::vector<T>(coeffs)) {}
  explicit BinaryForm(std::vector<T> coeffs) : p_(std::move(coeffs)) {}

  static BinaryForm homogenize(const Poly<T>& p, int degree) {
    BinaryForm f;
    f.p_ = p.with_nominal_degree(degree);
    return f;
  }
  static BinaryForm zero(int degree) { return homogenize(Poly<T>::zero(degree), degree); }

  int degree() const { return p_.nominal_degree(); }
  bool is_zero() const { return p_.is_zero(); }
  const T& operator[](int k) const { return p_[k]; }
  T& operator[](int k) { return p_[k]; }
  std::vector<T> coeffs() const { return p_.descending(); }

  /// f(x, 1) with nominal degree d.
  const Poly<T>& dehomogenize() const { return p_; }

  template <class U>
  U eval(const U& x, const U& y) const {
    U sum = U(0);
    U xp = U(1);
    std::vector<U> yp(degree() + 1, U(1));
    for (int k = 1; k <= degree(); ++k) yp[k] = yp[k - 1] * y;
    for (int k = degree(); k >= 0; --k) {
      sum = sum + U((*this)[k]) * xp * yp[k];
      xp = xp * x;
    }
    return sum;
  }

  BinaryForm operator-() const { return from_poly_(-p_); }
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    check_same_(a, b);
    return from_poly_(a.p_ + b.p_);
  }
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
    check_same_(a, b);
    return from_poly_(a.p_ - b.p_);
  }
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    return from_poly_(a.p_ * b.p_);
  }
  friend BinaryForm operator*(const T& s, const BinaryForm& a) { return from_poly_(a.p_ * s); }
  friend BinaryForm operator*(const BinaryForm& a, const T& s) { return from_poly_(a.p_ * s); }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree() == b.degree() && a.p_ == b.p_;
  }
  friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }

  template <class F>
  auto map(F&& fn) const -> BinaryForm<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    return BinaryForm<U>::homogenize(p_.map(fn), degree());
  }

  friend std::ostream& operator<<(std::ostream& os, const BinaryForm& f) { return os << f.p_; }

 private:
  static BinaryForm from_poly_(Poly<T> p) {
    BinaryForm f;
    f.p_ = std::move(p);
    return f;
  }
  static void check_same_(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("binary forms of different degree");
  }

  Poly<T> p_;
};

using RForm = BinaryForm<Rational>;
using DForm = BinaryForm<double>;

inline DForm to_double(const RForm& f) {
  return f.map([](const Rational& v) { return v.get_d(); });
}

/// Sylvester matrix of f and g with nominal degrees m and n, size (m+n)x(m+n):
/// n shifted rows of f followed by m shifted rows of g.
template <class T>
Matrix<T> sylvester(const Poly<T>& f, const Poly<T>& g, int m, int n) {
  if (m < f.degree() || n < g.degree()) throw std::invalid_argument("nominal degree below true degree");
  Poly<T> fm = f.with_nominal_degree(m), gn = g.with_nominal_degree(n);
  Matrix<T> s(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(i, i + k) = fm[k];
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= n; ++k) s(n + j, j + k) = gn[k];
  return s;
}

/// Res_{m,n}(f, g): determinant of the nominal-degree Sylvester matrix.
template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g, int m, int n) {
  if (m == 0 && n == 0) throw std::invalid_argument("resultant with m = n = 0");
  return determinant(sylvester(f, g, m, n));
}

template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g) {
  return resultant(f, g, f.nominal_degree(), g.nominal_degree());
}

/// Resultant of two binary forms; vanishes iff they share a projective root.
template <class T>
T resultant(const BinaryForm<T>& f, const BinaryForm<T>& g) {
  return resultant(f.dehomogenize(), g.dehomogenize(), f.degree(), g.degree());
}

/// disc_n(f) = a0^(2n-2) prod_{i<j} (a_i - a_j)^2 for the nominal degree n.
///
/// Evaluated as (-1)^(n(n-1)/2) Res_{n,n-1}(f, f') / a0, where the division by
/// a0 is carried out symbolically: the first Sylvester column is a0 * (1, .., n, ..)
/// and is replaced by that cofactor. This keeps disc_n well defined when a0 = 0
/// (roots at infinity), where it equals a1^2 disc_{n-1}.
template <class T>
T disc(const Poly<T>& f, int n) {
  using Tr = RingTraits<T>;
  if (n < 1) throw std::invalid_argument("discriminant needs n >= 1");
  Poly<T> fn = f.with_nominal_degree(n);
  Matrix<T> s = sylvester(fn, fn.derivative(), n, n - 1);
  for (int r = 0; r < 2 * n - 1; ++r) s(r, 0) = Tr::zero();
  if (n > 1) s(0, 0) = Tr::one();
  s(n - 1, 0) = Tr::from_int(n);
  T d = determinant(s);
  return ((n * (n - 1) / 2) % 2) ? T(-d) : d;
}

template <class T>
T disc(const Poly<T>& f) {
  return disc(f, f.nominal_degree());
}

template <class T>
T disc(const BinaryForm<T>& f) {
  return disc(f.dehomogenize(), f.degree());
}

/// f(lambda * z) with the same nominal degree.
template <class T>
Poly<T> scale_argument(const Poly<T>& f, const T& lambda) {
  std::vector<T> a = f.ascending();
  T p = RingTraits<T>::one();
  for (auto& c : a) {
    c = c * p;
    p = p * lambda;
  }
  return Poly<T>::from_ascending(std::move(a));
}

/// Checks disc_n f(lambda z) = lambda^(n(n-1)) disc_n f(z). Exact comparison for
/// exact scalars; relative tolerance 1e-9 for floating scalars.
template <class T>
bool disc_scale_law(const Poly<T>& f, const T& lambda, int n) {
  T lhs = disc(scale_argument(f.with_nominal_degree(n), lambda), n);
  T rhs = disc(f, n);
  for (int i = 0; i < n * (n - 1); ++i) rhs = rhs * lambda;
  if constexpr (RingTraits<T>::exact) {
    return lhs == rhs;
  } else {
    double scale = std::max({1.0, std::abs(static_cast<double>(lhs)), std::abs(static_cast<double>(rhs))});
    return std::abs(static_cast<double>(lhs - rhs)) <= 1e-9 * scale;
  }
}

// ---------------------------------------------------------------------------
// Exact kernel (rational coefficients).

/// Monic gcd; zero if both arguments are zero.
RPoly gcd(const RPoly& a, const RPoly& b);

/// Yun decomposition f = c * prod_k s_k^k with monic, pairwise coprime,
/// square-free s_k. Returns (s_k, k) for the non-constant parts.
std::vector<std::pair<RPoly, int>> square_free_decomposition(const RPoly& f);

/// gcd(f, f') is constant. Throws on the zero polynomial.
bool square_free(const RPoly& f);

/// Float variant: numerical gcd degree of (f, f') is zero.
bool square_free(const DPoly& f, double threshold = 1e-8);

std::vector<RPoly> sturm_sequence(const RPoly& f);

/// Number of distinct real roots of f (any f != 0).
int count_real_roots(const RPoly& f);

/// Exact psd test for binary forms of even degree.
bool psd_binary(const RForm& f);

struct PsdTolerance {
  double psd = 1e-9;   // allowed relative negativity
  double root = 1e-7;  // real-root cluster width
};

/// Floating psd test: the minimum of f on the unit circle, located through the
/// critical directions x f_y - y f_x = 0, is >= -tol.psd * |f|.
bool psd_binary(const DForm& f, const PsdTolerance& tol = {});

/// Minimum of f(cos t, sin t) and a minimizing direction.
std::pair<double, std::pair<double, double>> min_on_circle(const DForm& f);

/// All complex roots of f (true degree), companion eigenvalues polished by Newton.
std::vector<std::complex<double>> complex_roots(const DPoly& f);

/// Numerical gcd degree: kernel dimension of the Sylvester matrix of the
/// normalized pair, counting singular values below threshold * sigma_max.
int approx_gcd_degree(const DPoly& a, const DPoly& b, double threshold = 1e-8);

/// Exact division of binary forms: returns c with a = b * c, or nothing.
/// Coefficients of c are solved from the first nonzero coefficient of b; the
/// remaining convolution equations are then verified.
std::optional<RForm> divide_exact(const RForm& a, const RForm& b);

/// b divides a as binary forms (the zero form is divisible by everything).
inline bool divides(const RForm& b, const RForm& a) { return divide_exact(a, b).has_value(); }

}  // namespace qsos
