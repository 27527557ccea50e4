#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsos/ring.hpp"

namespace qsos {

/// Dense univariate polynomial a0*x^n + a1*x^(n-1) + ... + an with an explicit
/// nominal degree n. The leading coefficient a0 may be zero: discriminants,
/// resultants and the pencil invariant all depend on n, not on the true degree.
///
/// Construction and `operator[]` use the descending order a0..an; storage is
/// ascending internally.
template <class T>
class Poly {
 public:
  using value_type = T;
  using Traits = RingTraits<T>;

  Poly() : c_{Traits::zero()} {}
  Poly(std::initializer_list<T> descending) : c_(descending.begin(), descending.end()) {
    if (c_.empty()) c_.push_back(Traits::zero());
    std::reverse(c_.begin(), c_.end());
  }
  explicit Poly(std::vector<T> descending) : c_(std::move(descending)) {
    if (c_.empty()) c_.push_back(Traits::zero());
    std::reverse(c_.begin(), c_.end());
  }

  static Poly from_ascending(std::vector<T> ascending) {
    Poly p;
    p.c_ = std::move(ascending);
    if (p.c_.empty()) p.c_.push_back(Traits::zero());
    return p;
  }
  static Poly constant(const T& c) { return from_ascending({c}); }
  static Poly monomial(const T& c, int power) {
    std::vector<T> a(power + 1, Traits::zero());
    a[power] = c;
    return from_ascending(std::move(a));
  }
  static Poly zero(int nominal_degree = 0) {
    return from_ascending(std::vector<T>(nominal_degree + 1, Traits::zero()));
  }
  /// The linear polynomial x (optionally shifted: x + c).
  static Poly x(const T& shift = Traits::zero()) { return from_ascending({shift, Traits::one()}); }

  int nominal_degree() const { return static_cast<int>(c_.size()) - 1; }
  /// True degree; -1 for the zero polynomial.
  int degree() const {
    for (int k = nominal_degree(); k >= 0; --k)
      if (!Traits::is_zero(c_[k])) return k;
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  /// Coefficient of x^power (zero outside the stored range).
  T coeff(int power) const {
    if (power < 0 || power > nominal_degree()) return Traits::zero();
    return c_[power];
  }
  T& coeff_ref(int power) { return c_.at(power); }

  /// Descending access: operator[](k) is a_k, the coefficient of x^(n-k).
  const T& operator[](int k) const { return c_.at(nominal_degree() - k); }
  T& operator[](int k) { return c_.at(nominal_degree() - k); }

  /// a0 with respect to the nominal degree.
  const T& lead() const { return c_.back(); }
  /// Leading coefficient with respect to the true degree.
  T true_lead() const {
    int d = degree();
    return d < 0 ? Traits::zero() : c_[d];
  }

  const std::vector<T>& ascending() const { return c_; }
  std::vector<T> descending() const { return {c_.rbegin(), c_.rend()}; }

  /// Re-declares the nominal degree. Padding adds zero leading coefficients;
  /// shrinking below the true degree is an error.
  Poly with_nominal_degree(int n) const {
    if (n < degree()) throw std::invalid_argument("nominal degree below true degree");
    Poly p;
    p.c_.assign(n + 1, Traits::zero());
    for (int k = 0; k <= std::min(n, nominal_degree()); ++k) p.c_[k] = c_[k];
    return p;
  }
  Poly trimmed() const { return with_nominal_degree(std::max(degree(), 0)); }

  template <class U>
  U eval(const U& x) const {
    U acc = U(c_.back());
    for (int k = nominal_degree() - 1; k >= 0; --k) acc = acc * x + U(c_[k]);
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x); }

  Poly derivative() const {
    int n = nominal_degree();
    if (n == 0) return Poly();
    std::vector<T> a(n, Traits::zero());
    for (int k = 1; k <= n; ++k) a[k - 1] = c_[k] * Traits::from_int(k);
    return from_ascending(std::move(a));
  }

  /// p(inner(x)); nominal degree n * deg_nominal(inner).
  Poly compose(const Poly& inner) const {
    Poly acc = constant(c_.back());
    for (int k = nominal_degree() - 1; k >= 0; --k) acc = acc * inner + constant(c_[k]);
    return acc.with_nominal_degree(nominal_degree() * inner.nominal_degree());
  }

  template <class F>
  auto map(F&& fn) const -> Poly<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    std::vector<U> a;
    a.reserve(c_.size());
    for (const auto& v : c_) a.push_back(fn(v));
    return Poly<U>::from_ascending(std::move(a));
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& v : p.c_) v = -v;
    return p;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::zero());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::zero());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& v : c_) v = v * s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, Traits::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (Traits::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return from_ascending(std::move(r));
  }

  /// Equality as polynomials (nominal degrees are ignored).
  friend bool operator==(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t k = 0; k < n; ++k) {
      T d = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
      if (!Traits::is_zero(d)) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    os << '[';
    for (int k = 0; k <= p.nominal_degree(); ++k) os << (k ? ", " : "") << p[k];
    return os << ']';
  }

 private:
  std::vector<T> c_;
};

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b) {
  using Tr = RingTraits<T>;
  int db = b.degree();
  if (db < 0) throw std::domain_error("division by the zero polynomial");
  int da = a.degree();
  std::vector<T> rem = a.ascending();
  if (da < db) return {Poly<T>(), a.trimmed()};
  std::vector<T> quo(da - db + 1, Tr::zero());
  T lb = b.coeff(db);
  for (int k = da; k >= db; --k) {
    if (Tr::is_zero(rem[k])) continue;
    T f = Tr::exact_div(rem[k], lb);
    quo[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - f * b.coeff(j);
    rem[k] = Tr::zero();
  }
  rem.resize(std::max(db, 1));
  return {Poly<T>::from_ascending(std::move(quo)), Poly<T>::from_ascending(std::move(rem)).trimmed()};
}

template <class T>
struct RingTraits<Poly<T>> {
  static constexpr bool exact = RingTraits<T>::exact;
  static Poly<T> zero() { return Poly<T>(); }
  static Poly<T> one() { return Poly<T>::constant(RingTraits<T>::one()); }
  static Poly<T> from_int(long v) { return Poly<T>::constant(RingTraits<T>::from_int(v)); }
  static bool is_zero(const Poly<T>& p) { return p.is_zero(); }
  static Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }
  static double magnitude(const Poly<T>& p) {
    double m = 0;
    for (const auto& v : p.ascending()) m = std::max(m, RingTraits<T>::magnitude(v));
    return m;
  }
};

using RPoly = Poly<Rational>;
using DPoly = Poly<double>;

inline DPoly to_double(const RPoly& p) {
  return p.map([](const Rational& v) { return v.get_d(); });
}

/// Max-norm of the coefficient vector.
template <class T>
double coeff_norm(const Poly<T>& p) {
  return RingTraits<Poly<T>>::magnitude(p);
}

}  // namespace qsos
