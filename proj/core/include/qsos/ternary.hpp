#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsos/polycore.hpp"

namespace qsos {

struct Exponent {
  int i, j, k;  // x^i y^j z^k
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Homogeneous polynomial of degree d in (x, y, z). Monomials are ordered by
/// descending exponent of x, then of y: x^d, x^(d-1)y, x^(d-1)z, x^(d-2)y^2, ...
template <class T>
class TernaryForm {
 public:
  using Traits = RingTraits<T>;

  TernaryForm() : TernaryForm(0) {}
  explicit TernaryForm(int degree)
      : degree_(degree), c_(size_for(degree), Traits::zero()) {
    if (degree < 0) throw std::invalid_argument("negative degree");
  }

  static int size_for(int d) { return (d + 1) * (d + 2) / 2; }
  static int index(int d, int i, int j) {
    const int k = d - i - j;
    return (d - i) * (d - i + 1) / 2 + k;
  }
  static Exponent exponent(int d, int idx) {
    int i = d;
    while (idx > d - i) {
      idx -= d - i + 1;
      --i;
    }
    const int k = idx, j = d - i - k;
    return {i, j, k};
  }

  static TernaryForm variable(int which) {
    TernaryForm f(1);
    f.c_[which] = Traits::one();  // x, y, z sit at indices 0, 1, 2
    return f;
  }
  static TernaryForm linear(const T& a, const T& b, const T& c) {
    TernaryForm f(1);
    f.c_ = {a, b, c};
    return f;
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(c_.size()); }

  T coeff(int i, int j, int k) const {
    if (i + j + k != degree_ || i < 0 || j < 0 || k < 0) return Traits::zero();
    return c_[index(degree_, i, j)];
  }
  void set(int i, int j, int k, const T& v) {
    if (i + j + k != degree_) throw std::invalid_argument("monomial degree mismatch");
    c_[index(degree_, i, j)] = v;
  }
  const T& at(int idx) const { return c_.at(idx); }
  T& at(int idx) { return c_.at(idx); }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!Traits::is_zero(v)) return false;
    return true;
  }

  template <class U>
  U eval(const U& x, const U& y, const U& z) const {
    U sum = U(0);
    for (int idx = 0; idx < size(); ++idx) {
      auto [i, j, k] = exponent(degree_, idx);
      U term = U(c_[idx]);
      for (int a = 0; a < i; ++a) term = term * x;
      for (int a = 0; a < j; ++a) term = term * y;
      for (int a = 0; a < k; ++a) term = term * z;
      sum = sum + term;
    }
    return sum;
  }

  /// The form p(M u): variable r is replaced by sum_c M[r][c] u_c.
  TernaryForm compose(const std::array<std::array<T, 3>, 3>& m) const {
    std::array<TernaryForm, 3> lin{linear(m[0][0], m[0][1], m[0][2]), linear(m[1][0], m[1][1], m[1][2]),
                                   linear(m[2][0], m[2][1], m[2][2])};
    std::array<std::vector<TernaryForm>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].push_back(constant(Traits::one()));
      for (int e = 1; e <= degree_; ++e) pw[v].push_back(pw[v].back() * lin[v]);
    }
    TernaryForm out(degree_);
    for (int idx = 0; idx < size(); ++idx) {
      if (Traits::is_zero(c_[idx])) continue;
      auto [i, j, k] = exponent(degree_, idx);
      out += (pw[0][i] * pw[1][j] * pw[2][k]) * c_[idx];
    }
    return out;
  }

  static TernaryForm constant(const T& c) {
    TernaryForm f(0);
    f.c_[0] = c;
    return f;
  }

  TernaryForm operator-() const {
    TernaryForm f = *this;
    for (auto& v : f.c_) v = -v;
    return f;
  }
  TernaryForm& operator+=(const TernaryForm& o) {
    check_same_(o);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] = c_[n] + o.c_[n];
    return *this;
  }
  TernaryForm& operator-=(const TernaryForm& o) {
    check_same_(o);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] = c_[n] - o.c_[n];
    return *this;
  }
  friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }
  friend TernaryForm operator-(TernaryForm a, const TernaryForm& b) { return a -= b; }
  friend TernaryForm operator*(TernaryForm a, const T& s) {
    for (auto& v : a.c_) v = v * s;
    return a;
  }
  friend TernaryForm operator*(const T& s, TernaryForm a) { return std::move(a) * s; }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
    TernaryForm r(a.degree_ + b.degree_);
    for (int p = 0; p < a.size(); ++p) {
      if (Traits::is_zero(a.c_[p])) continue;
      auto ea = exponent(a.degree_, p);
      for (int q = 0; q < b.size(); ++q) {
        auto eb = exponent(b.degree_, q);
        T& slot = r.c_[index(r.degree_, ea.i + eb.i, ea.j + eb.j)];
        slot = slot + a.c_[p] * b.c_[q];
      }
    }
    return r;
  }
  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    if (a.degree_ != b.degree_) return false;
    for (std::size_t n = 0; n < a.c_.size(); ++n)
      if (!Traits::is_zero(a.c_[n] - b.c_[n])) return false;
    return true;
  }

  template <class F>
  auto map(F&& fn) const -> TernaryForm<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    TernaryForm<U> out(degree_);
    for (int n = 0; n < size(); ++n) out.at(n) = fn(c_[n]);
    return out;
  }

  /// Coefficient of z^e viewed as a binary form of degree d - e in (x, y).
  BinaryForm<T> z_slice(int e) const {
    const int d = degree_ - e;
    if (d < 0) throw std::invalid_argument("z power exceeds degree");
    std::vector<T> v(d + 1);
    for (int j = 0; j <= d; ++j) v[j] = coeff(d - j, j, e);
    return BinaryForm<T>(v);
  }

  /// Embeds b(x, y) * z^e.
  static TernaryForm from_slice(const BinaryForm<T>& b, int e) {
    TernaryForm f(b.degree() + e);
    for (int j = 0; j <= b.degree(); ++j) f.set(b.degree() - j, j, e, b[j]);
    return f;
  }

 private:
  void check_same_(const TernaryForm& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("ternary forms of different degree");
  }

  int degree_;
  std::vector<T> c_;
};

using TernaryQuartic = TernaryForm<double>;
using TernaryQuadratic = TernaryForm<double>;
using RTernary = TernaryForm<Rational>;

inline TernaryForm<double> to_double(const RTernary& f) {
  return f.map([](const Rational& v) { return v.get_d(); });
}

/// Key "ijk" used by the JSON wire format, e.g. "310" for x^3 y.
std::string monomial_key(const Exponent& e);
Exponent parse_monomial_key(const std::string& key, int degree);

/// a z^4 + f2 z^2 + f3 z + f4 (no z^3 term).
template <class T>
TernaryForm<T> z_quartic(const T& a, const BinaryForm<T>& f2, const BinaryForm<T>& f3, const BinaryForm<T>& f4) {
  TernaryForm<T> f(4);
  f.set(0, 0, 4, a);
  f += TernaryForm<T>::from_slice(f2, 2);
  f += TernaryForm<T>::from_slice(f3, 1);
  f += TernaryForm<T>::from_slice(f4, 0);
  return f;
}

/// Three quadratic forms with p1^2 + p2^2 + p3^2 equal to a target quartic.
struct SosTriple {
  std::array<TernaryQuadratic, 3> p{TernaryQuadratic(2), TernaryQuadratic(2), TernaryQuadratic(2)};
  /// The (xi, eta) pair the triple was built from, when known.
  std::optional<std::pair<DForm, DForm>> witness;

  TernaryQuartic sum_of_squares() const { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; }
};

/// max |coefficient|.
double max_norm(const TernaryForm<double>& f);

/// || f - sum p_i^2 ||_inf.
double residual(const TernaryQuartic& f, const SosTriple& t);

/// The triple mixed by an orthogonal matrix: p'_j = sum_i s_ij p_i.
SosTriple mix(const SosTriple& t, const std::array<std::array<double, 3>, 3>& s);

}  // namespace qsos
