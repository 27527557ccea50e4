#include "qsos/phi.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numeric>

#include "ball.hpp"
#include "qsos/errors.hpp"

namespace qsos {

namespace {

using detail::CBall;
using detail::Mp;

long choose2(long m) { return m * (m - 1) / 2; }

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}


// lambda * p with integer coefficients; lambda = lcm of the denominators.
ZPoly clear_denominators(const RPoly& p, int nominal, Integer& lambda) {
  lambda = 1;
  for (const auto& c : p.ascending()) mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> a(nominal + 1, Integer(0));
  for (int k = 0; k <= p.degree(); ++k) {
    Rational v = p.coeff(k) * lambda;
    a[k] = v.get_num();
  }
  return ZPoly::from_ascending(std::move(a));
}


// Coefficients of B(x, y) = (g(x) h(y) - g(y) h(x)) / (x - y): b[a][c] for x^a y^c.
std::vector<std::vector<Integer>> bezoutian(const ZPoly& g, const ZPoly& h, int n) {
  std::vector<std::vector<Integer>> b(n, std::vector<Integer>(n, Integer(0)));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q < p; ++q) {
      const Integer c = g.coeff(p) * h.coeff(q) - g.coeff(q) * h.coeff(p);
      if (c == 0) continue;
      for (int k = 0; k <= p - q - 1; ++k) b[p - 1 - k][q + k] += c;
    }
  return b;
}

// ---- multiprecision complex helpers (round to nearest) ----

struct Cx {
  Mp re, im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
};

Cx cadd(const Cx& a, const Cx& b) {
  Cx r(a.re.prec());
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}
Cx csub(const Cx& a, const Cx& b) {
  Cx r(a.re.prec());
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}
Cx cmul(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.re.prec();
  Cx r(p);
  Mp t1(p), t2(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  return r;
}
Cx cdiv(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.re.prec();
  Mp d(p), t1(p), t2(p);
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
  Cx conj(p);
  mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
  Cx r = cmul(a, conj);
  mpfr_div(r.re.get(), r.re.get(), d.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), r.im.get(), d.get(), MPFR_RNDN);
  return r;
}

long cexp2(const Cx& a) {
  // Rough binary exponent of |a|, for relative tests that may underflow doubles.
  long e = LONG_MIN;
  if (!mpfr_zero_p(a.re.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(a.re.get())));
  if (!mpfr_zero_p(a.im.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(a.im.get())));
  return e;
}

// f(z) and f'(z) by Horner.
std::pair<Cx, Cx> eval_with_derivative(const ZPoly& f, const Cx& z) {
  const mpfr_prec_t p = z.re.prec();
  const int m = f.nominal_degree();
  Cx v(p), d(p);
  mpfr_set_z(v.re.get(), f.coeff(m).get_mpz_t(), MPFR_RNDN);
  for (int k = m - 1; k >= 0; --k) {
    d = cadd(cmul(d, z), v);
    v = cmul(v, z);
    Mp c(p);
    mpfr_set_z(c.get(), f.coeff(k).get_mpz_t(), MPFR_RNDN);
    mpfr_add(v.re.get(), v.re.get(), c.get(), MPFR_RNDN);
  }
  return {std::move(v), std::move(d)};
}

// Aberth-Ehrlich iteration from the double-precision companion roots.
std::vector<Cx> aberth(const ZPoly& f, mpfr_prec_t p) {
  const int m = f.nominal_degree();
  auto start = complex_roots(f.map([](const Integer& v) { return v.get_d(); }));
  std::vector<Cx> z;
  for (int i = 0; i < m; ++i) {
    Cx c(p);
    std::complex<double> s = i < static_cast<int>(start.size()) ? start[i] : std::polar(1.0, 0.7 + i);
    // Separate accidental duplicates so the Aberth correction is defined.
    s += std::complex<double>(1e-9 * i, 1e-9 * (i % 3));
    mpfr_set_d(c.re.get(), s.real(), MPFR_RNDN);
    mpfr_set_d(c.im.get(), s.imag(), MPFR_RNDN);
    z.push_back(std::move(c));
  }
  for (int it = 0; it < 200 + static_cast<int>(p / 4); ++it) {
    long worst = LONG_MIN;
    for (int i = 0; i < m; ++i) {
      auto [v, d] = eval_with_derivative(f, z[i]);
      if (mpfr_zero_p(v.re.get()) && mpfr_zero_p(v.im.get())) continue;
      Cx newton = cdiv(v, d);
      Cx s(p);
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        Cx one(p);
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        s = cadd(s, cdiv(one, csub(z[i], z[j])));
      }
      Cx one(p);
      mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
      Cx w = cdiv(newton, csub(one, cmul(newton, s)));
      z[i] = csub(z[i], w);
      long rel = cexp2(w) - std::max(0L, cexp2(z[i]));
      worst = std::max(worst, rel);
    }
    if (worst < -static_cast<long>(p) + 8) break;
  }
  return z;
}

Mp lower_abs(const CBall& b) {
  // max(|re|, |im|) - rad, rounded down and clamped at zero.
  Mp a(detail::kRadPrec), c(detail::kRadPrec), r(detail::kRadPrec);
  mpfr_abs(a.get(), b.re.get(), MPFR_RNDD);
  mpfr_abs(c.get(), b.im.get(), MPFR_RNDD);
  mpfr_max(r.get(), a.get(), c.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), b.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

CBall point(const Cx& z) {
  CBall b(z.re.prec());
  mpfr_set(b.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(b.im.get(), z.im.get(), MPFR_RNDN);
  return b;
}

CBall eval_ball(const ZPoly& f, const CBall& z) {
  const int m = f.nominal_degree();
  CBall v = CBall::from_integer(f.coeff(m), z.prec());
  for (int k = m - 1; k >= 0; --k) v = v * z + CBall::from_integer(f.coeff(k), z.prec());
  return v;
}

// Certified root balls: the discs D(z_i, m |W_i|) with Weierstrass corrections
// W_i are pairwise disjoint, hence each holds exactly one root.
std::optional<std::vector<CBall>> root_balls(const ZPoly& f, mpfr_prec_t p) {
  const int m = f.nominal_degree();
  const std::vector<Cx> z = aberth(f, p);
  std::vector<CBall> balls;
  for (int i = 0; i < m; ++i) balls.push_back(point(z[i]));
  const CBall a0 = CBall::from_integer(f.coeff(m), p);
  std::vector<Mp> radius;
  for (int i = 0; i < m; ++i) {
    Mp den = lower_abs(a0);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      Mp d = lower_abs(balls[i] - balls[j]);
      mpfr_mul(den.get(), den.get(), d.get(), MPFR_RNDD);
    }
    if (mpfr_zero_p(den.get())) return std::nullopt;
    CBall fv = eval_ball(f, balls[i]);
    Mp num = detail::add_up(fv.mag_up(), fv.rad);
    Mp r(detail::kRadPrec);
    mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
    mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(m), MPFR_RNDU);
    radius.push_back(std::move(r));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Mp gap = lower_abs(balls[i] - balls[j]);
      if (mpfr_cmp(gap.get(), detail::add_up(radius[i], radius[j]).get()) <= 0) return std::nullopt;
    }
  for (int i = 0; i < m; ++i) balls[i].rad = radius[i];
  return balls;
}

CBall eval_bezoutian(const std::vector<std::vector<Integer>>& b, const CBall& x, const CBall& y) {
  const int n = static_cast<int>(b.size());
  const mpfr_prec_t p = x.prec();
  CBall acc(p);
  for (int a = n - 1; a >= 0; --a) {
    CBall inner(p);
    for (int c = n - 1; c >= 0; --c) inner = inner * y + CBall::from_integer(b[a][c], p);
    acc = acc * x + inner;
  }
  return acc;
}

// Rounds a ball to the unique integer it contains, if the ball is narrow enough.
std::optional<Integer> round_ball(const CBall& v) {
  Mp quarter(detail::kRadPrec);
  mpfr_set_d(quarter.get(), 0.25, MPFR_RNDN);
  if (mpfr_cmp(v.rad.get(), quarter.get()) >= 0) return std::nullopt;
  Mp imag = detail::add_up(detail::abs_up(v.im), v.rad);
  if (mpfr_cmp(imag.get(), quarter.get()) >= 0) return std::nullopt;
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v.re.get(), MPFR_RNDN);
  // The center must be within 1/4 of z for the ball to contain z and no other integer.
  Mp diff(v.re.prec());
  mpfr_sub_z(diff.get(), v.re.get(), z.get_mpz_t(), MPFR_RNDU);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
  if (mpfr_cmp(detail::add_up(detail::abs_up(diff), v.rad).get(), quarter.get()) >= 0) return std::nullopt;
  return z;
}

// Integer matrices for the norm computation.
using ZMat = Matrix<Integer>;

ZMat zmul(const ZMat& a, const ZMat& b) {
  const std::size_t n = a.rows();
  ZMat c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

ZMat identity(std::size_t n) {
  ZMat c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 1;
  return c;
}

// Y = a0 X, X the multiplication-by-x matrix of Q[x]/(f) in the basis 1, x, .., x^(m-1).
ZMat scaled_companion(const ZPoly& f) {
  const int m = f.nominal_degree();
  ZMat y(m, m);
  for (int k = 0; k + 1 < m; ++k) y(k + 1, k) = f.coeff(m);
  for (int r = 0; r < m; ++r) y(r, m - 1) = -f.coeff(r);
  return y;
}

std::optional<Rational> phi_squared_integer(const ZPoly& f, const ZPoly& g, const ZPoly& h, int m, int n) {
  const Integer a0 = f.coeff(m);
  if (a0 == 0 || f.degree() != m) throw std::invalid_argument("square route needs deg f = m");
  const ZMat y = scaled_companion(f);
  std::vector<ZMat> pw{identity(m)};
  for (int k = 1; k <= 2 * n - 2; ++k) pw.push_back(zmul(pw.back(), y));

  // N_A(W) with W = g' h - g h'.
  const ZPoly w = g.derivative() * h - g * h.derivative();
  const int nw = 2 * n - 2;
  ZMat wm(m, m);
  for (int k = 0; k <= std::min(nw, w.nominal_degree()); ++k) {
    if (w.coeff(k) == 0) continue;
    const Integer s = w.coeff(k) * ipow(a0, nw - k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) wm(i, j) += s * pw[k](i, j);
  }
  const Integer det_w = determinant(wm);
  if (det_w == 0) return std::nullopt;
  const Rational norm_w = Rational(det_w) / Rational(ipow(a0, static_cast<unsigned long>(nw) * m));

  // N_{A(x)A}(B) = det sum_a U_a (x) V_a.
  const auto b = bezoutian(g, h, n);
  const int mm = m * m;
  ZMat big(mm, mm);
  for (int a = 0; a < n; ++a) {
    ZMat v(m, m);
    bool any = false;
    for (int c = 0; c < n; ++c) {
      if (b[a][c] == 0) continue;
      any = true;
      const Integer s = b[a][c] * ipow(a0, n - 1 - c);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) v(i, j) += s * pw[c](i, j);
    }
    if (!any) continue;
    const Integer ua = ipow(a0, n - 1 - a);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Integer u = ua * pw[a](i, j);
        if (u == 0) continue;
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) big(i * m + k, j * m + l) += u * v(k, l);
      }
  }
  const Integer det_b = determinant(big);
  const Rational norm_b = Rational(det_b) / Rational(ipow(a0, 2UL * (n - 1) * mm));
  const Rational lead = Rational(ipow(a0, 2UL * (m - 1) * (n - 1)));
  Rational out = lead * norm_b / norm_w;
  out.canonicalize();
  return out;
}

struct Direct {
  Integer value;
  long precision;
};

// Certified product for deg f = m and f separable.
Direct phi_direct(const ZPoly& f, const ZPoly& g, const ZPoly& h, int m, int n, const PhiOptions& opt) {
  const auto b = bezoutian(g, h, n);
  const Integer lead = ipow(f.coeff(m), static_cast<unsigned long>((m - 1) * (n - 1)));
  for (long p = 128; p <= opt.max_precision; p *= 2) {
    auto roots = root_balls(f, p);
    if (!roots) continue;
    CBall prod = CBall::from_integer(lead, p);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) prod = prod * eval_bezoutian(b, (*roots)[i], (*roots)[j]);
    if (auto z = round_ball(prod)) return {*z, p};
  }
  throw NumericalError("phi: precision limit reached without isolating the value");
}

Integer phi_integer(const ZPoly& f, const ZPoly& g, const ZPoly& h, int m, int n, const PhiOptions& opt,
                    PhiStats& stats) {
  auto usable = [&](const ZPoly& p) { return p.degree() == m && disc(p, m) != 0; };
  if (usable(f)) {
    Direct d = phi_direct(f, g, h, m, n, opt);
    stats.precision = d.precision;
    if (opt.cross_check) {
      if (auto sq = phi_squared_integer(f, g, h, m, n)) {
        if (Rational(d.value * d.value) != *sq) throw NumericalError("phi: certified value fails the square check");
        stats.cross_checked = true;
      }
    }
    return d.value;
  }
  // Phi is a polynomial of degree (m-1)(n-1) in the coefficients of f: interpolate
  // along f + s u and evaluate at s = 0.
  std::vector<Integer> ua(m + 1, Integer(0));
  ua[m] = 1;
  ua[1] = 2;
  ua[0] = 7;
  const ZPoly u = ZPoly::from_ascending(ua);
  const int need = (m - 1) * (n - 1) + 1;
  std::vector<std::pair<long, Integer>> samples;
  PhiOptions inner = opt;
  inner.cross_check = false;
  for (long s = 1; static_cast<int>(samples.size()) < need; ++s) {
    if (s > need + 1000) throw NumericalError("phi: no usable interpolation samples");
    const ZPoly fs = f + u * Integer(s);
    if (!usable(fs)) continue;
    Direct d = phi_direct(fs, g, h, m, n, inner);
    stats.precision = std::max(stats.precision, d.precision);
    samples.emplace_back(s, d.value);
  }
  stats.samples = need;
  Rational at0 = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    Rational wgt = 1;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (j == k) continue;
      wgt *= Rational(-samples[j].first) / Rational(samples[k].first - samples[j].first);
    }
    at0 += wgt * Rational(samples[k].second);
  }
  at0.canonicalize();
  if (at0.get_den() != 1) throw NumericalError("phi: interpolated value is not an integer");
  return at0.get_num();
}

void check_degrees(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n) {
  if (m < 2 || n < 1) throw std::invalid_argument("phi needs m >= 2 and n >= 1");
  if (f.is_zero()) throw std::invalid_argument("phi of the zero polynomial");
  if (f.degree() > m || g.degree() > n || h.degree() > n) throw std::invalid_argument("degree exceeds nominal degree");
}

// Direction of a0^K prod B(ai, aj) in double precision, renormalized to avoid overflow.
std::complex<double> phi_direction(const DPoly& f, const DPoly& g, const DPoly& h, int m, int n, double* log_mag) {
  auto roots = complex_roots(f);
  if (static_cast<int>(roots.size()) != m) throw std::invalid_argument("approximate phi needs deg f = m");
  std::complex<double> acc = std::pow(f.coeff(m), (m - 1) * (n - 1)) >= 0 ? 1.0 : -1.0;
  if ((m - 1) * (n - 1) % 2 == 0) acc = 1.0;
  else acc = f.coeff(m) >= 0 ? 1.0 : -1.0;
  double lm = (m - 1) * (n - 1) * std::log(std::abs(f.coeff(m)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto a = roots[i], b = roots[j];
      const std::complex<double> v = (g.eval(a) * h.eval(b) - g.eval(b) * h.eval(a)) / (a - b);
      if (std::abs(v) == 0.0) {
        if (log_mag) *log_mag = -INFINITY;
        return 0.0;
      }
      lm += std::log(std::abs(v));
      acc *= v / std::abs(v);
    }
  if (log_mag) *log_mag = lm;
  return acc;
}

}  // namespace

Rational phi(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n, const PhiOptions& opt, PhiStats* stats) {
  check_degrees(f, g, h, m, n);
  PhiStats local;
  Integer lf, lg, lh;
  const ZPoly fz = clear_denominators(f, m, lf), gz = clear_denominators(g, n, lg), hz = clear_denominators(h, n, lh);
  const Integer v = phi_integer(fz, gz, hz, m, n, opt, local);
  if (stats) *stats = local;
  const Rational scale = Rational(ipow(lf, (m - 1) * (n - 1)) * ipow(lg * lh, choose2(m)));
  Rational out = Rational(v) / scale;
  out.canonicalize();
  return out;
}

Rational psi(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n, const PhiOptions& opt) {
  const Rational d = disc(f, m);
  if (sgn(d) == 0) return 0;
  return d * phi(f, g, h, m, n, opt);
}

std::optional<Rational> phi_squared_exact(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n) {
  check_degrees(f, g, h, m, n);
  Integer lf, lg, lh;
  const ZPoly fz = clear_denominators(f, m, lf), gz = clear_denominators(g, n, lg), hz = clear_denominators(h, n, lh);
  auto sq = phi_squared_integer(fz, gz, hz, m, n);
  if (!sq) return std::nullopt;
  const Rational scale = Rational(ipow(lf, (m - 1) * (n - 1)) * ipow(lg * lh, choose2(m)));
  Rational out = *sq / (scale * scale);
  out.canonicalize();
  return out;
}

std::optional<Rational> phi_via_square(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n) {
  auto sq = phi_squared_exact(f, g, h, m, n);
  if (!sq) return std::nullopt;
  if (sgn(*sq) == 0) return Rational(0);
  Integer num, den;
  if (!mpz_perfect_square_p(sq->get_num_mpz_t()) || !mpz_perfect_square_p(sq->get_den_mpz_t()))
    throw NumericalError("phi: exact square is not a square");
  mpz_sqrt(num.get_mpz_t(), sq->get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), sq->get_den_mpz_t());
  const auto dir = phi_direction(to_double(f), to_double(g), to_double(h), m, n, nullptr);
  if (std::abs(dir.imag()) > 0.5) throw NumericalError("phi: sign could not be resolved");
  Rational out(dir.real() < 0 ? Integer(-num) : num, den);
  out.canonicalize();
  return out;
}

double phi_approx(const DPoly& f, const DPoly& g, const DPoly& h, int m, int n) {
  double lm = 0;
  const auto dir = phi_direction(f, g, h, m, n, &lm);
  if (dir == 0.0) return 0.0;
  return (dir.real() < 0 ? -1.0 : 1.0) * std::exp(lm);
}

double phi_min_pair_ratio(const DPoly& f, const DPoly& g, const DPoly& h, int m, int n) {
  const DPoly ft = f.trimmed();
  auto roots = complex_roots(ft);
  using cd = std::complex<double>;
  std::vector<std::pair<cd, cd>> pts;  // (g(a), h(a))
  for (auto a : roots) pts.emplace_back(g.eval(a), h.eval(a));
  const int at_infinity = m - ft.degree();
  if (at_infinity >= 2) return 0.0;
  if (at_infinity == 1) pts.emplace_back(cd(g.coeff(n)), cd(h.coeff(n)));
  double best = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const cd u = pts[i].first * pts[j].second, v = pts[j].first * pts[i].second;
      const double den = std::abs(u) + std::abs(v);
      best = std::min(best, den == 0.0 ? 0.0 : std::abs(u - v) / den);
    }
  return best;
}

std::string GenericityReport::first_violation() const {
  for (int k = 0; k < 11; ++k)
    if (flags[k]) return "E" + std::to_string(k + 1);
  return {};
}

GenericityReport genericity(const RForm& f2, const RForm& f3, const RForm& f4, const GenericityOptions& opt) {
  if (f2.degree() != 2 || f3.degree() != 3 || f4.degree() != 4) throw std::invalid_argument("need degrees 2, 3, 4");
  GenericityReport r;
  auto set = [&](int k, bool flag, std::string w) {
    r.flags[k - 1] = flag;
    r.witness[k - 1] = std::move(w);
  };
  const RPoly p2 = f2.dehomogenize(), p3 = f3.dehomogenize(), p4 = f4.dehomogenize();
  const Rational d2 = disc(f2);
  set(1, sgn(d2) == 0, to_string(d2));
  const bool div = divides(f2, f3);
  set(2, div, div ? "f2 divides f3" : "f2 does not divide f3");
  const Rational d6 = disc(Rational(4) * f2 * f4 - f3 * f3);
  set(3, sgn(d6) == 0, to_string(d6));
  const Rational d3 = disc(f3);
  set(4, sgn(d3) == 0, to_string(d3));
  const Rational r34 = resultant(f3, f4);
  set(5, sgn(r34) == 0, to_string(r34));
  const RPoly g23 = g_ij(p2, p3, 2, 3), g24 = g_ij(p2, p4, 2, 4), g34 = g_ij(p3, p4, 3, 4);
  const Rational r6 = resultant(g23, g24, 3, 4);
  set(6, sgn(r6) == 0, to_string(r6));
  const Rational r7 = resultant(g24, g34, 4, 5);
  set(7, sgn(r7) == 0, to_string(r7));
  const Rational e8 = phi(p3, (p2 * p2).with_nominal_degree(4), p4, 3, 4, opt.phi);
  set(8, sgn(e8) == 0, to_string(e8));
  const auto pqr = build_PQR(p2, p3, p4);
  const Rational d8 = disc(pqr.P, 8);
  set(9, sgn(d8) == 0, to_string(d8));
  if (opt.include_e10) {
    const Rational e10 = phi(pqr.P, pqr.Q, (pqr.R * pqr.R).with_nominal_degree(18), 8, 18, opt.phi);
    set(10, sgn(e10) == 0, to_string(e10));
  } else {
    set(10, false, "skipped");
  }
  const Rational r11 = resultant(f3, Rational(4) * f4 - f2 * f2);
  set(11, sgn(r11) == 0, to_string(r11));
  return r;
}

namespace {

// A fixed generic rotation of (x, y): moves roots away from infinity while
// preserving every gcd, discriminant and pencil condition.
DPoly rotate_dehomogenized(const DForm& f) {
  const double c = std::cos(0.6180339887498949), s = std::sin(0.6180339887498949);
  const int d = f.degree();
  // f(c x - s y, s x + c y) at y = 1.
  const DPoly lx{c, -s}, ly{s, c};
  DPoly acc = DPoly::zero(d);
  for (int k = 0; k <= d; ++k) {
    DPoly term{f[k]};
    for (int a = 0; a < d - k; ++a) term = term * lx;
    for (int a = 0; a < k; ++a) term = term * ly;
    acc += term;
  }
  return acc.with_nominal_degree(d);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

GenericityReport genericity_advisory(const DForm& f2, const DForm& f3, const DForm& f4, double thr) {
  if (f2.degree() != 2 || f3.degree() != 3 || f4.degree() != 4) throw std::invalid_argument("need degrees 2, 3, 4");
  GenericityReport r;
  r.exact = false;
  auto set = [&](int k, bool flag, std::string w) {
    r.flags[k - 1] = flag;
    r.witness[k - 1] = std::move(w);
  };
  const DPoly p2 = rotate_dehomogenized(f2), p3 = rotate_dehomogenized(f3), p4 = rotate_dehomogenized(f4);
  // gcd(0, b) = b; a zero argument counts as the largest possible common factor.
  auto gcd_deg = [&](const DPoly& a, const DPoly& b) {
    const double na = coeff_norm(a), nb = coeff_norm(b);
    if (na == 0.0 || nb == 0.0) return std::max({a.nominal_degree(), b.nominal_degree(), 1});
    DPoly at = a, bt = b;
    // Coefficients at rounding level of a large neighbour are zero.
    for (auto* p : {&at, &bt}) {
      const double n = coeff_norm(*p);
      for (int k = 0; k <= p->nominal_degree(); ++k)
        if (std::abs(p->coeff(k)) <= 1e-14 * n) p->coeff_ref(k) = 0.0;
    }
    return approx_gcd_degree(at, bt, thr);
  };
  auto ratio = [&](const DPoly& f, const DPoly& g, const DPoly& h, int m, int n) {
    if (coeff_norm(f) == 0.0) return 0.0;
    return phi_min_pair_ratio(f, g, h, m, n);
  };
  const double n2 = coeff_norm(p2);
  const double e1 = n2 == 0.0 ? 0.0 : std::abs(disc(p2, 2)) / (n2 * n2);
  set(1, e1 <= thr, num(e1));
  const int d2 = gcd_deg(p2, p3);
  set(2, d2 >= 2, "gcd degree " + std::to_string(d2));
  const DPoly p6 = (4.0 * p2 * p4 - p3 * p3).with_nominal_degree(6);
  const int d3 = gcd_deg(p6, p6.derivative());
  set(3, d3 >= 1, "gcd degree " + std::to_string(d3));
  const int d4 = gcd_deg(p3, p3.derivative());
  set(4, d4 >= 1, "gcd degree " + std::to_string(d4));
  const int d5 = gcd_deg(p3, p4);
  set(5, d5 >= 1, "gcd degree " + std::to_string(d5));
  const DPoly g23 = g_ij(p2, p3, 2, 3), g24 = g_ij(p2, p4, 2, 4), g34 = g_ij(p3, p4, 3, 4);
  const int d6 = gcd_deg(g23, g24);
  set(6, d6 >= 1, "gcd degree " + std::to_string(d6));
  const int d7 = gcd_deg(g24, g34);
  set(7, d7 >= 1, "gcd degree " + std::to_string(d7));
  const double e8 = ratio(p3, p2 * p2, p4, 3, 4);
  set(8, e8 <= thr, num(e8));
  const auto pqr = build_PQR(p2, p3, p4);
  const int d9 = gcd_deg(pqr.P, pqr.P.derivative());
  set(9, d9 >= 1, "gcd degree " + std::to_string(d9));
  const double e10 = ratio(pqr.P, pqr.Q, pqr.R * pqr.R, 8, 18);
  set(10, e10 <= thr, num(e10));
  const int d11 = gcd_deg(p3, 4.0 * p4 - p2 * p2);
  set(11, d11 >= 1, "gcd degree " + std::to_string(d11));
  return r;
}

}  // namespace qsos
