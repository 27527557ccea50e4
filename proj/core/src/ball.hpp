#pragma once

// Complex ball arithmetic on MPFR. Centers are rounded to nearest at the
// working precision; radii are 64-bit MPFR numbers rounded upward and absorb
// the rounding error of every center operation.

#include <gmpxx.h>
#include <mpfr.h>

#include <utility>

namespace qsos::detail {

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mp(const Mp& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp(Mp&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mp& operator=(Mp&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

inline constexpr mpfr_prec_t kRadPrec = 64;

/// Upward-rounded radius helpers.
inline Mp rad_zero() { return Mp(kRadPrec); }

inline Mp abs_up(const Mp& x) {
  Mp r(kRadPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

inline Mp add_up(const Mp& a, const Mp& b) {
  Mp r(kRadPrec);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

inline Mp mul_up(const Mp& a, const Mp& b) {
  Mp r(kRadPrec);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

/// |x| * 2^(e) rounded up.
inline Mp scaled_abs_up(const Mp& x, long e) {
  Mp r = abs_up(x);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDU);
  return r;
}

struct CBall {
  Mp re, im, rad;

  explicit CBall(mpfr_prec_t p) : re(p), im(p), rad(kRadPrec) {}

  mpfr_prec_t prec() const { return re.prec(); }

  static CBall from_integer(const mpz_class& z, mpfr_prec_t p) {
    CBall b(p);
    if (mpfr_set_z(b.re.get(), z.get_mpz_t(), MPFR_RNDN) != 0) b.rad = scaled_abs_up(b.re, 1 - p);
    return b;
  }

  /// Upper bound of |center| via |re| + |im|.
  Mp mag_up() const { return add_up(abs_up(re), abs_up(im)); }
};

inline CBall operator+(const CBall& a, const CBall& b) {
  const mpfr_prec_t p = a.prec();
  CBall r(p);
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  r.rad = add_up(add_up(a.rad, b.rad), scaled_abs_up(r.mag_up(), 1 - p));
  return r;
}

inline CBall operator-(const CBall& a, const CBall& b) {
  const mpfr_prec_t p = a.prec();
  CBall r(p);
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  r.rad = add_up(add_up(a.rad, b.rad), scaled_abs_up(r.mag_up(), 1 - p));
  return r;
}

inline CBall operator*(const CBall& a, const CBall& b) {
  const mpfr_prec_t p = a.prec();
  CBall r(p);
  Mp t1(p), t2(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  const Mp ma = a.mag_up(), mb = b.mag_up();
  // Propagated: |a| rb + |b| ra + ra rb. Rounding: at most 3 ulps of |a||b| per part.
  Mp prop = add_up(add_up(mul_up(ma, b.rad), mul_up(mb, a.rad)), mul_up(a.rad, b.rad));
  Mp round = mul_up(ma, mb);
  mpfr_mul_2si(round.get(), round.get(), 3 - p, MPFR_RNDU);
  r.rad = add_up(prop, round);
  return r;
}

/// Integer times ball.
inline CBall scale(const CBall& a, const mpz_class& z) { return a * CBall::from_integer(z, a.prec()); }

}  // namespace qsos::detail
