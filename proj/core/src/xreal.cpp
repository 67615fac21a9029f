#include "rys/xreal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rys {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;

unsigned wider(const XReal& a, const XReal& b) { return std::max(a.digits(), b.digits()); }

template <typename Fn>
XReal unary(const XReal& x, Fn fn) {
  XReal r(x.precision());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

template <typename Fn>
XReal binary(const XReal& a, const XReal& b, Fn fn) {
  XReal r{Precision(wider(a, b))};
  fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

mpfr_prec_t Precision::bits() const noexcept {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 4;
}

XReal::XReal() : XReal(Precision()) {}

XReal::XReal(Precision p) : digits_(p.digits) {
  mpfr_init2(v_, p.bits());
  mpfr_set_zero(v_, 1);
}

XReal::XReal(double value, Precision p) : XReal(p) { mpfr_set_d(v_, value, MPFR_RNDN); }

XReal::XReal(std::string_view decimal, Precision p) : XReal(p) {
  const std::string text(decimal);
  if (text.empty() || mpfr_set_str(v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: " + text);
  }
}

XReal::XReal(const XReal& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XReal::XReal(XReal&& other) noexcept : digits_(other.digits_) {
  // Steal the limbs and leave `other` as a valid zero of minimal size.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

XReal& XReal::operator=(const XReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

XReal& XReal::operator=(XReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    std::swap(digits_, other.digits_);
  }
  return *this;
}

XReal::~XReal() { mpfr_clear(v_); }

XReal XReal::at(Precision p) const {
  XReal r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string XReal::str(unsigned significant) const {
  const unsigned sig = significant == 0 ? digits_ : significant;
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", static_cast<int>(sig > 0 ? sig - 1 : 0), v_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

XReal& XReal::operator+=(const XReal& rhs) { return *this = *this + rhs; }
XReal& XReal::operator-=(const XReal& rhs) { return *this = *this - rhs; }
XReal& XReal::operator*=(const XReal& rhs) { return *this = *this * rhs; }
XReal& XReal::operator/=(const XReal& rhs) { return *this = *this / rhs; }
XReal& XReal::operator+=(double rhs) { mpfr_add_d(v_, v_, rhs, MPFR_RNDN); return *this; }
XReal& XReal::operator-=(double rhs) { mpfr_sub_d(v_, v_, rhs, MPFR_RNDN); return *this; }
XReal& XReal::operator*=(double rhs) { mpfr_mul_d(v_, v_, rhs, MPFR_RNDN); return *this; }
XReal& XReal::operator/=(double rhs) { mpfr_div_d(v_, v_, rhs, MPFR_RNDN); return *this; }

XReal operator-(const XReal& x) { return unary(x, mpfr_neg); }

XReal operator+(const XReal& a, const XReal& b) { return binary(a, b, mpfr_add); }
XReal operator-(const XReal& a, const XReal& b) { return binary(a, b, mpfr_sub); }
XReal operator*(const XReal& a, const XReal& b) { return binary(a, b, mpfr_mul); }
XReal operator/(const XReal& a, const XReal& b) { return binary(a, b, mpfr_div); }

XReal operator+(const XReal& a, double b) { XReal r(a); r += b; return r; }
XReal operator-(const XReal& a, double b) { XReal r(a); r -= b; return r; }
XReal operator*(const XReal& a, double b) { XReal r(a); r *= b; return r; }
XReal operator/(const XReal& a, double b) { XReal r(a); r /= b; return r; }
XReal operator+(double a, const XReal& b) { return b + a; }
XReal operator-(double a, const XReal& b) {
  XReal r(b.precision());
  mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}
XReal operator*(double a, const XReal& b) { return b * a; }
XReal operator/(double a, const XReal& b) {
  XReal r(b.precision());
  mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const XReal& a, const XReal& b) noexcept {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const XReal& a, double b) noexcept {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const XReal& x) { return os << x.str(); }

XReal pi(Precision p) {
  XReal r(p);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

XReal abs(const XReal& x) { return unary(x, mpfr_abs); }
XReal sqrt(const XReal& x) { return unary(x, mpfr_sqrt); }
XReal exp(const XReal& x) { return unary(x, mpfr_exp); }
XReal expm1(const XReal& x) { return unary(x, mpfr_expm1); }
XReal log(const XReal& x) { return unary(x, mpfr_log); }
XReal log1p(const XReal& x) { return unary(x, mpfr_log1p); }
XReal sinh(const XReal& x) { return unary(x, mpfr_sinh); }
XReal cosh(const XReal& x) { return unary(x, mpfr_cosh); }
XReal tanh(const XReal& x) { return unary(x, mpfr_tanh); }
XReal erf(const XReal& x) { return unary(x, mpfr_erf); }
XReal square(const XReal& x) { return unary(x, mpfr_sqr); }

XReal pow(const XReal& base, const XReal& exponent) { return binary(base, exponent, mpfr_pow); }

XReal pow(const XReal& base, long exponent) {
  XReal r(base.precision());
  mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
  return r;
}

XReal ldexp(const XReal& x, long e) {
  XReal r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

XReal max(const XReal& a, const XReal& b) { return a < b ? b : a; }
XReal min(const XReal& a, const XReal& b) { return b < a ? b : a; }

double relative_difference(const XReal& a, const XReal& b) {
  const XReal diff = abs(a - b);
  if (b.is_zero()) return diff.to_double();
  return (diff / abs(b)).to_double();
}

}  // namespace rys
