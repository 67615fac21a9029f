#pragma once

// Extended-precision real numbers backed by GNU MPFR.
//
// Every XReal carries its own decimal precision. Binary operations produce a
// result at the larger of the two operand precisions, so arithmetic between
// values of precision d stays at precision d. Machine scalars adopt the
// precision of the XReal they are combined with. There is no global
// precision state, which keeps all numerics thread-safe.

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rys {

inline constexpr unsigned kDefaultDigits = 50;

/// Decimal-digit precision tag.
struct Precision {
  unsigned digits = kDefaultDigits;

  constexpr Precision() = default;
  constexpr explicit Precision(unsigned d) : digits(d) {}

  mpfr_prec_t bits() const noexcept;
  Precision plus(unsigned extra) const noexcept { return Precision(digits + extra); }

  friend constexpr bool operator==(Precision, Precision) = default;
  friend constexpr auto operator<=>(Precision, Precision) = default;
};

class XReal {
 public:
  XReal();
  explicit XReal(Precision p);
  XReal(double value, Precision p);
  template <std::integral I>
  XReal(I value, Precision p) : XReal(p) {
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
    } else {
      mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
    }
  }
  /// Parses a decimal literal ("2.5", "-0.4", "1e-3") exactly rounded.
  XReal(std::string_view decimal, Precision p);

  XReal(const XReal& other);
  XReal(XReal&& other) noexcept;
  XReal& operator=(const XReal& other);
  XReal& operator=(XReal&& other) noexcept;
  ~XReal();

  Precision precision() const noexcept { return Precision(digits_); }
  unsigned digits() const noexcept { return digits_; }

  /// Correctly rounded copy at another precision.
  XReal at(Precision p) const;

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  explicit operator double() const noexcept { return to_double(); }

  /// Scientific notation with `significant` digits (0 = all carried digits).
  std::string str(unsigned significant = 0) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  mpfr_srcptr raw() const noexcept { return v_; }
  mpfr_ptr raw() noexcept { return v_; }

  XReal& operator+=(const XReal& rhs);
  XReal& operator-=(const XReal& rhs);
  XReal& operator*=(const XReal& rhs);
  XReal& operator/=(const XReal& rhs);
  XReal& operator+=(double rhs);
  XReal& operator-=(double rhs);
  XReal& operator*=(double rhs);
  XReal& operator/=(double rhs);

  friend XReal operator-(const XReal& x);

  friend XReal operator+(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a, const XReal& b);
  friend XReal operator*(const XReal& a, const XReal& b);
  friend XReal operator/(const XReal& a, const XReal& b);

  friend XReal operator+(const XReal& a, double b);
  friend XReal operator-(const XReal& a, double b);
  friend XReal operator*(const XReal& a, double b);
  friend XReal operator/(const XReal& a, double b);
  friend XReal operator+(double a, const XReal& b);
  friend XReal operator-(double a, const XReal& b);
  friend XReal operator*(double a, const XReal& b);
  friend XReal operator/(double a, const XReal& b);

  friend bool operator==(const XReal& a, const XReal& b) noexcept {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const XReal& a, const XReal& b) noexcept;
  friend bool operator==(const XReal& a, double b) noexcept {
    return mpfr_cmp_d(a.v_, b) == 0 && !mpfr_nan_p(a.v_);
  }
  friend std::partial_ordering operator<=>(const XReal& a, double b) noexcept;

 private:
  mpfr_t v_;
  unsigned digits_;
};

std::ostream& operator<<(std::ostream& os, const XReal& x);

// Mixed integer arithmetic goes through double for small literals; integers
// beyond 2^53 are not used anywhere in this library.
template <std::integral I>
XReal operator+(const XReal& a, I b) { return a + static_cast<double>(b); }
template <std::integral I>
XReal operator-(const XReal& a, I b) { return a - static_cast<double>(b); }
template <std::integral I>
XReal operator*(const XReal& a, I b) { return a * static_cast<double>(b); }
template <std::integral I>
XReal operator/(const XReal& a, I b) { return a / static_cast<double>(b); }
template <std::integral I>
XReal operator+(I a, const XReal& b) { return static_cast<double>(a) + b; }
template <std::integral I>
XReal operator-(I a, const XReal& b) { return static_cast<double>(a) - b; }
template <std::integral I>
XReal operator*(I a, const XReal& b) { return static_cast<double>(a) * b; }
template <std::integral I>
XReal operator/(I a, const XReal& b) { return static_cast<double>(a) / b; }

XReal pi(Precision p);
XReal abs(const XReal& x);
XReal sqrt(const XReal& x);
XReal exp(const XReal& x);
XReal expm1(const XReal& x);
XReal log(const XReal& x);
XReal log1p(const XReal& x);
XReal pow(const XReal& base, const XReal& exponent);
XReal pow(const XReal& base, long exponent);
XReal sinh(const XReal& x);
XReal cosh(const XReal& x);
XReal tanh(const XReal& x);
XReal erf(const XReal& x);
XReal ldexp(const XReal& x, long e);
XReal square(const XReal& x);
XReal max(const XReal& a, const XReal& b);
XReal min(const XReal& a, const XReal& b);

/// |a - b| / |b| as a double; |a - b| when b is zero.
double relative_difference(const XReal& a, const XReal& b);

}  // namespace rys
