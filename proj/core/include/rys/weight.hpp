#pragma once

#include <string>

#include "rys/xreal.hpp"

namespace rys {

inline constexpr unsigned kMinDigits = 30;

/// The pair (z, λ) of the weight (1 - x²)^(λ - 1/2) e^(-z x²) on (-1, 1)
/// plus the working precision.
///
/// Parameters are kept as decimal strings so they can be materialized
/// exactly rounded at any precision; machine doubles are converted through
/// their shortest round-trip representation, so 0.1 means the decimal 0.1.
class WeightParams {
 public:
  WeightParams(double z, double lambda, unsigned digits = kDefaultDigits);
  WeightParams(std::string z, std::string lambda, unsigned digits = kDefaultDigits);

  XReal z() const { return z(precision()); }
  XReal lambda() const { return lambda(precision()); }
  XReal z(Precision p) const { return XReal(z_text_, p); }
  XReal lambda(Precision p) const { return XReal(lambda_text_, p); }

  double z_value() const { return z_; }
  double lambda_value() const { return lambda_; }
  const std::string& z_text() const { return z_text_; }
  const std::string& lambda_text() const { return lambda_text_; }

  unsigned digits() const { return digits_; }
  Precision precision() const { return Precision(digits_); }

  /// z = 0: the weight reduces to the Gegenbauer weight.
  bool gegenbauer_limit() const { return z_ == 0; }

  WeightParams with_digits(unsigned digits) const;
  WeightParams with_z(double z) const;
  WeightParams with_z(std::string z) const;

  /// Pearson pair: (φ w)' = -ψ w with φ = 1 - x², ψ = (2z + 2λ + 1)x - 2z x³.
  XReal phi(const XReal& x) const;
  XReal psi(const XReal& x) const;
  XReal weight(const XReal& x) const;

  friend bool operator==(const WeightParams&, const WeightParams&) = default;

 private:
  void validate();

  std::string z_text_;
  std::string lambda_text_;
  double z_ = 0;
  double lambda_ = 0;
  unsigned digits_;
};

/// Shortest decimal text that parses back to `value`.
std::string shortest_decimal(double value);

}  // namespace rys
