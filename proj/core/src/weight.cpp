#include "rys/weight.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "rys/errors.hpp"

namespace rys {

std::string shortest_decimal(double value) {
  if (!std::isfinite(value)) throw DomainError("parameter must be finite");
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format parameter");
  return std::string(buffer.data(), end);
}

WeightParams::WeightParams(double z, double lambda, unsigned digits)
    : WeightParams(shortest_decimal(z), shortest_decimal(lambda), digits) {}

WeightParams::WeightParams(std::string z, std::string lambda, unsigned digits)
    : z_text_(std::move(z)), lambda_text_(std::move(lambda)), digits_(digits) {
  validate();
}

void WeightParams::validate() {
  if (digits_ < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) + " digits");
  }
  const Precision p(digits_);
  XReal z(p), lambda(p);
  try {
    z = XReal(z_text_, p);
    lambda = XReal(lambda_text_, p);
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
  if (!z.is_finite() || !lambda.is_finite()) throw DomainError("parameters must be finite");
  if (z < 0) throw DomainError("z must be nonnegative, got " + z_text_);
  if (!(lambda > -0.5)) throw DomainError("lambda must exceed -1/2, got " + lambda_text_);
  z_ = z.to_double();
  lambda_ = lambda.to_double();
}

WeightParams WeightParams::with_digits(unsigned digits) const {
  WeightParams out = *this;
  out.digits_ = digits;
  out.validate();
  return out;
}

WeightParams WeightParams::with_z(double z) const { return with_z(shortest_decimal(z)); }

WeightParams WeightParams::with_z(std::string z) const {
  return WeightParams(std::move(z), lambda_text_, digits_);
}

XReal WeightParams::phi(const XReal& x) const { return 1 - square(x); }

XReal WeightParams::psi(const XReal& x) const {
  const Precision p = x.precision();
  const XReal zz = z(p);
  return (2 * zz + 2 * lambda(p) + 1) * x - 2 * zz * x * square(x);
}

XReal WeightParams::weight(const XReal& x) const {
  const Precision p = x.precision();
  const XReal x2 = square(x);
  return pow(1 - x2, lambda(p) - 0.5) * exp(-z(p) * x2);
}

}  // namespace rys
