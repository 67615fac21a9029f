#include "rys/tanh_sinh.hpp"

#include <cmath>
#include <string>

#include "rys/errors.hpp"

namespace rys {

namespace {

constexpr double kMaxAbscissa = 10.0;  // s = (π/2) sinh 10 ≈ 1.7e4, still representable
constexpr double kMinTailAbscissa = 3.0;

class Accumulator {
 public:
  Accumulator(const TanhSinhIntegrand& f, std::size_t count, Precision p)
      : f_(f), p_(p), half_pi_(pi(p) / 2), buffer_(count, XReal(p)), sums_(count, XReal(p)),
        cutoff_(pow(XReal(10, p), -static_cast<long>(p.digits + 5))) {}

  // Adds f(x(t)) w(t) for t and -t; returns false once every contribution
  // is negligible against the running sums.
  bool add_pair(const XReal& t) {
    bool significant = add(t);
    significant = add(-t) || significant;
    return significant;
  }

  void add_center() { add(XReal(p_)); }

  std::vector<XReal>& sums() { return sums_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  bool add(const XReal& t) {
    const XReal s = half_pi_ * sinh(t);
    const XReal c = cosh(s);
    const XReal e = exp(s);
    TanhSinhNode node{tanh(s), 1 / (e * c), e / c};
    const XReal w = half_pi_ * cosh(t) / square(c);

    for (auto& b : buffer_) b = XReal(p_);
    f_(node, buffer_);
    ++evaluations_;

    bool significant = false;
    for (std::size_t i = 0; i < sums_.size(); ++i) {
      const XReal term = buffer_[i] * w;
      sums_[i] += term;
      if (!(abs(term) <= cutoff_ * abs(sums_[i]))) significant = true;
    }
    return significant;
  }

  const TanhSinhIntegrand& f_;
  Precision p_;
  XReal half_pi_;
  std::vector<XReal> buffer_;
  std::vector<XReal> sums_;
  XReal cutoff_;
  std::size_t evaluations_ = 0;
};

// Sweeps t = offset + k·stride for k = 0, 1, ... until the tail is negligible.
void sweep(Accumulator& acc, const XReal& offset, const XReal& stride) {
  for (XReal t = offset; t <= kMaxAbscissa; t += stride) {
    if (!acc.add_pair(t) && t >= kMinTailAbscissa) return;
  }
}

}  // namespace

TanhSinhResult tanh_sinh(const TanhSinhIntegrand& f, std::size_t count, Precision p,
                         double agreement_digits, unsigned max_level) {
  const Precision q = p.plus(10);
  Accumulator acc(f, count, q);

  // Level 0: step 1 over the integers.
  acc.add_center();
  sweep(acc, XReal(1, q), XReal(1, q));

  TanhSinhResult result;
  std::vector<XReal> previous = acc.sums();
  const double tolerance = std::pow(10.0, -agreement_digits);

  XReal h(1, q);
  for (unsigned level = 1; level <= max_level; ++level) {
    // New abscissae are the odd multiples of the halved step.
    const XReal stride = h;
    h /= 2;
    sweep(acc, h, stride);

    double change = 0;
    std::vector<XReal> current;
    current.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      current.push_back(acc.sums()[i] * h);
      if (!current[i].is_zero() || !previous[i].is_zero()) {
        const XReal scale = max(abs(current[i]), abs(previous[i]));
        change = std::max(change, (abs(current[i] - previous[i]) / scale).to_double());
      }
    }

    if (change < tolerance) {
      result.level = level;
      result.max_relative_change = change;
      result.evaluations = acc.evaluations();
      result.values.reserve(count);
      for (auto& v : current) result.values.push_back(v.at(p));
      return result;
    }
    previous = std::move(current);
  }
  throw ConvergenceError("tanh-sinh did not reach " + std::to_string(agreement_digits) +
                         " digits of agreement within " + std::to_string(max_level) + " levels");
}

}  // namespace rys
