#include "volcusum/shape.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

SigmaShape::SigmaShape(Form form) : form_(std::move(form)) {
  if (const auto* c = std::get_if<Custom>(&form_); c && !c->sigma) {
    throw Error(ErrorKind::Config, "custom volatility shape has no function");
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = static_cast<double>(i) / 999.0;
    const double s = (*this)(u);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::Config, "volatility shape '" + name() +
                                         "' is not strictly positive at u = " +
                                         std::to_string(u));
    }
  }
}

SigmaShape SigmaShape::by_name(const std::string& name) {
  if (name == "flat") return flat();
  if (name == "slope") return slope();
  if (name == "sine") return sine();
  if (name == "ushape" || name == "u-shape") return ushape();
  throw Error(ErrorKind::Config, "unknown volatility shape '" + name + "'");
}

double SigmaShape::operator()(double u) const {
  return std::visit(overloaded{
                        [](const Flat& s) { return s.level; },
                        [u](const Slope& s) { return s.intercept + s.slope * u; },
                        [u](const Sine& s) { return s.amplitude * std::sin(kTwoPi * u) + s.level; },
                        [u](const UShape& s) { return (u - 0.5) * (u - 0.5) + s.offset; },
                        [u](const Custom& s) { return s.sigma(u); },
                    },
                    form_);
}

std::string SigmaShape::name() const {
  return std::visit(overloaded{
                        [](const Flat&) { return std::string("flat"); },
                        [](const Slope&) { return std::string("slope"); },
                        [](const Sine&) { return std::string("sine"); },
                        [](const UShape&) { return std::string("ushape"); },
                        [](const Custom& s) { return s.name; },
                    },
                    form_);
}

TimeChange::TimeChange(SigmaShape shape) : shape_(std::move(shape)) {}

double TimeChange::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const SigmaShape::Flat& s) { return s.level * s.level * t; },
          [t](const SigmaShape::Slope& s) {
            const double a = s.intercept, b = s.slope;
            return a * a * t + a * b * t * t + b * b * t * t * t / 3.0;
          },
          [t](const SigmaShape::Sine& s) {
            const double a = s.amplitude, b = s.level;
            const double sin_sq = t / 2.0 - std::sin(2.0 * kTwoPi * t) / (4.0 * kTwoPi);
            const double sin_int = (1.0 - std::cos(kTwoPi * t)) / kTwoPi;
            return a * a * sin_sq + 2.0 * a * b * sin_int + b * b * t;
          },
          [t](const SigmaShape::UShape& s) {
            const double c = s.offset;
            const double x = t - 0.5;
            const double quartic = (std::pow(x, 5) + std::pow(0.5, 5)) / 5.0;
            const double quadratic = (x * x * x + 0.125) / 3.0;
            return quartic + 2.0 * c * quadratic + c * c * t;
          },
          [this, t](const SigmaShape::Custom&) { return integrate(0.0, t); },
      },
      shape_.form());
}

double TimeChange::integrate(double a, double b) const {
  if (b <= a) return 0.0;
  const auto integrand = [this](double u) {
    const double s = shape_(u);
    return s * s;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 15,
                                                                        1e-12);
}

std::vector<double> TimeChange::increments(std::size_t intervals) const {
  std::vector<double> out(intervals);
  const double K = static_cast<double>(intervals);
  const bool custom = std::holds_alternative<SigmaShape::Custom>(shape_.form());
  double prev = 0.0;
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double lo = static_cast<double>(k - 1) / K;
    const double hi = static_cast<double>(k) / K;
    if (custom) {
      out[k - 1] = integrate(lo, hi);
    } else {
      const double cur = (*this)(hi);
      out[k - 1] = cur - prev;
      prev = cur;
    }
  }
  return out;
}

TimeChange time_change_integral(const SigmaShape& shape) { return TimeChange(shape); }

}  // namespace volcusum
