#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace volcusum {

/// Deterministic intraday volatility function sigma(u) on [0, 1].
///
/// The four parametric families have closed-form time changes
/// G(t) = int_0^t sigma(u)^2 du; custom functions are integrated numerically.
class SigmaShape {
 public:
  struct Flat { double level; };
  struct Slope { double intercept; double slope; };
  struct Sine { double amplitude; double level; };      // a sin(2 pi u) + b
  struct UShape { double offset; };                     // (u - 1/2)^2 + c
  struct Custom { std::string name; std::function<double(double)> sigma; };

  using Form = std::variant<Flat, Slope, Sine, UShape, Custom>;

  /// Throws Error(Config) if sigma is not strictly positive on a 1000-point grid.
  explicit SigmaShape(Form form);

  static SigmaShape flat(double level = 0.2) { return SigmaShape(Flat{level}); }
  static SigmaShape slope(double intercept = 0.1, double slope = 0.2) {
    return SigmaShape(Slope{intercept, slope});
  }
  static SigmaShape sine(double amplitude = 0.1, double level = 0.2) {
    return SigmaShape(Sine{amplitude, level});
  }
  static SigmaShape ushape(double offset = 0.1145299) { return SigmaShape(UShape{offset}); }
  static SigmaShape custom(std::string name, std::function<double(double)> sigma) {
    return SigmaShape(Custom{std::move(name), std::move(sigma)});
  }

  /// Looks up "flat", "slope", "sine" or "ushape" with default parameters.
  static SigmaShape by_name(const std::string& name);

  double operator()(double u) const;
  const Form& form() const { return form_; }
  std::string name() const;

 private:
  Form form_;
};

/// Cumulative integrated variance G(t) = int_0^t sigma^2(u) du.
class TimeChange {
 public:
  explicit TimeChange(SigmaShape shape);

  double operator()(double t) const;
  /// G(1).
  double total() const { return (*this)(1.0); }
  /// G(k/K) - G((k-1)/K) for k = 1..K; for custom shapes each interval is
  /// integrated separately.
  std::vector<double> increments(std::size_t intervals) const;

  const SigmaShape& shape() const { return shape_; }

 private:
  double integrate(double a, double b) const;

  SigmaShape shape_;
};

/// The clock G for `shape`. Closed form for the parametric families, adaptive
/// Gauss-Kronrod quadrature (tolerance 1e-12) for custom shapes.
TimeChange time_change_integral(const SigmaShape& shape);

}  // namespace volcusum
