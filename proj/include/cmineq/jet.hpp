#pragma once

#include <span>
#include <vector>

namespace cmineq {

/// Highest jet order accepted by the library. Defaults to 16; the
/// environment variable CM_INEQ_MAX_ORDER (1..18) overrides it. The k!
/// factors that turn coefficients back into derivatives are exact doubles
/// only through 18!, so comparisons beyond that are not meaningful.
int jet_order_cap();

/// k! as an exact double for k <= 18 (beyond the jet order cap).
double exact_factorial(int k);

/// Truncated Taylor expansion of a smooth function about a point x0 > 0.
///
/// Coefficient k stores f^(k)(x0)/k!; raw derivatives only materialize in
/// derivative(). Keeping the coefficients Taylor-normalized keeps factorial
/// growth out of the recurrences. Every recurrence runs in a fixed ascending
/// summation order so results are reproducible bit-for-bit across runs.
///
/// Jets are immutable values; all operations are pure and safe to call
/// concurrently.
class Jet {
 public:
  /// Validates center > 0, order <= cap, and that every coefficient is a
  /// finite real.
  Jet(double center, std::vector<double> coeffs);

  /// Jet of the identity function: [x0, 1, 0, ...].
  static Jet variable(double x0, int order);

  /// Jet of a constant function: [value, 0, ...].
  static Jet constant(double value, double x0, int order);

  double center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int k) const;

  /// f(x0).
  double value() const { return coeffs_[0]; }

  /// f^(k)(x0) = k! * c_k, for 0 <= k <= order().
  double derivative(int k) const;

  Jet operator-() const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);

 private:
  double center_;
  std::vector<double> coeffs_;
};

/// exp(a) via e_k = (1/k) sum_{j=1..k} j a_j e_{k-j}.
Jet exp(const Jet& a);

/// ln(a) via the inverse recurrence; requires a.value() > 0.
Jet log(const Jet& a);

/// a^gamma for real gamma, computed as exp(gamma * log(a));
/// requires a.value() > 0.
Jet pow(const Jet& a, double gamma);

}  // namespace cmineq
