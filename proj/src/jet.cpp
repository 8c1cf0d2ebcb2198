#include "cmineq/jet.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cmineq {

namespace {

constexpr int kDefaultOrderCap = 16;
// 18! is the last factorial exactly representable in a double; derivative
// extraction beyond that cannot be trusted, so the env override stops there.
constexpr int kHardOrderCap = 18;

int read_order_cap_from_env() {
  const char* s = std::getenv("CM_INEQ_MAX_ORDER");
  if (s == nullptr || *s == '\0') return kDefaultOrderCap;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1 || v > kHardOrderCap) {
    return kDefaultOrderCap;
  }
  return static_cast<int>(v);
}

void require_same_frame(const Jet& a, const Jet& b) {
  if (a.center() != b.center()) {
    throw std::invalid_argument("jet arithmetic: operands have different centers");
  }
  if (a.order() != b.order()) {
    throw std::invalid_argument("jet arithmetic: operands have different orders");
  }
}

}  // namespace

int jet_order_cap() {
  static const int cap = read_order_cap_from_env();
  return cap;
}

double exact_factorial(int k) {
  if (k < 0) throw std::invalid_argument("exact_factorial: negative argument");
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Jet::Jet(double center, std::vector<double> coeffs)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (!(center_ > 0.0) || !std::isfinite(center_)) {
    throw std::invalid_argument("Jet: center must be a positive finite real");
  }
  if (coeffs_.empty()) {
    throw std::invalid_argument("Jet: needs at least the order-0 coefficient");
  }
  if (static_cast<int>(coeffs_.size()) - 1 > jet_order_cap()) {
    throw std::invalid_argument("Jet: order " + std::to_string(coeffs_.size() - 1) +
                                " exceeds the cap of " + std::to_string(jet_order_cap()));
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw std::domain_error("Jet: non-finite coefficient");
    }
  }
}

Jet Jet::variable(double x0, int order) {
  if (order < 0) throw std::invalid_argument("Jet::variable: negative order");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = x0;
  if (order >= 1) c[1] = 1.0;
  return Jet(x0, std::move(c));
}

Jet Jet::constant(double value, double x0, int order) {
  if (order < 0) throw std::invalid_argument("Jet::constant: negative order");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return Jet(x0, std::move(c));
}

double Jet::coeff(int k) const {
  if (k < 0 || k > order()) {
    throw std::invalid_argument("Jet::coeff: index out of range");
  }
  return coeffs_[static_cast<std::size_t>(k)];
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order()) {
    throw std::invalid_argument("Jet::derivative: order out of range");
  }
  return exact_factorial(k) * coeffs_[static_cast<std::size_t>(k)];
}

Jet Jet::operator-() const {
  std::vector<double> c(coeffs_);
  for (double& v : c) v = -v;
  return Jet(center_, std::move(c));
}

Jet operator+(const Jet& a, const Jet& b) {
  require_same_frame(a, b);
  std::vector<double> c(a.coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs_[k];
  return Jet(a.center_, std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  require_same_frame(a, b);
  std::vector<double> c(a.coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.coeffs_[k];
  return Jet(a.center_, std::move(c));
}

// Cauchy product, ascending j with the terms j and k-j paired. The pairing
// makes the product exactly commutative: swapping the operands swaps the two
// IEEE products inside each pair, and IEEE addition of two values is
// commutative.
Jet operator*(const Jet& a, const Jet& b) {
  require_same_frame(a, b);
  const std::size_t n = a.coeffs_.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; 2 * j < k; ++j) {
      s += a.coeffs_[j] * b.coeffs_[k - j] + a.coeffs_[k - j] * b.coeffs_[j];
    }
    if (k % 2 == 0) s += a.coeffs_[k / 2] * b.coeffs_[k / 2];
    c[k] = s;
  }
  return Jet(a.center_, std::move(c));
}

// Forward substitution: q_k = (a_k - sum_{j<k} q_j b_{k-j}) / b_0.
Jet operator/(const Jet& a, const Jet& b) {
  require_same_frame(a, b);
  if (b.coeffs_[0] == 0.0) {
    throw std::domain_error("jet division: divisor has zero constant term");
  }
  const std::size_t n = a.coeffs_.size();
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = a.coeffs_[k];
    for (std::size_t j = 0; j < k; ++j) {
      s -= q[j] * b.coeffs_[k - j];
    }
    q[k] = s / b.coeffs_[0];
  }
  return Jet(a.center_, std::move(q));
}

Jet operator+(const Jet& a, double s) {
  std::vector<double> c(a.coeffs_);
  c[0] += s;
  return Jet(a.center_, std::move(c));
}

Jet operator+(double s, const Jet& a) { return a + s; }

Jet operator-(const Jet& a, double s) { return a + (-s); }

Jet operator-(double s, const Jet& a) { return (-a) + s; }

Jet operator*(const Jet& a, double s) {
  std::vector<double> c(a.coeffs_);
  for (double& v : c) v *= s;
  return Jet(a.center_, std::move(c));
}

Jet operator*(double s, const Jet& a) { return a * s; }

Jet operator/(const Jet& a, double s) {
  if (s == 0.0) throw std::domain_error("jet division: zero scalar divisor");
  std::vector<double> c(a.coeffs_);
  for (double& v : c) v /= s;
  return Jet(a.center_, std::move(c));
}

Jet exp(const Jet& a) {
  const int n = a.order();
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = std::exp(a.coeff(0));
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
      s += static_cast<double>(j) * a.coeff(j) * e[static_cast<std::size_t>(k - j)];
    }
    e[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
  }
  return Jet(a.center(), std::move(e));
}

Jet log(const Jet& a) {
  if (!(a.coeff(0) > 0.0)) {
    throw std::domain_error("jet log: constant term must be positive");
  }
  const int n = a.order();
  std::vector<double> l(static_cast<std::size_t>(n) + 1, 0.0);
  l[0] = std::log(a.coeff(0));
  for (int k = 1; k <= n; ++k) {
    double s = static_cast<double>(k) * a.coeff(k);
    for (int j = 1; j < k; ++j) {
      s -= static_cast<double>(j) * l[static_cast<std::size_t>(j)] * a.coeff(k - j);
    }
    l[static_cast<std::size_t>(k)] = s / (static_cast<double>(k) * a.coeff(0));
  }
  return Jet(a.center(), std::move(l));
}

Jet pow(const Jet& a, double gamma) {
  if (!(a.coeff(0) > 0.0)) {
    throw std::domain_error("jet pow: constant term must be positive");
  }
  return exp(log(a) * gamma);
}

}  // namespace cmineq
