#include "cmineq/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cmineq {

namespace {

// Below this point the ln(1+x)/x jets come from the alternating series
// instead of the ln-then-divide composition. Dividing by the identity jet
// amplifies rounding like eps/x^k in coefficient k, so the composition only
// holds ~1e-10 accuracy at every supported order for x above ~0.6.
constexpr double kLog1pSeriesThreshold = 0.6;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("CatalogFunction: parameter ") + name +
                                " must be a positive finite real");
  }
}

double checked_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("CatalogFunction: evaluation point must be in (0, inf)");
  }
  return x;
}

int checked_limit_order(int k) {
  if (k < 0) throw std::invalid_argument("CatalogFunction: derivative order must be >= 0");
  return k;
}

// prod_{j=0..k-1} (-gamma - j), i.e. binom(-gamma, k) * k! as an explicit
// product (exact for small k, no gamma-log branch issues).
double falling_product(double gamma, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= -gamma - j;
  return p;
}

// Jet of ln(1+x)/x at a center below the series threshold, from the
// coefficients of sum_m (-1)^m x^m/(m+1) recentered by Horner evaluation in
// the identity jet. The term count grows with the center so the truncation
// tail stays below ~1e-30 at every coefficient up to the order cap.
Jet log1p_over_x_series_jet(double x, int order) {
  const int top = order + 24 + static_cast<int>(420.0 * x);
  const Jet X = Jet::variable(x, order);
  Jet acc = Jet::constant(((top % 2 == 0) ? 1.0 : -1.0) / (top + 1), x, order);
  for (int m = top - 1; m >= 0; --m) {
    acc = acc * X + (((m % 2 == 0) ? 1.0 : -1.0) / (m + 1));
  }
  return acc;
}

}  // namespace

CatalogFunction::CatalogFunction(FnId id, CmClass c, bool strict, double a, double b, double g)
    : id_(id), cm_class_(c), strict_(strict), alpha_(a), beta_(b), gamma_(g) {}

CatalogFunction CatalogFunction::const_one() {
  return CatalogFunction(FnId::const_one, CmClass::both, false, 0, 0, 0);
}

CatalogFunction CatalogFunction::log1p_over_x() {
  return CatalogFunction(FnId::log1p_over_x, CmClass::completely_decreasing, true, 0, 0, 0);
}

CatalogFunction CatalogFunction::moebius_ratio(double alpha) {
  require_positive(alpha, "alpha");
  return CatalogFunction(FnId::moebius_ratio, CmClass::completely_increasing, true, alpha, 0, 0);
}

CatalogFunction CatalogFunction::log_ratio(double alpha, double beta) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  if (!(alpha < beta)) {
    throw std::invalid_argument("CatalogFunction: log-ratio requires 0 < alpha < beta");
  }
  return CatalogFunction(FnId::log_ratio, CmClass::completely_increasing, true, alpha, beta, 0);
}

CatalogFunction CatalogFunction::exp_decay(double alpha) {
  require_positive(alpha, "alpha");
  return CatalogFunction(FnId::exp_decay, CmClass::completely_decreasing, true, alpha, 0, 0);
}

CatalogFunction CatalogFunction::power_decay(double alpha, double beta, double gamma) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  return CatalogFunction(FnId::power_decay, CmClass::completely_decreasing, true, alpha, beta,
                         gamma);
}

std::string CatalogFunction::id_string_for(FnId id) {
  switch (id) {
    case FnId::const_one: return "const-one";
    case FnId::log1p_over_x: return "log1p-over-x";
    case FnId::moebius_ratio: return "moebius-ratio";
    case FnId::log_ratio: return "log-ratio";
    case FnId::exp_decay: return "exp-decay";
    case FnId::power_decay: return "power-decay";
  }
  return "?";
}

std::string CatalogFunction::id_string() const { return id_string_for(id_); }

std::string CatalogFunction::cm_class_string(CmClass c) {
  switch (c) {
    case CmClass::completely_increasing: return "completely-increasing";
    case CmClass::completely_decreasing: return "completely-decreasing";
    case CmClass::both: return "both";
  }
  return "?";
}

std::vector<std::string> CatalogFunction::param_names(FnId id) {
  switch (id) {
    case FnId::const_one:
    case FnId::log1p_over_x: return {};
    case FnId::moebius_ratio:
    case FnId::exp_decay: return {"alpha"};
    case FnId::log_ratio: return {"alpha", "beta"};
    case FnId::power_decay: return {"alpha", "beta", "gamma"};
  }
  return {};
}

std::vector<std::pair<std::string, double>> CatalogFunction::params() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& name : param_names(id_)) {
    double v = name == "alpha" ? alpha_ : name == "beta" ? beta_ : gamma_;
    out.emplace_back(name, v);
  }
  return out;
}

std::string CatalogFunction::display() const {
  std::string s = id_string();
  auto ps = params();
  if (ps.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s=%.17g", ps[i].first.c_str(), ps[i].second);
    s += buf;
    if (i + 1 < ps.size()) s += ",";
  }
  s += ")";
  return s;
}

const std::vector<std::string>& CatalogFunction::all_id_strings() {
  static const std::vector<std::string> ids = {
      "const-one", "log1p-over-x", "moebius-ratio", "log-ratio", "exp-decay", "power-decay"};
  return ids;
}

double CatalogFunction::value(double x) const {
  checked_x(x);
  switch (id_) {
    case FnId::const_one: return 1.0;
    case FnId::log1p_over_x: return std::log1p(x) / x;
    case FnId::moebius_ratio: return x / (alpha_ + x);
    case FnId::log_ratio:
      // ln(beta(x+alpha)/(alpha(x+beta))) = log1p((beta-alpha)x / (alpha(x+beta)));
      // the log1p form keeps full precision near x = 0 where the ratio -> 1.
      return std::log1p((beta_ - alpha_) * x / (alpha_ * (x + beta_)));
    case FnId::exp_decay: return std::exp(-alpha_ * x);
    case FnId::power_decay: return std::pow(alpha_ + beta_ * x, -gamma_);
  }
  return 0.0;
}

Jet CatalogFunction::eval_jet(double x, int order) const {
  checked_x(x);
  if (order < 0) throw std::invalid_argument("eval_jet: negative order");
  if (order > jet_order_cap()) {
    throw std::invalid_argument("eval_jet: order exceeds the jet order cap");
  }
  const Jet X = Jet::variable(x, order);
  switch (id_) {
    case FnId::const_one: return Jet::constant(1.0, x, order);
    case FnId::log1p_over_x:
      if (x < kLog1pSeriesThreshold) return log1p_over_x_series_jet(x, order);
      return log(X + 1.0) / X;
    case FnId::moebius_ratio: return X / (X + alpha_);
    case FnId::log_ratio: return log(X + alpha_) - log(X + beta_) + std::log(beta_ / alpha_);
    case FnId::exp_decay: return exp(X * (-alpha_));
    case FnId::power_decay: return pow(X * beta_ + alpha_, -gamma_);
  }
  return Jet::constant(0.0, x, order);
}

ExtendedReal CatalogFunction::limit_deriv_zero(int k) const {
  checked_limit_order(k);
  switch (id_) {
    case FnId::const_one: return ExtendedReal::finite(k == 0 ? 1.0 : 0.0);
    case FnId::log1p_over_x:
      // (-1)^k k!/(k+1), the k-th derivative of 1 - x/2 + x^2/3 - ... at 0+.
      return ExtendedReal::finite(((k % 2 == 0) ? 1.0 : -1.0) * exact_factorial(k) / (k + 1));
    case FnId::moebius_ratio: {
      if (k == 0) return ExtendedReal::finite(0.0);
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
      return ExtendedReal::finite(sign * exact_factorial(k) / std::pow(alpha_, k));
    }
    case FnId::log_ratio: {
      if (k == 0) return ExtendedReal::finite(0.0);
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
      return ExtendedReal::finite(sign * exact_factorial(k - 1) *
                                  (std::pow(alpha_, -k) - std::pow(beta_, -k)));
    }
    case FnId::exp_decay:
      return ExtendedReal::finite(((k % 2 == 0) ? 1.0 : -1.0) * std::pow(alpha_, k));
    case FnId::power_decay:
      return ExtendedReal::finite(std::pow(beta_, k) * falling_product(gamma_, k) *
                                  std::pow(alpha_, -gamma_ - k));
  }
  return ExtendedReal::finite(0.0);
}

ExtendedReal CatalogFunction::limit_deriv_inf(int k) const {
  checked_limit_order(k);
  switch (id_) {
    case FnId::const_one: return ExtendedReal::finite(k == 0 ? 1.0 : 0.0);
    case FnId::log1p_over_x: return ExtendedReal::finite(0.0);
    case FnId::moebius_ratio: return ExtendedReal::finite(k == 0 ? 1.0 : 0.0);
    case FnId::log_ratio:
      return ExtendedReal::finite(k == 0 ? std::log(beta_ / alpha_) : 0.0);
    case FnId::exp_decay: return ExtendedReal::finite(0.0);
    case FnId::power_decay: return ExtendedReal::finite(0.0);
  }
  return ExtendedReal::finite(0.0);
}

CatalogFunction make_catalog_function(const std::string& id_string, double alpha, double beta,
                                      double gamma) {
  const bool has_a = !std::isnan(alpha);
  const bool has_b = !std::isnan(beta);
  const bool has_g = !std::isnan(gamma);
  auto require = [&](bool a, bool b, bool g) {
    if (has_a != a || has_b != b || has_g != g) {
      std::string expected;
      if (!a && !b && !g) expected = "no parameters";
      if (a) expected += "--alpha";
      if (b) expected += expected.empty() ? "--beta" : ", --beta";
      if (g) expected += expected.empty() ? "--gamma" : ", --gamma";
      throw std::invalid_argument("function '" + id_string + "' takes " + expected);
    }
  };
  if (id_string == "const-one") {
    require(false, false, false);
    return CatalogFunction::const_one();
  }
  if (id_string == "log1p-over-x") {
    require(false, false, false);
    return CatalogFunction::log1p_over_x();
  }
  if (id_string == "moebius-ratio") {
    require(true, false, false);
    return CatalogFunction::moebius_ratio(alpha);
  }
  if (id_string == "log-ratio") {
    require(true, true, false);
    return CatalogFunction::log_ratio(alpha, beta);
  }
  if (id_string == "exp-decay") {
    require(true, false, false);
    return CatalogFunction::exp_decay(alpha);
  }
  if (id_string == "power-decay") {
    require(true, true, true);
    return CatalogFunction::power_decay(alpha, beta, gamma);
  }
  throw std::invalid_argument("unknown function id '" + id_string +
                              "'; see `catalog list` for the available ids");
}

}  // namespace cmineq
