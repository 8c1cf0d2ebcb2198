#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmineq/extended_real.hpp"
#include "cmineq/jet.hpp"

namespace cmineq {

enum class FnId {
  const_one,      // f(x) = 1
  log1p_over_x,   // f(x) = ln(1+x)/x
  moebius_ratio,  // f(x) = x/(alpha+x)
  log_ratio,      // f(x) = ln(beta(x+alpha)/(alpha(x+beta))), 0 < alpha < beta
  exp_decay,      // f(x) = e^(-alpha x)
  power_decay,    // f(x) = (alpha+beta x)^(-gamma)
};

/// Sign class on (0,inf): completely_increasing means (-1)^n f^(n) <= 0 for
/// all n >= 1, completely_decreasing means >= 0; the constant function
/// satisfies both.
enum class CmClass { completely_increasing, completely_decreasing, both };

/// A parameterized completely monotone function with a jet evaluator and
/// closed-form endpoint derivative limits.
///
/// Instances are immutable values; every operation is pure and safe to call
/// concurrently. Limits are evaluated from closed forms on demand (never
/// cached tables), so parameter sweeps stay exact.
class CatalogFunction {
 public:
  static CatalogFunction const_one();
  static CatalogFunction log1p_over_x();
  static CatalogFunction moebius_ratio(double alpha);
  static CatalogFunction log_ratio(double alpha, double beta);
  static CatalogFunction exp_decay(double alpha);
  static CatalogFunction power_decay(double alpha, double beta, double gamma);

  FnId id() const { return id_; }
  CmClass cm_class() const { return cm_class_; }
  bool strict() const { return strict_; }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  /// Stable identifier used by the CLI and reports, e.g. "exp-decay".
  std::string id_string() const;
  /// Identifier with parameters, e.g. "exp-decay(alpha=1)".
  std::string display() const;
  /// (name, value) pairs of the parameters this function takes.
  std::vector<std::pair<std::string, double>> params() const;

  /// f(x), evaluated directly (not through jets), x > 0.
  double value(double x) const;

  /// Jet of f at x > 0 with the given order (<= jet_order_cap()).
  Jet eval_jet(double x, int order) const;

  /// lim_{x->0+} f^(k)(x), from the closed forms.
  ExtendedReal limit_deriv_zero(int k) const;

  /// lim_{x->inf} f^(k)(x), from the closed forms.
  ExtendedReal limit_deriv_inf(int k) const;

  /// All identifier strings, in catalog order.
  static const std::vector<std::string>& all_id_strings();
  /// Parameter names for an id, in declaration order.
  static std::vector<std::string> param_names(FnId id);
  static std::string id_string_for(FnId id);
  static std::string cm_class_string(CmClass c);

 private:
  CatalogFunction(FnId id, CmClass c, bool strict, double a, double b, double g);

  FnId id_;
  CmClass cm_class_;
  bool strict_;
  double alpha_;
  double beta_;
  double gamma_;
};

/// Builds a catalog function from its CLI identifier and the parameters the
/// caller supplied (NaN for "not given"). Throws std::invalid_argument with
/// a usage-style diagnostic on unknown ids, missing or extra parameters.
CatalogFunction make_catalog_function(const std::string& id_string, double alpha, double beta,
                                      double gamma);

}  // namespace cmineq
