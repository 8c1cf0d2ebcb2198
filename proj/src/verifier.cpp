#include "cmineq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cmineq {

namespace {

constexpr double kStrictFloorFactor = 1e-12;
constexpr double kGenAbsTolerance = 1e-10;
constexpr double kGenEqualityBand = 1e-12;
constexpr int kBisectIterationCap = 200;

std::vector<double> fn_values(const CatalogFunction& fn, const NodeSet& nodes) {
  std::vector<double> out;
  out.reserve(nodes.nodes().size());
  for (double x : nodes.nodes()) out.push_back(fn.value(x));
  return out;
}

/// (-1)^(n-1)/(n-1)! * f^(n-1)(endpoint). An endpoint of exactly 0 or +inf
/// uses the closed-form limit; interior endpoints use the jet path.
ExtendedReal endpoint_bound(const CatalogFunction& fn, const ExtendedReal& e, int n) {
  const int k = n - 1;
  const double scale = ((k % 2 == 0) ? 1.0 : -1.0) / exact_factorial(k);
  ExtendedReal deriv;
  if (e.is_pos_infinity()) {
    deriv = fn.limit_deriv_inf(k);
  } else if (e.value() == 0.0) {
    deriv = fn.limit_deriv_zero(k);
  } else {
    deriv = ExtendedReal::finite(fn.eval_jet(e.value(), k).derivative(k));
  }
  return deriv.scaled(scale);
}

double strict_floor(double s_value, const ExtendedReal& bound) {
  const double b = bound.is_finite() ? std::abs(bound.value()) : 0.0;
  return kStrictFloorFactor * std::max(std::abs(s_value), b);
}

}  // namespace

std::string_view verdict_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::pass_nonstrict: return "pass_nonstrict";
    case Verdict::violation: return "violation";
  }
  return "?";
}

CmClassReport check_cm_class(const CatalogFunction& fn, std::span<const double> grid,
                             int max_order, double strictness_floor) {
  if (grid.empty()) throw std::invalid_argument("check_cm_class: empty grid");
  if (max_order < 1 || max_order > jet_order_cap()) {
    throw std::invalid_argument("check_cm_class: max_order must be in [1, jet_order_cap()]");
  }
  if (strictness_floor < 0.0) {
    throw std::invalid_argument("check_cm_class: strictness floor must be >= 0");
  }

  CmClassReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.max_order = max_order;
  report.strictness_floor = strictness_floor;
  report.worst_oriented = std::numeric_limits<double>::infinity();

  for (double x : grid) {
    const Jet j = fn.eval_jet(x, max_order);
    for (int n = 1; n <= max_order; ++n) {
      const double d = j.derivative(n);
      const double s = (n % 2 == 0) ? d : -d;  // (-1)^n f^(n)(x)
      ++report.checks;

      bool ok = false;
      double oriented = 0.0;  // >= 0 when the class condition holds
      switch (fn.cm_class()) {
        case CmClass::completely_increasing:
          oriented = -s;
          ok = s <= 0.0 && (!fn.strict() || -s > strictness_floor);
          break;
        case CmClass::completely_decreasing:
          oriented = s;
          ok = s >= 0.0 && (!fn.strict() || s > strictness_floor);
          break;
        case CmClass::both:
          oriented = -std::abs(s);
          ok = std::abs(s) <= strictness_floor || s == 0.0;
          break;
      }
      report.worst_oriented = std::min(report.worst_oriented, oriented);
      if (!ok) report.failures.push_back({x, n, s});
    }
  }
  return report;
}

SandwichResult check_sandwich(const CatalogFunction& fn, const NodeSet& nodes,
                              const ExtendedReal& a, const ExtendedReal& b,
                              double bound_perturbation) {
  if (!nodes.all_positive()) {
    throw std::invalid_argument("check_sandwich: all nodes must be positive");
  }
  if (!a.is_finite() || a.value() < 0.0 || a.value() > nodes.min()) {
    throw std::invalid_argument("check_sandwich: a must be finite with 0 <= a <= min(nodes)");
  }
  if (b.is_neg_infinity() || (b.is_finite() && b.value() < nodes.max())) {
    throw std::invalid_argument("check_sandwich: b must satisfy max(nodes) <= b <= inf");
  }

  const int n = nodes.size();
  const std::vector<double> values = fn_values(fn, nodes);

  SandwichResult r{fn,
                   nodes.nodes(),
                   n,
                   a,
                   b,
                   dd_newton(nodes, values).s_paper,
                   ExtendedReal(),
                   ExtendedReal(),
                   0.0,
                   0.0,
                   fn.strict(),
                   Verdict::pass};

  const ExtendedReal bound_a = endpoint_bound(fn, a, n);
  const ExtendedReal bound_b = endpoint_bound(fn, b, n);
  switch (fn.cm_class()) {
    case CmClass::completely_increasing:
      r.lower = bound_a;
      r.upper = bound_b;
      break;
    case CmClass::completely_decreasing:
      r.lower = bound_b;
      r.upper = bound_a;
      break;
    case CmClass::both:
      // Both orientations must hold at once, which pins S to the (equal)
      // bounds: lower = max, upper = min.
      r.lower = std::max(bound_a, bound_b);
      r.upper = std::min(bound_a, bound_b);
      break;
  }

  r.margin_lower = r.s_value - r.lower.as_double();
  r.margin_upper = r.upper.as_double() - r.s_value;
  r.margin_lower -= bound_perturbation;
  r.margin_upper -= bound_perturbation;

  const double tol_lower = violation_tolerance(r.lower.is_finite() ? r.lower.value() : 0.0);
  const double tol_upper = violation_tolerance(r.upper.is_finite() ? r.upper.value() : 0.0);
  if (r.margin_lower < -tol_lower || r.margin_upper < -tol_upper) {
    r.verdict = Verdict::violation;
  } else if (r.margin_lower > strict_floor(r.s_value, r.lower) &&
             r.margin_upper > strict_floor(r.s_value, r.upper)) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = Verdict::pass_nonstrict;
  }
  return r;
}

MvtResult find_mvt_witness(const CatalogFunction& fn, const NodeSet& nodes) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("find_mvt_witness: needs at least two nodes");
  }
  if (!nodes.all_positive()) {
    throw std::invalid_argument("find_mvt_witness: all nodes must be positive");
  }
  if (!fn.strict()) {
    throw std::invalid_argument(
        "find_mvt_witness: requires a strictly monotone derivative (strict catalog entry)");
  }

  const int n = nodes.size();
  const int k = n - 1;
  const std::vector<double> values = fn_values(fn, nodes);
  const double target = exact_factorial(k) * dd_newton(nodes, values).dd_standard;
  const double orient = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^(n-1)

  // g(x) = (-1)^(n-1) (f^(n-1)(x) - target) is monotone for strict entries;
  // the mean value theorem brackets its root in (m, M).
  auto g = [&](double x) {
    return orient * (fn.eval_jet(x, k).derivative(k) - target);
  };

  double lo = nodes.min();
  double hi = nodes.max();
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (g_lo == 0.0 || g_hi == 0.0) {
    // Root pinned to an endpoint within rounding; report the adjacent
    // interior point so the witness stays strictly inside (m, M).
    const double x0 = (g_lo == 0.0) ? std::nextafter(lo, hi) : std::nextafter(hi, lo);
    const double w = fn.eval_jet(x0, k).derivative(k);
    return {x0, target, w, std::abs(w - target), 0};
  }
  if ((g_lo < 0.0) == (g_hi < 0.0)) {
    throw convergence_error("find_mvt_witness: root not bracketed by (m, M)");
  }

  const double width_stop = 1e-14 * (hi - lo);
  int iterations = 0;
  while (hi - lo > width_stop && iterations < kBisectIterationCap) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in doubles
    const double g_mid = g(mid);
    ++iterations;
    if (g_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }

  MvtResult r;
  r.x0 = 0.5 * (lo + hi);
  r.target = target;
  r.witness_value = fn.eval_jet(r.x0, k).derivative(k);
  r.residual = std::abs(r.witness_value - target);
  r.iterations = iterations;

  const double residual_tolerance = 1e-10 * std::max(1.0, std::abs(target));
  if (r.residual > residual_tolerance) {
    throw convergence_error("find_mvt_witness: residual " + std::to_string(r.residual) +
                            " above tolerance after " + std::to_string(iterations) +
                            " iterations");
  }
  return r;
}

GenInequalityResult check_gen_inequality(const NodeSet& nodes, double bound_perturbation) {
  if (!nodes.all_nonnegative()) {
    throw std::invalid_argument("check_gen_inequality: nodes must be non-negative");
  }
  const auto& x = nodes.nodes();
  const int n = nodes.size();

  const std::vector<double> a = weights_a(nodes);
  std::vector<double> terms(a.size());
  bool has_zero_node = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    terms[i] = a[i] * std::log1p(x[i]);
    if (x[i] == 0.0) has_zero_node = true;
  }
  const double lhs = sorted_compensated_sum(std::move(terms));

  double prod = 1.0;
  for (double xi : x) prod *= xi;
  const double rhs = prod / n;

  GenInequalityResult r;
  r.nodes = x;
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs - bound_perturbation;
  r.equality_expected = has_zero_node;
  if (r.margin < -kGenAbsTolerance) {
    r.verdict = Verdict::violation;
  } else if (std::abs(r.margin) <= kGenEqualityBand) {
    r.verdict = Verdict::pass_nonstrict;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

double check_null_identity(const NodeSet& nodes) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("check_null_identity: needs at least two nodes");
  }
  const std::vector<double> ones(nodes.nodes().size(), 1.0);
  return dd_lagrange(nodes, ones).s_paper;
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  // splitmix64 finalizer over seed XOR index: order-independent trials.
  std::uint64_t z = (seed ^ trial_index) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& eng) {
  // 53 random bits into [0, 1); bit-identical on every conforming platform,
  // unlike std::uniform_real_distribution.
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& eng, double lo, double hi) {
  const double u = uniform01(eng);
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

NodeSet random_node_set(std::mt19937_64& eng, int n, double lo, double hi,
                        double separation_floor) {
  if (n < 1) throw std::invalid_argument("random_node_set: n must be >= 1");
  if (!(0.0 < lo && lo < hi)) {
    throw std::invalid_argument("random_node_set: need 0 < lo < hi");
  }
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> draw(static_cast<std::size_t>(n));
    for (double& v : draw) v = log_uniform(eng, lo, hi);
    std::vector<double> sorted(draw);
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] - sorted[i - 1] < separation_floor) {
        ok = false;
        break;
      }
    }
    if (ok) return NodeSet(std::move(draw), separation_floor);
  }
  throw std::runtime_error("random_node_set: separation constraint looks infeasible");
}

VerificationReport run_trials(const TrialCampaignConfig& config) {
  if (config.functions.empty() && config.run_sandwich) {
    throw std::invalid_argument("run_trials: empty function selection");
  }
  if (config.trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  if (config.n_min < 1 || config.n_max < config.n_min) {
    throw std::invalid_argument("run_trials: bad n range");
  }
  if (config.zero_node_every > 0 && config.run_sandwich) {
    throw std::invalid_argument(
        "run_trials: zero-node injection is incompatible with sandwich checks "
        "(they need positive nodes)");
  }

  VerificationReport report;
  report.config = config;
  report.summary.worst_margin = std::numeric_limits<double>::infinity();

  auto record = [&](Verdict v, std::initializer_list<double> margins) {
    ++report.summary.records;
    switch (v) {
      case Verdict::pass: ++report.summary.pass; break;
      case Verdict::pass_nonstrict: ++report.summary.pass_nonstrict; break;
      case Verdict::violation: ++report.summary.violation; break;
    }
    for (double m : margins) {
      if (std::isfinite(m)) report.summary.worst_margin = std::min(report.summary.worst_margin, m);
    }
  };

  const std::uint64_t n_span = static_cast<std::uint64_t>(config.n_max - config.n_min) + 1;

  for (long t = 0; t < config.trials; ++t) {
    std::mt19937_64 eng(derive_trial_seed(config.seed, static_cast<std::uint64_t>(t)));
    const int n = config.n_min + static_cast<int>(eng() % n_span);
    NodeSet nodes = random_node_set(eng, n, config.node_min, config.node_max,
                                    config.separation_floor);

    if (config.run_sandwich) {
      // Interior endpoints: log-uniform over four decades below m and one
      // decade above M; every 8th trial pins the endpoints to (m, M) to
      // exercise strictness at the boundary of the admissible window.
      double a_interior = log_uniform(eng, nodes.min() * 1e-4, nodes.min());
      double b_interior = log_uniform(eng, nodes.max(), nodes.max() * 10.0);
      if (t % 8 == 7) {
        a_interior = nodes.min();
        b_interior = nodes.max();
      }
      for (const CatalogFunction& fn : config.functions) {
        SandwichResult limit_case = check_sandwich(fn, nodes, ExtendedReal::finite(0.0),
                                                   ExtendedReal::pos_infinity(),
                                                   config.bound_perturbation);
        record(limit_case.verdict, {limit_case.margin_lower, limit_case.margin_upper});
        report.sandwich.push_back(std::move(limit_case));

        SandwichResult interior_case = check_sandwich(fn, nodes,
                                                      ExtendedReal::finite(a_interior),
                                                      ExtendedReal::finite(b_interior),
                                                      config.bound_perturbation);
        record(interior_case.verdict, {interior_case.margin_lower, interior_case.margin_upper});
        report.sandwich.push_back(std::move(interior_case));
      }
    }

    if (config.run_gen) {
      NodeSet gen_nodes = nodes;
      if (config.zero_node_every > 0 && t % config.zero_node_every == 0) {
        std::vector<double> with_zero = nodes.nodes();
        with_zero[0] = 0.0;
        gen_nodes = NodeSet(std::move(with_zero), config.separation_floor);
      }
      GenInequalityResult g = check_gen_inequality(gen_nodes, config.bound_perturbation);
      record(g.verdict, {g.margin});
      report.gen.push_back(std::move(g));
    }
  }
  return report;
}

}  // namespace cmineq
