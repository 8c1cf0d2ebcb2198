#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cmineq/serialize.hpp"
#include "cmineq/verifier.hpp"
#include "oracles.hpp"

using cmineq::CatalogFunction;
using cmineq::check_cm_class;
using cmineq::check_gen_inequality;
using cmineq::check_null_identity;
using cmineq::check_sandwich;
using cmineq::ExtendedReal;
using cmineq::find_mvt_witness;
using cmineq::NodeSet;
using cmineq::Verdict;

namespace {

const ExtendedReal kZero = ExtendedReal::finite(0.0);
const ExtendedReal kInf = ExtendedReal::pos_infinity();

}  // namespace

TEST_CASE("sign-condition checks over a grid") {
  const std::vector<double> grid = {0.5, 1.0, 2.0};

  SUBCASE("e^-x passes strictly through order 6") {
    const auto r = check_cm_class(CatalogFunction::exp_decay(1), grid, 6);
    CHECK(r.pass());
    CHECK(r.checks == 18);
    CHECK(r.worst_oriented > 0.0);
  }
  SUBCASE("the constant function passes both classes non-strictly") {
    const auto r = check_cm_class(CatalogFunction::const_one(), grid, 6);
    CHECK(r.pass());
    CHECK(r.worst_oriented == 0.0);
  }
  SUBCASE("x/(1+x): (-1)^1 f'(1) = -1/4, consistent with increasing") {
    const auto r = check_cm_class(CatalogFunction::moebius_ratio(1), {{1.0}}, 1);
    CHECK(r.pass());
    CHECK(r.worst_oriented == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("every canonical entry passes at its declared class") {
    for (const auto& fn : oracle::canonical_catalog()) {
      const auto r = check_cm_class(fn, oracle::log_spaced(0.2, 20.0, 9), 8);
      INFO(fn.display());
      CHECK(r.pass());
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(check_cm_class(CatalogFunction::const_one(), {}, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_cm_class(CatalogFunction::const_one(), grid, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_cm_class(CatalogFunction::const_one(), grid, 99),
                    std::invalid_argument);
  }
}

TEST_CASE("sandwich check on fixed examples") {
  SUBCASE("e^-x over (1,2) with the limit endpoints") {
    const auto r = check_sandwich(CatalogFunction::exp_decay(1), NodeSet({1.0, 2.0}),
                                  kZero, kInf);
    CHECK(r.s_value == doctest::Approx(std::exp(-1) - std::exp(-2)).epsilon(1e-14));
    CHECK(r.lower.value() == 0.0);
    CHECK(r.upper.value() == 1.0);  // alpha^(n-1)/(n-1)! = 1
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.margin_lower > 0.0);
    CHECK(r.margin_upper > 0.0);
  }
  SUBCASE("ln(1+x)/x is pinned inside (0, 1/n)") {
    const auto r = check_sandwich(CatalogFunction::log1p_over_x(), NodeSet({1.0, 2.0, 4.0}),
                                  kZero, kInf);
    CHECK(r.lower.value() == 0.0);
    CHECK(r.upper.value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.s_value > 0.0);
    CHECK(r.s_value < 1.0 / 3.0);
  }
  SUBCASE("x/(1+x) over (1,2,4): -S sits in (0, 1)") {
    const auto r = check_sandwich(CatalogFunction::moebius_ratio(1), NodeSet({1.0, 2.0, 4.0}),
                                  kZero, kInf);
    // f(1)=1/2, f(2)=2/3, f(4)=4/5 give S = 1/6 - 1/3 + 2/15 = -1/30 exactly.
    CHECK(r.s_value == doctest::Approx(-1.0 / 30.0).epsilon(1e-14));
    CHECK(r.lower.value() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(r.upper.value() == 0.0);
    CHECK(r.verdict == Verdict::pass);
  }
  SUBCASE("the constant function is held to both orientations, margins exactly zero") {
    const auto r = check_sandwich(CatalogFunction::const_one(), NodeSet({1.0, 2.0, 4.0}),
                                  kZero, kInf);
    CHECK(r.margin_lower == 0.0);
    CHECK(r.margin_upper == 0.0);
    CHECK(r.verdict == Verdict::pass_nonstrict);
    CHECK_FALSE(r.strict_expected);
  }
  SUBCASE("n = 1 degenerates to f(a) <= f(x1) <= f(b)") {
    const auto r = check_sandwich(CatalogFunction::exp_decay(1),
                                  NodeSet(std::vector<double>{2.0}), kZero, kInf);
    CHECK(r.s_value == doctest::Approx(std::exp(-2.0)));
    CHECK(r.lower.value() == 0.0);
    CHECK(r.upper.value() == 1.0);
    CHECK(r.verdict == Verdict::pass);
  }
  SUBCASE("endpoint preconditions") {
    const NodeSet nodes({1.0, 2.0});
    const auto fn = CatalogFunction::exp_decay(1);
    CHECK_THROWS_AS(check_sandwich(fn, nodes, ExtendedReal::finite(1.5), kInf),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_sandwich(fn, nodes, kZero, ExtendedReal::finite(1.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_sandwich(fn, NodeSet({-1.0, 2.0}), kZero, kInf),
                    std::invalid_argument);
  }
  SUBCASE("interior endpoints via jets agree with the chain") {
    const auto r = check_sandwich(CatalogFunction::exp_decay(1), NodeSet({1.0, 2.0}),
                                  ExtendedReal::finite(0.5), ExtendedReal::finite(3.0));
    // decreasing chain: -f'(b) <= S <= -f'(a), i.e. e^-3 <= S <= e^-0.5
    CHECK(r.lower.value() == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK(r.upper.value() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(r.verdict == Verdict::pass);
  }
}

TEST_CASE("sandwich bounds are monotone in the endpoint a") {
  // For completely increasing f the lower bound grows with a; reversed for
  // decreasing f. Checked on sampled endpoint pairs.
  const NodeSet nodes({2.0, 3.0, 5.0});
  const std::vector<double> a_values = {0.0, 0.25, 0.5, 1.0, 1.7, 2.0};
  for (const auto& fn : oracle::strict_catalog()) {
    double previous = -std::numeric_limits<double>::infinity();
    const bool increasing = fn.cm_class() == cmineq::CmClass::completely_increasing;
    for (double a : a_values) {
      const auto r = check_sandwich(fn, nodes, ExtendedReal::finite(a), kInf);
      const double oriented = increasing ? r.lower.value() : -r.upper.value();
      CHECK(oriented >= previous);
      previous = oriented;
    }
  }
}

TEST_CASE("mean-value witness") {
  SUBCASE("analytic case: e^-x over (1,2)") {
    const auto r = find_mvt_witness(CatalogFunction::exp_decay(1), NodeSet({1.0, 2.0}));
    const double expected = -std::log(std::exp(-1.0) - std::exp(-2.0));
    CHECK(std::abs(r.x0 - expected) <= 1e-9);
    CHECK(r.x0 > 1.0);
    CHECK(r.x0 < 2.0);
  }
  SUBCASE("tight interval forces containment") {
    const auto r = find_mvt_witness(CatalogFunction::exp_decay(1),
                                    NodeSet({1.0, 1.0 + 1e-6}, 1e-7));
    CHECK(r.x0 > 1.0);
    CHECK(r.x0 < 1.0 + 1e-6);
  }
  SUBCASE("bisection against an independent fine-grid scan") {
    const NodeSet nodes({1.0, 2.0, 3.0});
    const auto fn = CatalogFunction::moebius_ratio(1);
    const auto r = find_mvt_witness(fn, nodes);
    CHECK(r.x0 > 1.0);
    CHECK(r.x0 < 3.0);
    CHECK(r.residual <= 1e-10 * std::max(1.0, std::abs(r.target)));

    // Scan f''(x)/2 - dd for the sign change on a fine grid; the witness
    // must land inside the bracketing cell.
    const std::vector<double> values = {fn.value(1.0), fn.value(2.0), fn.value(3.0)};
    const double dd = cmineq::dd_newton(nodes, values).dd_standard;
    double located = 0.0;
    const int cells = 200000;
    double prev = fn.eval_jet(1.0, 2).derivative(2) / 2.0 - dd;
    for (int i = 1; i <= cells; ++i) {
      const double x = 1.0 + 2.0 * i / cells;
      const double cur = fn.eval_jet(x, 2).derivative(2) / 2.0 - dd;
      if ((cur < 0.0) != (prev < 0.0)) {
        located = x;
        break;
      }
      prev = cur;
    }
    CHECK(std::abs(r.x0 - located) <= 2.0 * 2.0 / cells);
  }
  SUBCASE("witness containment and residual over random trials") {
    std::mt19937_64 eng(99);
    for (const auto& fn : oracle::strict_catalog()) {
      for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(eng() % 5);
        const NodeSet nodes = cmineq::random_node_set(eng, n, 0.1, 50.0, 1e-2);
        const auto r = find_mvt_witness(fn, nodes);
        CHECK(r.x0 > nodes.min());
        CHECK(r.x0 < nodes.max());

        // dd must sit between the endpoint derivative values.
        const int k = n - 1;
        const double orient = (k % 2 == 0) ? 1.0 : -1.0;
        const double fact = cmineq::exact_factorial(k);
        const double dd_oriented = orient * r.target / fact;
        const double at_m = orient * fn.eval_jet(nodes.min(), k).derivative(k) / fact;
        const double at_M = orient * fn.eval_jet(nodes.max(), k).derivative(k) / fact;
        CHECK(dd_oriented >= std::min(at_m, at_M));
        CHECK(dd_oriented <= std::max(at_m, at_M));
      }
    }
  }
  SUBCASE("rejects non-strict functions and single nodes") {
    CHECK_THROWS_AS(find_mvt_witness(CatalogFunction::const_one(), NodeSet({1.0, 2.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        find_mvt_witness(CatalogFunction::exp_decay(1), NodeSet(std::vector<double>{1.0})),
        std::invalid_argument);
  }
}

TEST_CASE("product inequality") {
  SUBCASE("equality at a zero node, exactly") {
    const auto r = check_gen_inequality(NodeSet({0.0, 5.0}));
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.margin == 0.0);
    CHECK(r.equality_expected);
    CHECK(r.verdict == Verdict::pass_nonstrict);
  }
  SUBCASE("nodes (1,2)") {
    const auto r = check_gen_inequality(NodeSet({1.0, 2.0}));
    CHECK(r.lhs == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(r.rhs == 1.0);
    CHECK(r.margin > 0.0);
    CHECK_FALSE(r.equality_expected);
    CHECK(r.verdict == Verdict::pass);
  }
  SUBCASE("negative nodes are rejected") {
    CHECK_THROWS_AS(check_gen_inequality(NodeSet({-1.0, 2.0})), std::invalid_argument);
  }
  SUBCASE("margin equals the divided-difference bridge for positive nodes") {
    std::mt19937_64 eng(5);
    const auto log1p_fn = CatalogFunction::log1p_over_x();
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 2 + static_cast<int>(eng() % 5);
      const NodeSet nodes = cmineq::random_node_set(eng, n, 0.1, 10.0, 1e-2);
      const auto r = check_gen_inequality(nodes);
      CHECK(r.margin > 0.0);

      std::vector<double> values;
      double prod = 1.0;
      for (double x : nodes.nodes()) {
        values.push_back(log1p_fn.value(x));
        prod *= x;
      }
      const double bridged =
          prod * (1.0 / n - cmineq::dd_lagrange(nodes, values).s_paper);
      CHECK(std::abs(r.margin - bridged) <=
            1e-10 * std::max({1e-30, std::abs(r.margin), std::abs(bridged)}));
    }
  }
}

TEST_CASE("null identity residuals") {
  SUBCASE("1/3 - 1/2 + 1/6 collapses") {
    CHECK(std::abs(check_null_identity(NodeSet({1.0, 2.0, 4.0}))) <= 1e-15);
  }
  SUBCASE("antisymmetry for two nodes is exact") {
    CHECK(check_null_identity(NodeSet({1.0, 2.0})) == 0.0);
  }
  SUBCASE("tight decimal cluster stays within the scaled tolerance") {
    const NodeSet nodes({0.5, 0.6, 0.7, 0.8});
    const double residual = check_null_identity(nodes);
    const std::vector<double> ones(4, 1.0);
    const double scale = cmineq::dd_lagrange(nodes, ones).term_scale;
    CHECK(std::abs(residual) <= 1e-9 * scale);

    // Exact-rational oracle: with nodes k/10, the residual is
    // 10^(n-1) * sum_i 1/prod_{j!=i}(k_j - k_i) over integers. Accumulate
    // the numerator over a common denominator in integer arithmetic; the
    // exact value is zero.
    const long k[] = {5, 6, 7, 8};
    long denoms[4];
    for (int i = 0; i < 4; ++i) {
      denoms[i] = 1;
      for (int j = 0; j < 4; ++j) {
        if (j != i) denoms[i] *= k[j] - k[i];
      }
    }
    long common = 1;
    for (long d : denoms) common *= d;  // 6 * -2 * 2 * -6 = 144
    long numerator = 0;
    for (long d : denoms) numerator += common / d;
    CHECK(numerator == 0);
  }
  SUBCASE("requires n >= 2") {
    CHECK_THROWS_AS(check_null_identity(NodeSet(std::vector<double>{1.0})),
                    std::invalid_argument);
  }
}

TEST_CASE("sandwich envelope holds down to separation 1e-3") {
  // No-violation property in the clustered regime; strict margins are only
  // asserted at separations >= 1e-2 (covered by the campaigns).
  std::mt19937_64 eng(2718);
  for (const auto& fn : oracle::canonical_catalog()) {
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + static_cast<int>(eng() % 5);
      const NodeSet nodes = cmineq::random_node_set(eng, n, 0.1, 50.0, 1e-3);
      const auto r = check_sandwich(fn, nodes, kZero, kInf);
      INFO(fn.display(), " trial=", trial);
      CHECK(r.verdict != Verdict::violation);
      CHECK(r.lower <= r.upper);
    }
  }
}

TEST_CASE("trial campaigns") {
  SUBCASE("five hundred sandwich trials with zero violations") {
    cmineq::TrialCampaignConfig config;
    config.functions = {CatalogFunction::exp_decay(1)};
    config.n_min = 2;
    config.n_max = 5;
    config.trials = 500;
    config.seed = 42;
    config.run_gen = false;
    const auto report = cmineq::run_trials(config);
    CHECK(report.summary.violation == 0);
    CHECK(report.summary.records == 1000);  // two endpoint pairs per trial
    CHECK(report.sandwich.size() == 1000);
    CHECK(report.summary.pass == 1000);     // strict entry: all strict passes
    CHECK(report.summary.worst_margin > 0.0);
  }
  SUBCASE("reports are a deterministic function of the config") {
    // Default config runs both the sandwich and the product-inequality
    // check on every trial's node draw.
    cmineq::TrialCampaignConfig config;
    config.functions = {CatalogFunction::log1p_over_x()};
    config.trials = 50;
    config.seed = 7;
    const auto report = cmineq::run_trials(config);
    CHECK(report.sandwich.size() == 100);
    CHECK(report.gen.size() == 50);
    const auto a = cmineq::dump_json(cmineq::report_json(report));
    const auto b = cmineq::dump_json(cmineq::report_json(cmineq::run_trials(config)));
    CHECK(a == b);
  }
  SUBCASE("different seeds draw different nodes") {
    cmineq::TrialCampaignConfig config;
    config.functions = {CatalogFunction::exp_decay(1)};
    config.trials = 5;
    config.seed = 1;
    auto r1 = cmineq::run_trials(config);
    config.seed = 2;
    auto r2 = cmineq::run_trials(config);
    CHECK(r1.sandwich[0].nodes != r2.sandwich[0].nodes);
  }
  SUBCASE("forced violations are counted and flagged") {
    // Sandwich margins for e^-x are bounded by the a = 0 bound, so a
    // perturbation of 10 forces every record into violation.
    cmineq::TrialCampaignConfig config;
    config.functions = {CatalogFunction::exp_decay(1)};
    config.trials = 20;
    config.bound_perturbation = 10.0;
    config.run_gen = false;
    const auto report = cmineq::run_trials(config);
    CHECK(report.summary.violation == report.summary.records);
    CHECK(report.summary.violation == 40);
  }
  SUBCASE("gen campaign with zero-node injection") {
    cmineq::TrialCampaignConfig config;
    config.functions = {};
    config.run_sandwich = false;
    config.run_gen = true;
    config.trials = 100;
    config.node_max = 10.0;
    config.zero_node_every = 10;
    const auto report = cmineq::run_trials(config);
    CHECK(report.summary.violation == 0);
    CHECK(report.gen.size() == 100);
    long equalities = 0;
    for (const auto& g : report.gen) {
      if (g.equality_expected) {
        ++equalities;
        CHECK(std::abs(g.margin) <= 1e-12);
      } else {
        CHECK(g.margin > 0.0);
      }
    }
    CHECK(equalities == 10);
  }
  SUBCASE("zero-node injection refuses to run sandwich checks") {
    cmineq::TrialCampaignConfig config;
    config.functions = {CatalogFunction::exp_decay(1)};
    config.zero_node_every = 5;
    CHECK_THROWS_AS(cmineq::run_trials(config), std::invalid_argument);
  }
  SUBCASE("empty function selection is rejected") {
    cmineq::TrialCampaignConfig config;
    CHECK_THROWS_AS(cmineq::run_trials(config), std::invalid_argument);
  }
  SUBCASE("infeasible separation constraints are reported") {
    std::mt19937_64 eng(1);
    CHECK_THROWS_AS(cmineq::random_node_set(eng, 8, 1.0, 1.01, 0.5), std::runtime_error);
  }
}

TEST_CASE("strict margins clear the floor at separations >= 1e-2") {
  std::mt19937_64 eng(31415);
  for (const auto& fn : oracle::strict_catalog()) {
    for (int trial = 0; trial < 80; ++trial) {
      const int n = 2 + static_cast<int>(eng() % 5);
      const NodeSet nodes = cmineq::random_node_set(eng, n, 0.1, 50.0, 1e-2);
      const auto r = check_sandwich(fn, nodes, kZero, kInf);
      INFO(fn.display());
      CHECK(r.verdict == Verdict::pass);
    }
  }
}
