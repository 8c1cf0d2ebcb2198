// cmineq: divided differences, derivative bounds, and inequality
// verification for a catalog of completely monotone functions.
//
// Exit codes: 0 = all checks pass, 1 = verified violation or unreachable
// residual, 2 = usage error. No other codes are produced.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmineq/catalog.hpp"
#include "cmineq/serialize.hpp"
#include "cmineq/verifier.hpp"

namespace {

constexpr double kNotGiven = std::numeric_limits<double>::quiet_NaN();

struct FnFlags {
  std::string fn;
  double alpha = kNotGiven;
  double beta = kNotGiven;
  double gamma = kNotGiven;

  cmineq::CatalogFunction make() const {
    return cmineq::make_catalog_function(fn, alpha, beta, gamma);
  }
};

void add_fn_flags(CLI::App* cmd, FnFlags& flags) {
  cmd->add_option("--fn", flags.fn, "catalog function id (see `catalog list`)")->required();
  cmd->add_option("--alpha", flags.alpha, "function parameter alpha");
  cmd->add_option("--beta", flags.beta, "function parameter beta");
  cmd->add_option("--gamma", flags.gamma, "function parameter gamma");
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format: human, json, csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
}

cmineq::NodeSet make_node_set(const std::vector<double>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("--nodes needs at least one value");
  return cmineq::NodeSet(nodes);
}

int emit_campaign(const cmineq::VerificationReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << cmineq::dump_json(cmineq::report_json(report));
  } else if (format == "csv") {
    std::cout << cmineq::report_csv(report);
  } else {
    std::cout << cmineq::report_human(report);
  }
  return report.summary.violation > 0 ? 1 : 0;
}

std::vector<double> default_cm_grid() {
  // 9 log-spaced points spanning [0.2, 20].
  std::vector<double> g;
  for (int i = 0; i < 9; ++i) {
    g.push_back(0.2 * std::pow(100.0, i / 8.0));
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "divided differences and two-sided derivative bounds for a catalog of "
      "completely monotone functions"};
  app.require_subcommand(1);

  // divdiff
  FnFlags dd_fn;
  std::vector<double> dd_nodes;
  std::string dd_method = "newton";
  std::string dd_format = "human";
  CLI::App* divdiff = app.add_subcommand("divdiff", "compute a divided difference");
  add_fn_flags(divdiff, dd_fn);
  divdiff->add_option("--nodes", dd_nodes, "comma-separated evaluation points")
      ->delimiter(',')
      ->required();
  divdiff->add_option("--method", dd_method, "newton (default) or lagrange")
      ->check(CLI::IsMember({"newton", "lagrange"}));
  add_format_flag(divdiff, dd_format);

  // catalog list
  CLI::App* catalog = app.add_subcommand("catalog", "catalog of functions");
  catalog->require_subcommand(1);
  bool catalog_json = false;
  CLI::App* catalog_list = catalog->add_subcommand("list", "list the catalog entries");
  catalog_list->add_flag("--json", catalog_json, "emit the listing as JSON");

  // shared campaign flags
  struct CampaignFlags {
    int n = 0;
    int n_min = 2;
    int n_max = 6;
    long trials = 1000;
    std::uint64_t seed = 42;
    double node_min = 0.1;
    double node_max = 50.0;
    double sep_floor = 1e-2;
    double perturb = 0.0;
    std::string format = "human";
  };
  auto add_campaign_flags = [](CLI::App* cmd, CampaignFlags& f) {
    cmd->add_option("--n", f.n, "fix the node count (overrides --n-min/--n-max)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n-min", f.n_min, "smallest node count (default 2)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n-max", f.n_max, "largest node count (default 6)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trials", f.trials, "number of random trials (default 1000)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "campaign seed (default 42)");
    cmd->add_option("--node-min", f.node_min, "lower node range bound")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--node-max", f.node_max, "upper node range bound")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sep-floor", f.sep_floor, "minimum pairwise node separation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--perturb-bound", f.perturb,
                    "test-only: subtract this from every margin to force violations");
  };

  // verify-sandwich
  FnFlags sw_fn;
  CampaignFlags sw;
  CLI::App* verify_sandwich =
      app.add_subcommand("verify-sandwich", "randomized two-sided bound campaign");
  add_fn_flags(verify_sandwich, sw_fn);
  add_campaign_flags(verify_sandwich, sw);
  add_format_flag(verify_sandwich, sw.format);

  // verify-cm
  FnFlags cm_fn;
  int cm_max_order = 6;
  double cm_strict_floor = 0.0;
  std::vector<double> cm_grid;
  std::string cm_format = "human";
  double cm_perturb = 0.0;
  CLI::App* verify_cm =
      app.add_subcommand("verify-cm", "monotonicity-class sign checks over a grid");
  add_fn_flags(verify_cm, cm_fn);
  verify_cm->add_option("--max-order", cm_max_order, "highest derivative order (default 6)");
  verify_cm->add_option("--grid", cm_grid, "comma-separated evaluation grid")->delimiter(',');
  verify_cm->add_option("--strict-floor", cm_strict_floor,
                        "strict classes must clear this magnitude (default 0)");
  verify_cm->add_option("--perturb-bound", cm_perturb,
                        "test-only: shift every oriented sign value to force failures");
  add_format_flag(verify_cm, cm_format);

  // verify-gen
  std::vector<double> gen_nodes;
  CampaignFlags gen;
  gen.node_max = 10.0;
  long gen_zero_every = 0;
  CLI::App* verify_gen =
      app.add_subcommand("verify-gen", "product inequality checks (fixed nodes or campaign)");
  verify_gen->add_option("--nodes", gen_nodes, "fixed non-negative nodes (skips the campaign)")
      ->delimiter(',');
  add_campaign_flags(verify_gen, gen);
  verify_gen->add_option("--zero-every", gen_zero_every,
                         "force a zero node on every k-th trial (0 = never)");
  add_format_flag(verify_gen, gen.format);

  // mvt
  FnFlags mvt_fn;
  std::vector<double> mvt_nodes;
  std::string mvt_format = "human";
  CLI::App* mvt = app.add_subcommand("mvt", "locate the interior mean-value witness");
  add_fn_flags(mvt, mvt_fn);
  mvt->add_option("--nodes", mvt_nodes, "comma-separated positive nodes")
      ->delimiter(',')
      ->required();
  add_format_flag(mvt, mvt_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(divdiff)) {
      const cmineq::CatalogFunction fn = dd_fn.make();
      const cmineq::NodeSet nodes = make_node_set(dd_nodes);
      std::vector<double> values;
      for (double x : nodes.nodes()) values.push_back(fn.value(x));
      const cmineq::DividedDifferenceResult r = dd_method == "newton"
                                                    ? cmineq::dd_newton(nodes, values)
                                                    : cmineq::dd_lagrange(nodes, values);
      if (dd_format == "json") {
        std::cout << cmineq::dump_json(cmineq::divdiff_json(fn, nodes, r));
      } else if (dd_format == "csv") {
        std::cout << "fn,nodes,n,method,dd_standard,s_paper\n"
                  << fn.id_string() << ',';
        for (std::size_t i = 0; i < nodes.nodes().size(); ++i) {
          std::cout << (i ? ";" : "") << cmineq::number_string(nodes.nodes()[i]);
        }
        std::cout << ',' << r.n << ',' << dd_method << ','
                  << cmineq::number_string(r.dd_standard) << ','
                  << cmineq::number_string(r.s_paper) << '\n';
      } else {
        std::cout << "fn:          " << fn.display() << "\n"
                  << "n:           " << r.n << "\n"
                  << "method:      " << dd_method << "\n"
                  << "dd_standard: " << cmineq::number_string(r.dd_standard) << "\n"
                  << "s_paper:     " << cmineq::number_string(r.s_paper) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(catalog)) {
      const nlohmann::json listing = cmineq::catalog_listing_json();
      if (catalog_json) {
        std::cout << cmineq::dump_json(listing);
      } else {
        for (const auto& entry : listing) {
          std::cout << entry["id"].get<std::string>() << "  params=[";
          const auto& schema = entry["params_schema"];
          for (std::size_t i = 0; i < schema.size(); ++i) {
            std::cout << (i ? "," : "") << schema[i].get<std::string>();
          }
          std::cout << "]  class=" << entry["cm_class"].get<std::string>()
                    << (entry["strict"].get<bool>() ? "  strict" : "") << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(verify_sandwich)) {
      cmineq::TrialCampaignConfig config;
      config.functions = {sw_fn.make()};
      config.n_min = sw.n > 0 ? sw.n : sw.n_min;
      config.n_max = sw.n > 0 ? sw.n : sw.n_max;
      config.node_min = sw.node_min;
      config.node_max = sw.node_max;
      config.separation_floor = sw.sep_floor;
      config.trials = sw.trials;
      config.seed = sw.seed;
      config.run_sandwich = true;
      config.run_gen = false;
      config.bound_perturbation = sw.perturb;
      return emit_campaign(cmineq::run_trials(config), sw.format);
    }

    if (app.got_subcommand(verify_cm)) {
      const cmineq::CatalogFunction fn = cm_fn.make();
      std::vector<double> grid = cm_grid.empty() ? default_cm_grid() : cm_grid;
      cmineq::CmClassReport report =
          cmineq::check_cm_class(fn, grid, cm_max_order, cm_strict_floor);
      if (cm_perturb != 0.0) {
        // Shift the oriented values; anything that drops below the floor
        // becomes a recorded failure.
        report.worst_oriented -= cm_perturb;
        if (report.worst_oriented <= cm_strict_floor) {
          report.failures.push_back({0.0, 0, report.worst_oriented});
        }
      }
      if (cm_format == "json") {
        std::cout << cmineq::dump_json(cmineq::cm_report_json(fn, report));
      } else if (cm_format == "csv") {
        std::cout << "x,order,s\n";
        for (const auto& f : report.failures) {
          std::cout << cmineq::number_string(f.x) << ',' << f.order << ','
                    << cmineq::number_string(f.s) << '\n';
        }
      } else {
        std::cout << cmineq::cm_report_human(fn, report);
      }
      return report.pass() ? 0 : 1;
    }

    if (app.got_subcommand(verify_gen)) {
      if (!gen_nodes.empty()) {
        const cmineq::NodeSet nodes = make_node_set(gen_nodes);
        const cmineq::GenInequalityResult r =
            cmineq::check_gen_inequality(nodes, gen.perturb);
        cmineq::CampaignSummary summary;
        summary.records = 1;
        summary.pass = r.verdict == cmineq::Verdict::pass ? 1 : 0;
        summary.pass_nonstrict = r.verdict == cmineq::Verdict::pass_nonstrict ? 1 : 0;
        summary.violation = r.verdict == cmineq::Verdict::violation ? 1 : 0;
        summary.worst_margin = r.margin;
        if (gen.format == "json") {
          nlohmann::json j;
          j["config"] = {{"mode", "fixed-nodes"}, {"nodes", nodes.nodes()}};
          j["trials"] = nlohmann::json::array({cmineq::to_json(r)});
          j["summary"] = cmineq::summary_json(summary);
          std::cout << cmineq::dump_json(j);
        } else if (gen.format == "csv") {
          cmineq::VerificationReport rep;
          rep.gen.push_back(r);
          rep.summary = summary;
          std::cout << cmineq::report_csv(rep);
        } else {
          std::cout << "lhs:    " << cmineq::number_string(r.lhs) << "\n"
                    << "rhs:    " << cmineq::number_string(r.rhs) << "\n"
                    << "margin: " << cmineq::number_string(r.margin) << "\n"
                    << "equality_expected: " << (r.equality_expected ? "true" : "false")
                    << "\n"
                    << "verdict: " << cmineq::verdict_string(r.verdict) << "\n";
        }
        return summary.violation > 0 ? 1 : 0;
      }

      cmineq::TrialCampaignConfig config;
      config.n_min = gen.n > 0 ? gen.n : gen.n_min;
      config.n_max = gen.n > 0 ? gen.n : gen.n_max;
      config.node_min = gen.node_min;
      config.node_max = gen.node_max;
      config.separation_floor = gen.sep_floor;
      config.trials = gen.trials;
      config.seed = gen.seed;
      config.run_sandwich = false;
      config.run_gen = true;
      config.bound_perturbation = gen.perturb;
      config.zero_node_every = gen_zero_every;
      return emit_campaign(cmineq::run_trials(config), gen.format);
    }

    if (app.got_subcommand(mvt)) {
      const cmineq::CatalogFunction fn = mvt_fn.make();
      const cmineq::NodeSet nodes = make_node_set(mvt_nodes);
      const cmineq::MvtResult r = cmineq::find_mvt_witness(fn, nodes);
      if (mvt_format == "json") {
        std::cout << cmineq::dump_json(cmineq::mvt_json(fn, nodes, r));
      } else if (mvt_format == "csv") {
        std::cout << "fn,nodes,n,x0,target,witness_derivative,residual,iterations\n"
                  << fn.id_string() << ',';
        for (std::size_t i = 0; i < nodes.nodes().size(); ++i) {
          std::cout << (i ? ";" : "") << cmineq::number_string(nodes.nodes()[i]);
        }
        std::cout << ',' << nodes.size() << ',' << cmineq::number_string(r.x0) << ','
                  << cmineq::number_string(r.target) << ','
                  << cmineq::number_string(r.witness_value) << ','
                  << cmineq::number_string(r.residual) << ',' << r.iterations << '\n';
      } else {
        std::cout << "x0:       " << cmineq::number_string(r.x0) << "\n"
                  << "interval: (" << cmineq::number_string(nodes.min()) << ", "
                  << cmineq::number_string(nodes.max()) << ")\n"
                  << "target:   " << cmineq::number_string(r.target) << "\n"
                  << "residual: " << cmineq::number_string(r.residual) << " ("
                  << r.iterations << " iterations)\n";
      }
      return 0;
    }
  } catch (const cmineq::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
