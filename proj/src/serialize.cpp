#include "cmineq/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmineq {

using nlohmann::json;

json to_json(const ExtendedReal& e) {
  if (e.is_pos_infinity()) return json("inf");
  if (e.is_neg_infinity()) return json("-inf");
  return json(e.value());
}

namespace {

json margin_json(double m) {
  if (std::isinf(m)) return json(m > 0 ? "inf" : "-inf");
  return json(m);
}

json params_json(const CatalogFunction& fn) {
  json p = json::object();
  for (const auto& [name, value] : fn.params()) p[name] = value;
  return p;
}

}  // namespace

json to_json(const SandwichResult& r) {
  json j;
  j["a"] = to_json(r.a);
  j["b"] = to_json(r.b);
  j["nodes"] = r.nodes;
  j["s_value"] = r.s_value;
  j["lower"] = to_json(r.lower);
  j["upper"] = to_json(r.upper);
  j["margin_lower"] = margin_json(r.margin_lower);
  j["margin_upper"] = margin_json(r.margin_upper);
  j["verdict"] = verdict_string(r.verdict);
  return j;
}

json to_json(const GenInequalityResult& r) {
  json j;
  j["nodes"] = r.nodes;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["equality_expected"] = r.equality_expected;
  j["verdict"] = verdict_string(r.verdict);
  return j;
}

json config_json(const TrialCampaignConfig& config) {
  json j;
  if (config.functions.size() == 1) {
    j["fn"] = config.functions[0].id_string();
    j["params"] = params_json(config.functions[0]);
  } else if (!config.functions.empty()) {
    json fns = json::array();
    for (const auto& fn : config.functions) {
      fns.push_back({{"fn", fn.id_string()}, {"params", params_json(fn)}});
    }
    j["functions"] = fns;
  }
  j["n_min"] = config.n_min;
  j["n_max"] = config.n_max;
  j["node_min"] = config.node_min;
  j["node_max"] = config.node_max;
  j["separation_floor"] = config.separation_floor;
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  if (config.bound_perturbation != 0.0) j["perturb_bound"] = config.bound_perturbation;
  if (config.zero_node_every > 0) j["zero_every"] = config.zero_node_every;
  return j;
}

json summary_json(const CampaignSummary& summary) {
  json j;
  j["records"] = summary.records;
  j["pass"] = summary.pass;
  j["pass_nonstrict"] = summary.pass_nonstrict;
  j["violation"] = summary.violation;
  j["worst_margin"] = margin_json(summary.worst_margin);
  return j;
}

json report_json(const VerificationReport& report) {
  json trials = json::array();
  for (const auto& r : report.sandwich) trials.push_back(to_json(r));
  for (const auto& r : report.gen) trials.push_back(to_json(r));
  json j;
  j["config"] = config_json(report.config);
  j["trials"] = std::move(trials);
  j["summary"] = summary_json(report.summary);
  return j;
}

json cm_report_json(const CatalogFunction& fn, const CmClassReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"x", f.x}, {"order", f.order}, {"s", f.s}});
  }
  json j;
  j["config"] = {{"fn", fn.id_string()},
                 {"params", params_json(fn)},
                 {"cm_class", CatalogFunction::cm_class_string(fn.cm_class())},
                 {"strict", fn.strict()},
                 {"grid", report.grid},
                 {"max_order", report.max_order},
                 {"strictness_floor", report.strictness_floor}};
  j["failures"] = std::move(failures);
  j["summary"] = {{"checks", report.checks},
                  {"pass", report.checks - static_cast<long>(report.failures.size())},
                  {"violation", report.failures.size()},
                  {"worst_margin", margin_json(report.worst_oriented)}};
  return j;
}

json divdiff_json(const CatalogFunction& fn, const NodeSet& nodes,
                  const DividedDifferenceResult& r) {
  json j;
  j["fn"] = fn.id_string();
  j["params"] = params_json(fn);
  j["nodes"] = nodes.nodes();
  j["n"] = r.n;
  j["method"] = r.method == DdMethod::newton ? "newton" : "lagrange";
  j["dd_standard"] = r.dd_standard;
  j["s_paper"] = r.s_paper;
  return j;
}

json mvt_json(const CatalogFunction& fn, const NodeSet& nodes, const MvtResult& r) {
  json j;
  j["fn"] = fn.id_string();
  j["params"] = params_json(fn);
  j["nodes"] = nodes.nodes();
  j["n"] = nodes.size();
  j["x0"] = r.x0;
  j["target"] = r.target;
  j["witness_derivative"] = r.witness_value;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  return j;
}

json catalog_listing_json() {
  json out = json::array();
  const CatalogFunction entries[] = {
      CatalogFunction::const_one(),       CatalogFunction::log1p_over_x(),
      CatalogFunction::moebius_ratio(1),  CatalogFunction::log_ratio(1, 2),
      CatalogFunction::exp_decay(1),      CatalogFunction::power_decay(1, 1, 1),
  };
  for (const auto& fn : entries) {
    out.push_back({{"id", fn.id_string()},
                   {"params_schema", CatalogFunction::param_names(fn.id())},
                   {"cm_class", CatalogFunction::cm_class_string(fn.cm_class())},
                   {"strict", fn.strict()}});
  }
  return out;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string number_string(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}

namespace {

std::string nodes_field(const std::vector<double>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ";";
    s += number_string(nodes[i]);
  }
  return s;
}

std::string extended_field(const ExtendedReal& e) {
  return e.is_finite() ? number_string(e.value()) : e.str();
}

}  // namespace

std::string report_csv(const VerificationReport& report) {
  std::ostringstream out;
  if (!report.sandwich.empty() || report.gen.empty()) {
    out << "record,a,b,nodes,s_value,lower,upper,margin_lower,margin_upper,verdict\n";
    long i = 0;
    for (const auto& r : report.sandwich) {
      out << i++ << ',' << extended_field(r.a) << ',' << extended_field(r.b) << ','
          << nodes_field(r.nodes) << ',' << number_string(r.s_value) << ','
          << extended_field(r.lower) << ',' << extended_field(r.upper) << ','
          << number_string(r.margin_lower) << ',' << number_string(r.margin_upper) << ','
          << verdict_string(r.verdict) << '\n';
    }
  }
  if (!report.gen.empty()) {
    out << "record,nodes,lhs,rhs,margin,equality_expected,verdict\n";
    long i = 0;
    for (const auto& r : report.gen) {
      out << i++ << ',' << nodes_field(r.nodes) << ',' << number_string(r.lhs) << ','
          << number_string(r.rhs) << ',' << number_string(r.margin) << ','
          << (r.equality_expected ? "true" : "false") << ',' << verdict_string(r.verdict)
          << '\n';
    }
  }
  return out.str();
}

namespace {

// Margin histogram with decade buckets; violations land in the first bin.
std::string margin_histogram(const std::vector<double>& margins) {
  constexpr double edges[] = {0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1.0};
  const char* labels[] = {"< 0        ", "[0,1e-12)  ", "[1e-12,1e-9)", "[1e-9,1e-6)",
                          "[1e-6,1e-3)", "[1e-3,1)   ", ">= 1       "};
  long counts[7] = {0, 0, 0, 0, 0, 0, 0};
  for (double m : margins) {
    if (std::isinf(m)) {
      ++counts[6];
      continue;
    }
    int bin = 0;
    while (bin < 6 && m >= edges[bin]) ++bin;
    ++counts[bin];
  }
  std::ostringstream out;
  out << "margin histogram:\n";
  for (int i = 0; i < 7; ++i) {
    out << "  " << labels[i] << " : " << counts[i] << '\n';
  }
  return out.str();
}

}  // namespace

std::string report_human(const VerificationReport& report) {
  std::ostringstream out;
  const auto& s = report.summary;
  out << "trials: " << report.config.trials << "  records: " << s.records
      << "  pass: " << s.pass << "  pass_nonstrict: " << s.pass_nonstrict
      << "  violation: " << s.violation << "\n";
  out << "worst margin: " << number_string(s.worst_margin) << "\n";

  std::vector<double> margins;
  for (const auto& r : report.sandwich) {
    margins.push_back(r.margin_lower);
    margins.push_back(r.margin_upper);
  }
  for (const auto& r : report.gen) margins.push_back(r.margin);
  out << margin_histogram(margins);
  out << (s.violation == 0 ? "RESULT: PASS\n" : "RESULT: VIOLATION\n");
  return out.str();
}

std::string cm_report_human(const CatalogFunction& fn, const CmClassReport& report) {
  std::ostringstream out;
  out << fn.display() << " [" << CatalogFunction::cm_class_string(fn.cm_class())
      << (fn.strict() ? ", strict" : "") << "]\n";
  out << "checks: " << report.checks << "  failures: " << report.failures.size()
      << "  worst oriented value: " << number_string(report.worst_oriented) << "\n";
  for (const auto& f : report.failures) {
    out << "  FAIL x=" << number_string(f.x) << " order=" << f.order
        << " (-1)^n f^(n) = " << number_string(f.s) << "\n";
  }
  out << (report.pass() ? "RESULT: PASS\n" : "RESULT: VIOLATION\n");
  return out.str();
}

}  // namespace cmineq
