#include "cmineq/divided_differences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace cmineq {

double NodeSet::default_separation_floor(double max_node) {
  return 1e-9 * std::max(1.0, max_node);
}

NodeSet::NodeSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("NodeSet: needs at least one node");
  M_ = *std::max_element(nodes_.begin(), nodes_.end());
  floor_ = default_separation_floor(M_);
  validate();
}

NodeSet::NodeSet(std::vector<double> nodes, double separation_floor)
    : nodes_(std::move(nodes)), floor_(separation_floor) {
  if (nodes_.empty()) throw std::invalid_argument("NodeSet: needs at least one node");
  if (!(floor_ > 0.0)) throw std::invalid_argument("NodeSet: separation floor must be positive");
  validate();
}

void NodeSet::validate() {
  for (double x : nodes_) {
    if (!std::isfinite(x)) throw std::invalid_argument("NodeSet: non-finite node");
  }
  m_ = *std::min_element(nodes_.begin(), nodes_.end());
  M_ = *std::max_element(nodes_.begin(), nodes_.end());

  // Min pairwise gap via a sorted copy; adjacent gaps suffice.
  std::vector<double> sorted(nodes_);
  std::sort(sorted.begin(), sorted.end());
  min_sep_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    min_sep_ = std::min(min_sep_, sorted[i] - sorted[i - 1]);
  }
  if (nodes_.size() >= 2 && !(min_sep_ >= floor_)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "NodeSet: nodes must be pairwise distinct; minimum separation %g is below "
                  "the floor %g",
                  min_sep_, floor_);
    throw node_separation_error(msg);
  }
}

bool NodeSet::all_positive() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](double x) { return x > 0.0; });
}

bool NodeSet::all_nonnegative() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](double x) { return x >= 0.0; });
}

double compensated_sum(std::span<const double> terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    double u = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      comp += (sum - u) + t;
    } else {
      comp += (t - u) + sum;
    }
    sum = u;
  }
  return sum + comp;
}

double sorted_compensated_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  return compensated_sum(terms);
}

namespace {

void require_matching_lengths(const NodeSet& nodes, std::span<const double> values) {
  if (static_cast<std::size_t>(nodes.size()) != values.size()) {
    throw std::invalid_argument("divided difference: values length does not match node count");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("divided difference: non-finite value");
  }
}

double flipped_sign_convention(double dd_standard, int n) {
  // s_paper = (-1)^(n-1) * dd_standard; exact by construction.
  return (n % 2 == 1) ? dd_standard : -dd_standard;
}

}  // namespace

DividedDifferenceResult dd_lagrange(const NodeSet& nodes, std::span<const double> values) {
  require_matching_lengths(nodes, values);
  const auto& x = nodes.nodes();
  const int n = nodes.size();

  // Terms are computed, sorted by ascending magnitude, and accumulated with
  // Neumaier compensation entirely in long double, rounding once at the end.
  // For clustered nodes the terms exceed the result by many orders of
  // magnitude; representing a term as a double already costs eps * |term|,
  // which would swamp the result long before the summation itself.
  std::vector<long double> terms(static_cast<std::size_t>(n));
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    long double denom = 1.0L;
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        denom *= static_cast<long double>(x[static_cast<std::size_t>(i)]) -
                 static_cast<long double>(x[static_cast<std::size_t>(j)]);
      }
    }
    terms[static_cast<std::size_t>(i)] =
        static_cast<long double>(values[static_cast<std::size_t>(i)]) / denom;
    scale = std::max(scale,
                     static_cast<double>(fabsl(terms[static_cast<std::size_t>(i)])));
  }
  std::sort(terms.begin(), terms.end(),
            [](long double a, long double b) { return fabsl(a) < fabsl(b); });
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (long double t : terms) {
    const long double u = sum + t;
    if (fabsl(sum) >= fabsl(t)) {
      comp += (sum - u) + t;
    } else {
      comp += (t - u) + sum;
    }
    sum = u;
  }
  const double dd = static_cast<double>(sum + comp);

  DividedDifferenceResult r;
  r.dd_standard = dd;
  r.s_paper = flipped_sign_convention(dd, n);
  r.n = n;
  r.method = DdMethod::lagrange;
  r.term_scale = scale;
  return r;
}

DividedDifferenceResult dd_newton(const NodeSet& nodes, std::span<const double> values) {
  require_matching_lengths(nodes, values);
  const auto& x = nodes.nodes();
  const int n = nodes.size();

  // The tableau runs in long double: each level divides a difference by a
  // node span, and for clustered nodes the rounding of one level is
  // amplified by every later one. Extended precision keeps the top entry
  // good to ~1e-11 even at separations near 1e-3.
  std::vector<long double> col(values.begin(), values.end());
  double scale = 0.0;
  for (long double v : col) scale = std::max(scale, static_cast<double>(fabsl(v)));

  for (int level = 1; level < n; ++level) {
    for (int i = 0; i + level < n; ++i) {
      col[static_cast<std::size_t>(i)] =
          (col[static_cast<std::size_t>(i + 1)] - col[static_cast<std::size_t>(i)]) /
          (static_cast<long double>(x[static_cast<std::size_t>(i + level)]) -
           static_cast<long double>(x[static_cast<std::size_t>(i)]));
      scale = std::max(scale, static_cast<double>(fabsl(col[static_cast<std::size_t>(i)])));
    }
  }

  DividedDifferenceResult r;
  r.dd_standard = static_cast<double>(col[0]);
  r.s_paper = flipped_sign_convention(r.dd_standard, n);
  r.n = n;
  r.method = DdMethod::newton;
  r.term_scale = scale;
  return r;
}

std::vector<double> weights_a(const NodeSet& nodes) {
  const auto& x = nodes.nodes();
  const int n = nodes.size();
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Long double products for the same reason as dd_lagrange. A zero node
    // still degenerates exactly: it zeroes every other numerator, and its
    // own numerator and denominator are the identical product.
    long double num = 1.0L;
    long double den = 1.0L;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      num *= static_cast<long double>(x[static_cast<std::size_t>(j)]);
      den *= static_cast<long double>(x[static_cast<std::size_t>(j)]) -
             static_cast<long double>(x[static_cast<std::size_t>(i)]);
    }
    a[static_cast<std::size_t>(i)] = static_cast<double>(num / den);
  }
  return a;
}

}  // namespace cmineq
