#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace cmineq {

/// Thrown when a node list violates the pairwise separation floor
/// (duplicate or nearly coalescing nodes).
class node_separation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pairwise distinct evaluation points x_1..x_n with cached extrema.
///
/// Both divided-difference algorithms lose all significant digits as nodes
/// coalesce, so construction enforces a minimum separation floor and rejects
/// anything below it with node_separation_error.
class NodeSet {
 public:
  /// Default floor: 1e-9 * max(1, M).
  static double default_separation_floor(double max_node);

  explicit NodeSet(std::vector<double> nodes);
  NodeSet(std::vector<double> nodes, double separation_floor);

  const std::vector<double>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double min() const { return m_; }
  double max() const { return M_; }
  double min_separation() const { return min_sep_; }
  double separation_floor() const { return floor_; }
  bool all_positive() const;
  bool all_nonnegative() const;

 private:
  void validate();

  std::vector<double> nodes_;
  double m_ = 0.0;
  double M_ = 0.0;
  double min_sep_ = 0.0;
  double floor_ = 0.0;
};

enum class DdMethod { lagrange, newton };

/// Divided difference of f over a node set, in both sign conventions.
///
/// dd_standard is the bracket [x_1,...,x_n; f] with denominators
/// prod_{j!=i}(x_i - x_j); s_paper uses prod_{j!=i}(x_j - x_i) instead.
/// Each of the n-1 denominator factors flips sign, so
/// s_paper = (-1)^(n-1) * dd_standard holds exactly and is implemented as a
/// sign flip, never recomputed.
struct DividedDifferenceResult {
  double dd_standard = 0.0;
  double s_paper = 0.0;
  int n = 0;
  DdMethod method = DdMethod::newton;
  /// Largest |summand| (lagrange) or |tableau entry| (newton); the natural
  /// scale for residual and agreement tolerances.
  double term_scale = 0.0;
};

/// Explicit symmetric sum sum_i f(x_i)/prod_{j!=i}(x_i - x_j).
///
/// The terms alternate in sign and can exceed the result by many orders of
/// magnitude, so they are summed smallest-magnitude first with compensated
/// accumulation.
DividedDifferenceResult dd_lagrange(const NodeSet& nodes, std::span<const double> values);

/// Recursive triangular tableau; the default method for verification
/// (better stability than the explicit sum).
DividedDifferenceResult dd_newton(const NodeSet& nodes, std::span<const double> values);

/// Weights a_i = prod_{j!=i} x_j / prod_{j!=i} (x_j - x_i).
///
/// When some x_i = 0 the result degenerates to the i-th unit vector: the
/// zero node annihilates every other numerator, and a_i's numerator and
/// denominator coincide.
std::vector<double> weights_a(const NodeSet& nodes);

/// Neumaier-compensated sum in the order given.
double compensated_sum(std::span<const double> terms);

/// Compensated sum, terms reordered by ascending magnitude first.
double sorted_compensated_sum(std::vector<double> terms);

}  // namespace cmineq
