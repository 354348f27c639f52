#pragma once

// Tensor calculus on an N-dimensional (pseudo-)Riemannian manifold given
// metric components with first and second derivatives. Sign convention is
// calibrated so the unit 2-sphere has scalar curvature +2.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "gtd/expr.hpp"
#include "gtd/jets.hpp"

namespace gtd::manifold {

struct Tensor3 {
  int n = 0;
  std::vector<double> v;
  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), v(dim * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k) { return v[(i * n + j) * n + k]; }
  double operator()(int i, int j, int k) const { return v[(i * n + j) * n + k]; }
};

struct Tensor4 {
  int n = 0;
  std::vector<double> v;
  Tensor4() = default;
  explicit Tensor4(int dim) : n(dim), v(dim * dim * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k, int l) {
    return v[((i * n + j) * n + k) * n + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return v[((i * n + j) * n + k) * n + l];
  }
  double max_abs() const;
};

/// g_ab with dg(c,a,b) = d_c g_ab and d2g(c,d,a,b) = d_c d_d g_ab.
struct MetricDerivatives {
  Eigen::MatrixXd g;
  Tensor3 dg;
  Tensor4 d2g;
};

class MetricField {
 public:
  using Eval = std::function<MetricDerivatives(const Eigen::VectorXd&)>;

  MetricField() = default;
  MetricField(int dim, Eval eval) : dim_(dim), eval_(std::move(eval)) {}

  int dim() const { return dim_; }
  MetricDerivatives eval(const Eigen::VectorXd& x) const { return eval_(x); }

  /// Components supplied as order-2 jets (upper triangle, row major) by a
  /// callback evaluated per point.
  static MetricField from_jets(
      int dim, std::function<std::vector<Jet>(const Eigen::VectorXd&)> comps);

  /// Components as closed-form expressions in named coordinates.
  static MetricField from_exprs(
      const std::vector<std::string>& coords,
      const std::vector<std::vector<expr::Expression>>& components);
};

struct CurvatureBundle {
  int dim = 0;
  Tensor3 gamma;         // Gamma^a_{bc}
  Tensor4 riemann_up;    // R^a_{bcd}
  Tensor4 riemann_down;  // R_{abcd}
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
  double kretschmann = 0.0;  // R_abcd R^abcd
  double ricci_sq = 0.0;     // Ric_ab Ric^ab
};

/// Condition-number guard applied before inverting g.
inline constexpr double kConditionLimit = 1e12;

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g);

Tensor3 christoffel(const MetricDerivatives& m);
Tensor3 christoffel(const MetricField& metric, const Eigen::VectorXd& x);

CurvatureBundle riemann(const MetricDerivatives& m);
CurvatureBundle riemann(const MetricField& metric, const Eigen::VectorXd& x);

// -- grid scans --------------------------------------------------------------

struct GridSpec {
  struct Axis {
    double lo = 0.0, hi = 1.0;
    int count = 2;
  };
  std::vector<Axis> axes;

  std::size_t npoints() const;
  Eigen::VectorXd point(std::size_t flat_index) const;
};

enum class Exec { Serial, Parallel };

struct ScanPoint {
  Eigen::VectorXd x;
  double scalar = 0.0;
  double kretschmann = 0.0;
  double ricci_sq = 0.0;
  double det_g = 0.0;
  bool ok = false;
  std::string error;
};

/// Scalar invariants per grid point, in deterministic point order. Points are
/// evaluated in parallel under Exec::Parallel; failures are recorded per
/// point and the scan continues.
std::vector<ScanPoint> curvature_scan(const MetricField& metric,
                                      const GridSpec& grid,
                                      Exec exec = Exec::Parallel);

struct FlatnessReport {
  bool flat = false;
  double max_abs_scalar = 0.0;
  double max_kretschmann = 0.0;
  double max_ricci_sq = 0.0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
};

/// Flat iff max(|R|, sqrt(K), sqrt(|Ric^2|)) <= tol at every evaluable grid
/// point. Throws if any point fails to evaluate.
FlatnessReport flatness_report(const MetricField& metric, const GridSpec& grid,
                               double tol, Exec exec = Exec::Parallel);

}  // namespace gtd::manifold
