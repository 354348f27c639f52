#pragma once

// The (2n+1)-dimensional thermodynamic phase space with coordinates
// Z^A = (Phi, E^1..E^n, I_1..I_n): contact form, the lattice of partial and
// total Legendre transformations, bracket operators, and residual checks for
// the contactomorphism conditions on candidate coordinate maps.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "gtd/expr.hpp"

namespace gtd::phase {

struct PhasePoint {
  double phi = 0.0;
  Eigen::VectorXd E;
  Eigen::VectorXd I;

  PhasePoint() = default;
  PhasePoint(double phi_, Eigen::VectorXd E_, Eigen::VectorXd I_);

  int n() const { return static_cast<int>(E.size()); }

  /// Flattened (Phi, E^1..E^n, I_1..I_n).
  Eigen::VectorXd coords() const;
  static PhasePoint from_coords(const Eigen::VectorXd& z);
};

/// Coordinate names for the flattened ordering: Phi, E1..En, I1..In.
std::vector<std::string> coord_names(int n);

/// Subset i of {1..n} selecting which E/I pairs a Legendre transformation
/// exchanges. Stored 0-based.
struct LegendreSpec {
  std::vector<int> indices;

  static LegendreSpec identity() { return {}; }
  static LegendreSpec total(int n);
  /// 1-based index list, e.g. {1,3}.
  static LegendreSpec of(std::initializer_list<int> one_based);

  bool contains(int zero_based) const;
};

/// All 2^n subsets of {1..n}, identity first, total last.
std::vector<LegendreSpec> all_specs(int n);

/// Forward Legendre transformation: the tilde coordinates of `p`.
/// For a in i: tilde E^a = I^a, tilde I_a = -E^a; identity otherwise;
/// tilde Phi = Phi - sum_{k in i} E^k I^k.
PhasePoint legendre_apply(const LegendreSpec& spec, const PhasePoint& p);

/// A target coordinate system as expressions over named source coordinates.
class CoordinateMap {
 public:
  CoordinateMap() = default;
  CoordinateMap(std::vector<std::string> source_coords,
                std::vector<expr::Expression> components);

  int source_dim() const { return static_cast<int>(source_.size()); }
  int target_dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<expr::Expression>& components() const { return comps_; }
  const std::vector<std::string>& source_coords() const { return source_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& z) const;

  /// J(i,j) = d target_i / d source_j, exact via jets.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const;

  /// Component jets of the requested order at z.
  std::vector<Jet> component_jets(const Eigen::VectorXd& z, int order) const;

 private:
  std::vector<std::string> source_;
  std::vector<expr::Expression> comps_;
};

/// The Legendre transformation as a CoordinateMap over (Phi, E, I).
CoordinateMap legendre_map(const LegendreSpec& spec, int n);

struct OneForm {
  Eigen::VectorXd w;  // components over (dPhi, dE^a, dI_a)
};

/// Theta = dPhi - I_a dE^a at `p`.
OneForm contact_form(const PhasePoint& p);

/// det(dTheta + Theta Theta^T); its non-vanishing is the contact
/// non-degeneracy condition Theta ^ (dTheta)^n != 0. Equals +-1 for the
/// canonical contact form.
double contact_nondegeneracy_det(const PhasePoint& p);

/// Pull a 1-form given in target coordinates back to source components.
OneForm pullback_form(const CoordinateMap& map, const OneForm& target_form,
                      const Eigen::VectorXd& source_point);

/// Pull a metric given in target coordinates back to source components:
/// J^T G J.
Eigen::MatrixXd pullback_metric(const CoordinateMap& map,
                                const Eigen::MatrixXd& target_metric,
                                const Eigen::VectorXd& source_point);

/// {X^a, Y_a}_{Z^A Z^B} summed over a, for a phase map with components
/// ordered (F, X^1..X^n, Y_1..Y_n).
double curly_bracket(const CoordinateMap& phase_map, int coord_a, int coord_b,
                     const Eigen::VectorXd& z);

/// (X^a, Y_a)_{Z^A Z^B} = sum_a dX^a/dZ^A dY_a/dZ^B (unsymmetrized).
double round_bracket(const CoordinateMap& phase_map, int coord_a, int coord_b,
                     const Eigen::VectorXd& z);

struct IntegrabilityReport {
  double max_phi_E = 0.0;  // {X^a,Y_a}_{Phi E^b}
  double max_phi_I = 0.0;  // {X^a,Y_a}_{Phi I^b}
  double max_EI = 0.0;     // {X^a,Y_a}_{E^b I^c} - delta_bc / f
  double max() const;
};

/// Residuals of the contactomorphism integrability conditions for a
/// candidate map and conformal factor f(Z).
IntegrabilityReport verify_integrability(
    const CoordinateMap& phase_map, const expr::Expression& f,
    const std::vector<PhasePoint>& points);

struct MetricConditionReport {
  double max_phi_phi = 0.0;
  double max_phi_E = 0.0;
  double max_phi_I = 0.0;
  double max_EE = 0.0;
  double max_EI = 0.0;  // (X^a,Y_a)_{E^b I^c} - (h_bc/2 - delta_bc/f)
  double max() const;
};

/// Residuals of the five h-block transformation conditions.
MetricConditionReport verify_metric_conditions(
    const CoordinateMap& phase_map, const expr::Expression& f,
    const std::function<Eigen::MatrixXd(const PhasePoint&)>& h,
    const std::vector<PhasePoint>& points);

}  // namespace gtd::phase
