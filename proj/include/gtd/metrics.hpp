#pragma once

// The GTD metrics: phase-space G^I, G^II, G^III; their equilibrium pullbacks;
// and the classical Hessian metrics (Weinhold, Ruppeiner). Symmetric-product
// convention throughout: dx dy = (dx (x) dy + dy (x) dx) / 2.

#include <Eigen/Dense>

#include "gtd/catalog.hpp"
#include "gtd/manifold.hpp"
#include "gtd/phase.hpp"

namespace gtd::metrics {

struct GtdKind {
  enum class Family { I, II, III };
  Family family = Family::II;
  int k = 0;            // G^III weight exponent, h_aa = (E^a I^a)^{2k+1}
  Eigen::VectorXd xi;   // diagonal xi for I/II; empty means all-ones

  static GtdKind I(Eigen::VectorXd xi = {});
  static GtdKind II(Eigen::VectorXd xi = {});
  static GtdKind III(int k);

  /// Diagonal of chi: all ones for I, (-1,1,..,1) for II.
  Eigen::VectorXd chi_diag(int n) const;
  Eigen::VectorXd xi_diag(int n) const;
  std::string label() const;
};

/// The h_{ab} block of Eq-(12)-form metrics: Lambda * chi_ab for I/II with
/// Lambda = sum_a xi_a E^a I^a, and diag((E^a I^a)^{2k+1}) for III.
Eigen::MatrixXd h_block(const GtdKind& kind, const Eigen::VectorXd& E,
                        const Eigen::VectorXd& I);

/// G = Theta (x) Theta + (h_ab dE^a dI^b)_sym as a (2n+1)x(2n+1) symmetric
/// matrix over (Phi, E, I).
Eigen::MatrixXd phase_metric(const GtdKind& kind, const phase::PhasePoint& p);

/// The equilibrium embedding E^a -> (Phi(E), E^a, I_a(E) = dPhi/dE^a).
class EquilibriumEmbedding {
 public:
  explicit EquilibriumEmbedding(SystemDefinition sys);

  const SystemDefinition& system() const { return sys_; }
  int n() const { return sys_.dim(); }

  double potential(const Eigen::VectorXd& E) const;
  Eigen::VectorXd intensives(const Eigen::VectorXd& E) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& E) const;
  phase::PhasePoint point(const Eigen::VectorXd& E) const;

  /// d(Phi, E, I)/dE, a (2n+1) x n matrix.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& E) const;

  /// phi^*(Theta) components; identically zero by the first law.
  Eigen::VectorXd pullback_contact_form(const Eigen::VectorXd& E) const;

  /// phi^*(G) for the phase metric of `kind`.
  Eigen::MatrixXd pullback_metric(const GtdKind& kind,
                                  const Eigen::VectorXd& E) const;

 private:
  SystemDefinition sys_;
};

/// g = phi^*(G) from the closed-form Eq.(13)/(34) expressions.
Eigen::MatrixXd equilibrium_metric(const GtdKind& kind,
                                   const SystemDefinition& sys,
                                   const Eigen::VectorXd& E);

/// Same metric with exact derivatives, for curvature work.
manifold::MetricField equilibrium_metric_field(const GtdKind& kind,
                                               const SystemDefinition& sys);

Eigen::MatrixXd hessian_metric(const SystemDefinition& sys,
                               const Eigen::VectorXd& E);
manifold::MetricField hessian_metric_field(const SystemDefinition& sys);

/// Ruppeiner metric -d2S (entropy potential); positive definite on stable
/// states.
Eigen::MatrixXd ruppeiner(const SystemDefinition& sys, const Eigen::VectorXd& E);
manifold::MetricField ruppeiner_metric_field(const SystemDefinition& sys);

/// Weinhold metric +d2U (energy potential).
Eigen::MatrixXd weinhold(const SystemDefinition& sys, const Eigen::VectorXd& E);

struct InvarianceCheck {
  double max_residual = 0.0;
  int points = 0;
};

/// Transports phase_metric through the Legendre coordinate change and
/// compares with the same functional form at the transformed point:
/// max |J^T G(tilde Z) J - G(Z)| over seeded random phase points with
/// E, I in [0.5, 2] and Phi in [-1, 1].
InvarianceCheck legendre_invariance_check(const GtdKind& kind,
                                          const phase::LegendreSpec& spec,
                                          int n, int npoints,
                                          unsigned int seed);

}  // namespace gtd::metrics
