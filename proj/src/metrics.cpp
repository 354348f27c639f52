#include "gtd/metrics.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "gtd/errors.hpp"
#include "gtd/jets.hpp"

namespace gtd::metrics {

namespace {

double ipow(double x, long long e) {
  if (e < 0) {
    if (x == 0.0) throw DomainError("zero base with negative weight exponent");
    return 1.0 / ipow(x, -e);
  }
  double r = 1.0, b = x;
  for (; e; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

GtdKind GtdKind::I(Eigen::VectorXd xi) {
  return {Family::I, 0, std::move(xi)};
}
GtdKind GtdKind::II(Eigen::VectorXd xi) {
  return {Family::II, 0, std::move(xi)};
}
GtdKind GtdKind::III(int k) { return {Family::III, k, {}}; }

Eigen::VectorXd GtdKind::chi_diag(int n) const {
  Eigen::VectorXd chi = Eigen::VectorXd::Ones(n);
  if (family == Family::II && n > 0) chi(0) = -1.0;
  return chi;
}

Eigen::VectorXd GtdKind::xi_diag(int n) const {
  if (xi.size() == 0) return Eigen::VectorXd::Ones(n);
  if (xi.size() != n) throw DomainError("xi dimension mismatch");
  return xi;
}

std::string GtdKind::label() const {
  switch (family) {
    case Family::I:
      return "I";
    case Family::II:
      return "II";
    case Family::III:
      return "III(k=" + std::to_string(k) + ")";
  }
  return "?";
}

Eigen::MatrixXd h_block(const GtdKind& kind, const Eigen::VectorXd& E,
                        const Eigen::VectorXd& I) {
  const int n = static_cast<int>(E.size());
  if (I.size() != n) throw DomainError("E/I dimension mismatch");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  if (kind.family == GtdKind::Family::III) {
    const long long w = 2LL * kind.k + 1;
    for (int a = 0; a < n; ++a) h(a, a) = ipow(E(a) * I(a), w);
  } else {
    const Eigen::VectorXd xi = kind.xi_diag(n);
    const double lambda = (xi.array() * E.array() * I.array()).sum();
    h.diagonal() = lambda * kind.chi_diag(n);
  }
  return h;
}

Eigen::MatrixXd phase_metric(const GtdKind& kind, const phase::PhasePoint& p) {
  const int n = static_cast<int>(p.E.size());
  const int dim = 2 * n + 1;
  const Eigen::VectorXd w = phase::contact_form(p).w;
  Eigen::MatrixXd G = w * w.transpose();
  const Eigen::MatrixXd h = h_block(kind, p.E, p.I);
  // (h_ab dE^a dI_b)_sym contributes h/2 to the E-I and I-E blocks.
  G.block(1, 1 + n, n, n) += 0.5 * h;
  G.block(1 + n, 1, n, n) += 0.5 * h.transpose();
  return G;
}

EquilibriumEmbedding::EquilibriumEmbedding(SystemDefinition sys)
    : sys_(std::move(sys)) {}

double EquilibriumEmbedding::potential(const Eigen::VectorXd& E) const {
  return sys_.potential(as_span(E));
}

Eigen::VectorXd EquilibriumEmbedding::intensives(const Eigen::VectorXd& E) const {
  const Jet j = sys_.potential_jet(as_span(E), 1);
  Eigen::VectorXd I(n());
  for (int a = 0; a < n(); ++a) I(a) = j.derivative(a).value();
  return I;
}

Eigen::MatrixXd EquilibriumEmbedding::hessian(const Eigen::VectorXd& E) const {
  const Jet j = sys_.potential_jet(as_span(E), 2);
  Eigen::MatrixXd H(n(), n());
  for (int a = 0; a < n(); ++a)
    for (int b = a; b < n(); ++b)
      H(a, b) = H(b, a) = j.derivative(a).derivative(b).value();
  return H;
}

phase::PhasePoint EquilibriumEmbedding::point(const Eigen::VectorXd& E) const {
  return {potential(E), E, intensives(E)};
}

Eigen::MatrixXd EquilibriumEmbedding::jacobian(const Eigen::VectorXd& E) const {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n() + 1, n());
  J.row(0) = intensives(E).transpose();                    // dPhi = I_a dE^a
  J.block(1, 0, n(), n()).setIdentity();                   // dE^a
  J.block(1 + n(), 0, n(), n()) = hessian(E);              // dI_a = Phi_{,ab} dE^b
  return J;
}

Eigen::VectorXd EquilibriumEmbedding::pullback_contact_form(
    const Eigen::VectorXd& E) const {
  const Eigen::VectorXd w = phase::contact_form(point(E)).w;
  return jacobian(E).transpose() * w;
}

Eigen::MatrixXd EquilibriumEmbedding::pullback_metric(
    const GtdKind& kind, const Eigen::VectorXd& E) const {
  const Eigen::MatrixXd G = metrics::phase_metric(kind, point(E));
  const Eigen::MatrixXd J = jacobian(E);
  return J.transpose() * G * J;
}

Eigen::MatrixXd equilibrium_metric(const GtdKind& kind,
                                   const SystemDefinition& sys,
                                   const Eigen::VectorXd& E) {
  sys.require_in_domain(as_span(E));
  const int n = sys.dim();
  const Jet j = sys.potential_jet(as_span(E), 2);
  Eigen::MatrixXd H(n, n);
  Eigen::VectorXd I(n);
  for (int a = 0; a < n; ++a) {
    const Jet da = j.derivative(a);
    I(a) = da.value();
    for (int b = a; b < n; ++b) H(a, b) = H(b, a) = da.derivative(b).value();
  }
  Eigen::MatrixXd g(n, n);
  if (kind.family == GtdKind::Family::III) {
    const long long w = 2LL * kind.k + 1;
    Eigen::VectorXd wt(n);
    for (int a = 0; a < n; ++a) wt(a) = ipow(E(a) * I(a), w);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g(a, b) = 0.5 * (wt(a) + wt(b)) * H(a, b);
  } else {
    const Eigen::VectorXd xi = kind.xi_diag(n);
    const Eigen::VectorXd chi = kind.chi_diag(n);
    const double lambda = (xi.array() * E.array() * I.array()).sum();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        g(a, b) = lambda * 0.5 * (chi(a) + chi(b)) * H(a, b);
  }
  return g;
}

manifold::MetricField equilibrium_metric_field(const GtdKind& kind,
                                               const SystemDefinition& sys) {
  const int n = sys.dim();
  auto comps = [kind, sys, n](const Eigen::VectorXd& E) {
    sys.require_in_domain(as_span(E));
    const Jet phi = sys.potential_jet(as_span(E), 4);
    const std::vector<Jet> x = seed_jets(as_span(E), 4);
    std::vector<Jet> dphi, hess;  // hess in (a,b) a<=b upper-triangle order
    dphi.reserve(n);
    for (int a = 0; a < n; ++a) dphi.push_back(phi.derivative(a));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        hess.push_back(dphi[a].derivative(b).truncated(2));
    auto hess_at = [&](int a, int b) -> const Jet& {
      if (a > b) std::swap(a, b);
      return hess[a * n + b - a * (a + 1) / 2];
    };
    std::vector<Jet> out;
    out.reserve(hess.size());
    if (kind.family == GtdKind::Family::III) {
      const long long w = 2LL * kind.k + 1;
      std::vector<Jet> wt;
      wt.reserve(n);
      for (int a = 0; a < n; ++a)
        wt.push_back(
            pow_int(x[a].truncated(2) * dphi[a].truncated(2), w));
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          out.push_back(0.5 * (wt[a] + wt[b]) * hess_at(a, b));
    } else {
      const Eigen::VectorXd xi = kind.xi_diag(n);
      const Eigen::VectorXd chi = kind.chi_diag(n);
      Jet lambda = Jet::constant(n, 2, 0.0);
      for (int c = 0; c < n; ++c)
        lambda += xi(c) * (x[c].truncated(2) * dphi[c].truncated(2));
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          out.push_back((0.5 * (chi(a) + chi(b))) * lambda * hess_at(a, b));
    }
    return out;
  };
  return manifold::MetricField::from_jets(n, std::move(comps));
}

Eigen::MatrixXd hessian_metric(const SystemDefinition& sys,
                               const Eigen::VectorXd& E) {
  sys.require_in_domain(as_span(E));
  return EquilibriumEmbedding(sys).hessian(E);
}

manifold::MetricField hessian_metric_field(const SystemDefinition& sys) {
  const int n = sys.dim();
  auto comps = [sys, n](const Eigen::VectorXd& E) {
    sys.require_in_domain(as_span(E));
    const Jet phi = sys.potential_jet(as_span(E), 4);
    std::vector<Jet> out;
    out.reserve(n * (n + 1) / 2);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        out.push_back(phi.derivative(a).derivative(b).truncated(2));
    return out;
  };
  return manifold::MetricField::from_jets(n, std::move(comps));
}

Eigen::MatrixXd ruppeiner(const SystemDefinition& sys,
                          const Eigen::VectorXd& E) {
  if (sys.potential_name != "S")
    throw DomainError("ruppeiner metric needs an entropy potential, got " +
                      sys.potential_name);
  return -hessian_metric(sys, E);
}

manifold::MetricField ruppeiner_metric_field(const SystemDefinition& sys) {
  if (sys.potential_name != "S")
    throw DomainError("ruppeiner metric needs an entropy potential, got " +
                      sys.potential_name);
  const int n = sys.dim();
  auto comps = [sys, n](const Eigen::VectorXd& E) {
    sys.require_in_domain(as_span(E));
    const Jet phi = sys.potential_jet(as_span(E), 4);
    std::vector<Jet> out;
    out.reserve(n * (n + 1) / 2);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        out.push_back(-phi.derivative(a).derivative(b).truncated(2));
    return out;
  };
  return manifold::MetricField::from_jets(n, std::move(comps));
}

Eigen::MatrixXd weinhold(const SystemDefinition& sys,
                         const Eigen::VectorXd& E) {
  if (sys.potential_name == "S")
    throw DomainError("weinhold metric needs an energy potential, got S");
  return hessian_metric(sys, E);
}

InvarianceCheck legendre_invariance_check(const GtdKind& kind,
                                          const phase::LegendreSpec& spec,
                                          int n, int npoints,
                                          unsigned int seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u_ei(0.5, 2.0);
  std::uniform_real_distribution<double> u_phi(-1.0, 1.0);
  const phase::CoordinateMap map = phase::legendre_map(spec, n);
  InvarianceCheck out;
  for (int p = 0; p < npoints; ++p) {
    phase::PhasePoint z;
    z.phi = u_phi(rng);
    z.E.resize(n);
    z.I.resize(n);
    for (int a = 0; a < n; ++a) z.E(a) = u_ei(rng);
    for (int a = 0; a < n; ++a) z.I(a) = u_ei(rng);
    const phase::PhasePoint zt = legendre_apply(spec, z);
    const Eigen::MatrixXd G = phase_metric(kind, z);
    const Eigen::MatrixXd Gt = phase_metric(kind, zt);
    const Eigen::MatrixXd back =
        phase::pullback_metric(map, Gt, z.coords());
    out.max_residual =
        std::max(out.max_residual, (back - G).array().abs().maxCoeff());
    ++out.points;
  }
  return out;
}

}  // namespace gtd::metrics
