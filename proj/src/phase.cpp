#include "gtd/phase.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gtd::phase {

PhasePoint::PhasePoint(double phi_, Eigen::VectorXd E_, Eigen::VectorXd I_)
    : phi(phi_), E(std::move(E_)), I(std::move(I_)) {
  if (E.size() != I.size())
    throw std::invalid_argument("PhasePoint: E/I dimension mismatch");
}

Eigen::VectorXd PhasePoint::coords() const {
  Eigen::VectorXd z(2 * n() + 1);
  z[0] = phi;
  z.segment(1, n()) = E;
  z.segment(1 + n(), n()) = I;
  return z;
}

PhasePoint PhasePoint::from_coords(const Eigen::VectorXd& z) {
  if (z.size() % 2 == 0)
    throw std::invalid_argument("PhasePoint: coords length must be odd");
  int n = static_cast<int>((z.size() - 1) / 2);
  return PhasePoint(z[0], z.segment(1, n), z.segment(1 + n, n));
}

std::vector<std::string> coord_names(int n) {
  std::vector<std::string> names;
  names.reserve(2 * n + 1);
  names.push_back("Phi");
  for (int a = 1; a <= n; ++a) names.push_back("E" + std::to_string(a));
  for (int a = 1; a <= n; ++a) names.push_back("I" + std::to_string(a));
  return names;
}

LegendreSpec LegendreSpec::total(int n) {
  LegendreSpec s;
  for (int a = 0; a < n; ++a) s.indices.push_back(a);
  return s;
}

LegendreSpec LegendreSpec::of(std::initializer_list<int> one_based) {
  LegendreSpec s;
  for (int a : one_based) {
    if (a < 1) throw std::invalid_argument("LegendreSpec: 1-based indices");
    s.indices.push_back(a - 1);
  }
  std::sort(s.indices.begin(), s.indices.end());
  return s;
}

bool LegendreSpec::contains(int zero_based) const {
  return std::binary_search(indices.begin(), indices.end(), zero_based);
}

std::vector<LegendreSpec> all_specs(int n) {
  std::vector<LegendreSpec> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    LegendreSpec s;
    for (int a = 0; a < n; ++a)
      if (mask & (1u << a)) s.indices.push_back(a);
    out.push_back(std::move(s));
  }
  return out;
}

PhasePoint legendre_apply(const LegendreSpec& spec, const PhasePoint& p) {
  PhasePoint q = p;
  double shift = 0.0;
  for (int a : spec.indices) {
    if (a >= p.n()) throw std::invalid_argument("LegendreSpec index > n");
    q.E[a] = p.I[a];
    q.I[a] = -p.E[a];
    shift += p.E[a] * p.I[a];
  }
  q.phi = p.phi - shift;
  return q;
}

CoordinateMap::CoordinateMap(std::vector<std::string> source_coords,
                             std::vector<expr::Expression> components)
    : source_(std::move(source_coords)), comps_(std::move(components)) {}

Eigen::VectorXd CoordinateMap::operator()(const Eigen::VectorXd& z) const {
  std::map<std::string, double> env;
  for (int i = 0; i < source_dim(); ++i) env[source_[i]] = z[i];
  Eigen::VectorXd out(target_dim());
  for (int i = 0; i < target_dim(); ++i)
    out[i] = expr::evaluate(comps_[i], env);
  return out;
}

std::vector<Jet> CoordinateMap::component_jets(const Eigen::VectorXd& z,
                                               int order) const {
  auto seeds = seed_jets({z.data(), static_cast<std::size_t>(z.size())}, order);
  std::map<std::string, Jet> env;
  for (int i = 0; i < source_dim(); ++i) env.emplace(source_[i], seeds[i]);
  std::vector<Jet> out;
  out.reserve(target_dim());
  for (const auto& c : comps_) out.push_back(expr::evaluate(c, env));
  return out;
}

Eigen::MatrixXd CoordinateMap::jacobian(const Eigen::VectorXd& z) const {
  auto jets = component_jets(z, 1);
  Eigen::MatrixXd J(target_dim(), source_dim());
  std::vector<int> idx(source_dim(), 0);
  for (int i = 0; i < target_dim(); ++i)
    for (int j = 0; j < source_dim(); ++j) {
      std::fill(idx.begin(), idx.end(), 0);
      idx[j] = 1;
      J(i, j) = jets[i].partial(idx);
    }
  return J;
}

CoordinateMap legendre_map(const LegendreSpec& spec, int n) {
  auto names = coord_names(n);
  std::vector<expr::Expression> comps(2 * n + 1);
  expr::Expression phi = expr::variable("Phi");
  for (int a : spec.indices)
    phi = phi - expr::variable(names[1 + a]) * expr::variable(names[1 + n + a]);
  comps[0] = phi;
  for (int a = 0; a < n; ++a) {
    if (spec.contains(a)) {
      comps[1 + a] = expr::variable(names[1 + n + a]);        // tilde E = I
      comps[1 + n + a] = -expr::variable(names[1 + a]);       // tilde I = -E
    } else {
      comps[1 + a] = expr::variable(names[1 + a]);
      comps[1 + n + a] = expr::variable(names[1 + n + a]);
    }
  }
  return CoordinateMap(names, std::move(comps));
}

OneForm contact_form(const PhasePoint& p) {
  OneForm out;
  out.w = Eigen::VectorXd::Zero(2 * p.n() + 1);
  out.w[0] = 1.0;
  for (int a = 0; a < p.n(); ++a) out.w[1 + a] = -p.I[a];
  return out;
}

double contact_nondegeneracy_det(const PhasePoint& p) {
  int n = p.n();
  int dim = 2 * n + 1;
  Eigen::VectorXd theta = contact_form(p).w;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  // dTheta = dE^a ^ dI_a as an antisymmetric matrix over (Phi, E, I)
  for (int a = 0; a < n; ++a) {
    M(1 + a, 1 + n + a) = 1.0;
    M(1 + n + a, 1 + a) = -1.0;
  }
  M += theta * theta.transpose();
  return M.determinant();
}

OneForm pullback_form(const CoordinateMap& map, const OneForm& target_form,
                      const Eigen::VectorXd& source_point) {
  Eigen::MatrixXd J = map.jacobian(source_point);
  if (target_form.w.size() != J.rows())
    throw std::invalid_argument("pullback_form: form/map dimension mismatch");
  OneForm out;
  out.w = J.transpose() * target_form.w;
  return out;
}

Eigen::MatrixXd pullback_metric(const CoordinateMap& map,
                                const Eigen::MatrixXd& target_metric,
                                const Eigen::VectorXd& source_point) {
  Eigen::MatrixXd J = map.jacobian(source_point);
  if (target_metric.rows() != J.rows() || target_metric.cols() != J.rows())
    throw std::invalid_argument("pullback_metric: dimension mismatch");
  return J.transpose() * target_metric * J;
}

namespace {

// Jacobian rows for the X^a and Y_a components of a phase map (F, X, Y).
struct PhaseMapDerivs {
  Eigen::MatrixXd J;  // (2n+1) x (2n+1)
  int n;
};

PhaseMapDerivs phase_map_derivs(const CoordinateMap& m,
                                const Eigen::VectorXd& z) {
  if (m.target_dim() != m.source_dim() || m.target_dim() % 2 == 0)
    throw std::invalid_argument("phase map must be (F, X^a, Y_a) over Z^A");
  return {m.jacobian(z), (m.target_dim() - 1) / 2};
}

}  // namespace

double curly_bracket(const CoordinateMap& phase_map, int coord_a, int coord_b,
                     const Eigen::VectorXd& z) {
  auto [J, n] = phase_map_derivs(phase_map, z);
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    int X = 1 + a, Y = 1 + n + a;
    acc += J(X, coord_a) * J(Y, coord_b) - J(X, coord_b) * J(Y, coord_a);
  }
  return acc;
}

double round_bracket(const CoordinateMap& phase_map, int coord_a, int coord_b,
                     const Eigen::VectorXd& z) {
  auto [J, n] = phase_map_derivs(phase_map, z);
  double acc = 0.0;
  for (int a = 0; a < n; ++a)
    acc += J(1 + a, coord_a) * J(1 + n + a, coord_b);
  return acc;
}

double IntegrabilityReport::max() const {
  return std::max({max_phi_E, max_phi_I, max_EI});
}

IntegrabilityReport verify_integrability(const CoordinateMap& phase_map,
                                         const expr::Expression& f,
                                         const std::vector<PhasePoint>& points) {
  IntegrabilityReport rep;
  for (const auto& p : points) {
    int n = p.n();
    Eigen::VectorXd z = p.coords();
    std::map<std::string, double> env;
    auto names = coord_names(n);
    for (int i = 0; i < 2 * n + 1; ++i) env[names[i]] = z[i];
    double fv = expr::evaluate(f, env);
    if (fv == 0.0) throw DomainError("verify_integrability: f = 0");
    auto [J, nn] = phase_map_derivs(phase_map, z);
    (void)nn;
    auto curly = [&](int A, int B) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        int X = 1 + a, Y = 1 + n + a;
        acc += J(X, A) * J(Y, B) - J(X, B) * J(Y, A);
      }
      return acc;
    };
    for (int b = 0; b < n; ++b) {
      rep.max_phi_E = std::max(rep.max_phi_E, std::abs(curly(0, 1 + b)));
      rep.max_phi_I = std::max(rep.max_phi_I, std::abs(curly(0, 1 + n + b)));
      for (int c = 0; c < n; ++c) {
        double expect = (b == c) ? 1.0 / fv : 0.0;
        rep.max_EI = std::max(rep.max_EI,
                              std::abs(curly(1 + b, 1 + n + c) - expect));
      }
    }
  }
  return rep;
}

double MetricConditionReport::max() const {
  return std::max({max_phi_phi, max_phi_E, max_phi_I, max_EE, max_EI});
}

MetricConditionReport verify_metric_conditions(
    const CoordinateMap& phase_map, const expr::Expression& f,
    const std::function<Eigen::MatrixXd(const PhasePoint&)>& h,
    const std::vector<PhasePoint>& points) {
  MetricConditionReport rep;
  for (const auto& p : points) {
    int n = p.n();
    Eigen::VectorXd z = p.coords();
    std::map<std::string, double> env;
    auto names = coord_names(n);
    for (int i = 0; i < 2 * n + 1; ++i) env[names[i]] = z[i];
    double fv = expr::evaluate(f, env);
    if (fv == 0.0) throw DomainError("verify_metric_conditions: f = 0");
    Eigen::MatrixXd hv = h(p);
    auto [J, nn] = phase_map_derivs(phase_map, z);
    (void)nn;
    auto round = [&](int A, int B) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        acc += J(1 + a, A) * J(1 + n + a, B);
      return acc;
    };
    rep.max_phi_phi = std::max(rep.max_phi_phi, std::abs(round(0, 0)));
    for (int b = 0; b < n; ++b) {
      rep.max_phi_E = std::max(rep.max_phi_E, std::abs(round(0, 1 + b)));
      rep.max_phi_I = std::max(rep.max_phi_I, std::abs(round(0, 1 + n + b)));
      for (int c = 0; c < n; ++c) {
        rep.max_EE = std::max(rep.max_EE, std::abs(round(1 + b, 1 + c)));
        double expect = 0.5 * hv(b, c) - (b == c ? 1.0 / fv : 0.0);
        rep.max_EI = std::max(rep.max_EI,
                              std::abs(round(1 + b, 1 + n + c) - expect));
      }
    }
  }
  return rep;
}

}  // namespace gtd::phase
