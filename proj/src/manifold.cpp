#include "gtd/manifold.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace gtd::manifold {

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

MetricField MetricField::from_jets(
    int dim, std::function<std::vector<Jet>(const Eigen::VectorXd&)> comps) {
  auto eval = [dim, comps = std::move(comps)](const Eigen::VectorXd& x) {
    if (x.size() != dim)
      throw std::invalid_argument("MetricField: wrong point dimension");
    std::vector<Jet> tri = comps(x);
    if (static_cast<int>(tri.size()) != dim * (dim + 1) / 2)
      throw std::logic_error("MetricField: wrong number of components");
    MetricDerivatives out;
    out.g = Eigen::MatrixXd::Zero(dim, dim);
    out.dg = Tensor3(dim);
    out.d2g = Tensor4(dim);
    std::vector<int> idx(dim, 0);
    int t = 0;
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b, ++t) {
        const Jet& j = tri[t];
        if (j.nvars() != dim || j.order() < 2)
          throw std::logic_error("MetricField: component jet must have order >= 2");
        double val = j.value();
        out.g(a, b) = out.g(b, a) = val;
        for (int c = 0; c < dim; ++c) {
          std::fill(idx.begin(), idx.end(), 0);
          idx[c] = 1;
          double d1 = j.partial(idx);
          out.dg(c, a, b) = out.dg(c, b, a) = d1;
          for (int d = c; d < dim; ++d) {
            std::fill(idx.begin(), idx.end(), 0);
            idx[c] += 1;
            idx[d] += 1;
            double d2 = j.partial(idx);
            out.d2g(c, d, a, b) = out.d2g(c, d, b, a) = d2;
            out.d2g(d, c, a, b) = out.d2g(d, c, b, a) = d2;
          }
        }
      }
    }
    return out;
  };
  return MetricField(dim, std::move(eval));
}

MetricField MetricField::from_exprs(
    const std::vector<std::string>& coords,
    const std::vector<std::vector<expr::Expression>>& components) {
  int dim = static_cast<int>(coords.size());
  if (static_cast<int>(components.size()) != dim)
    throw std::invalid_argument("from_exprs: component matrix dimension");
  auto comps = [coords, components, dim](const Eigen::VectorXd& x) {
    auto seeds = seed_jets({x.data(), static_cast<std::size_t>(x.size())}, 2);
    std::map<std::string, Jet> env;
    for (int i = 0; i < dim; ++i) env.emplace(coords[i], seeds[i]);
    std::vector<Jet> tri;
    tri.reserve(dim * (dim + 1) / 2);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b)
        tri.push_back(expr::evaluate(components[a][b], env));
    return tri;
  };
  return MetricField::from_jets(dim, std::move(comps));
}

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kConditionLimit) {
    std::ostringstream os;
    os << "degenerate metric: condition number "
       << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());
    throw DegenerateMetricError(os.str());
  }
  return g.fullPivLu().inverse();
}

Tensor3 christoffel(const MetricDerivatives& m) {
  int n = static_cast<int>(m.g.rows());
  Eigen::MatrixXd gi = metric_inverse(m.g);
  Tensor3 gamma(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d)
          acc += gi(a, d) *
                 (m.dg(b, d, c) + m.dg(c, b, d) - m.dg(d, b, c));
        gamma(a, b, c) = gamma(a, c, b) = 0.5 * acc;
      }
  return gamma;
}

Tensor3 christoffel(const MetricField& metric, const Eigen::VectorXd& x) {
  return christoffel(metric.eval(x));
}

CurvatureBundle riemann(const MetricDerivatives& m) {
  int n = static_cast<int>(m.g.rows());
  Eigen::MatrixXd gi = metric_inverse(m.g);
  CurvatureBundle out;
  out.dim = n;
  out.gamma = christoffel(m);

  // d_e g^{ad} = -g^{ap} (d_e g_pq) g^{qd}
  Tensor3 dgi(n);
  for (int e = 0; e < n; ++e) {
    Eigen::MatrixXd dg_e(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) dg_e(p, q) = m.dg(e, p, q);
    Eigen::MatrixXd d = -gi * dg_e * gi;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dgi(e, a, b) = d(a, b);
  }

  // d_e Gamma^a_{bc}
  Tensor4 dgamma(n);
  for (int e = 0; e < n; ++e)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = b; c < n; ++c) {
          double acc = 0.0;
          for (int d = 0; d < n; ++d) {
            acc += dgi(e, a, d) *
                   (m.dg(b, d, c) + m.dg(c, b, d) - m.dg(d, b, c));
            acc += gi(a, d) * (m.d2g(e, b, d, c) + m.d2g(e, c, b, d) -
                               m.d2g(e, d, b, c));
          }
          dgamma(e, a, b, c) = dgamma(e, a, c, b) = 0.5 * acc;
        }

  out.riemann_up = Tensor4(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = dgamma(c, a, d, b) - dgamma(d, a, c, b);
          for (int e = 0; e < n; ++e)
            acc += out.gamma(a, c, e) * out.gamma(e, d, b) -
                   out.gamma(a, d, e) * out.gamma(e, c, b);
          out.riemann_up(a, b, c, d) = acc;
        }

  out.riemann_down = Tensor4(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = 0.0;
          for (int e = 0; e < n; ++e)
            acc += m.g(a, e) * out.riemann_up(e, b, c, d);
          out.riemann_down(a, b, c, d) = acc;
        }

  out.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += out.riemann_up(a, b, a, d);
      out.ricci(b, d) = acc;
    }

  out.scalar = 0.0;
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) out.scalar += gi(b, d) * out.ricci(b, d);

  // K = R_{abcd} R^{abcd}
  out.kretschmann = 0.0;
  {
    Tensor4 rupup(n);  // R^{ab}_{cd}
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double acc = 0.0;
            for (int e = 0; e < n; ++e)
              acc += gi(b, e) * out.riemann_up(a, e, c, d);
            rupup(a, b, c, d) = acc;
          }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double up = 0.0;
            for (int e = 0; e < n; ++e)
              for (int f = 0; f < n; ++f)
                up += gi(c, e) * gi(d, f) * rupup(a, b, e, f);
            out.kretschmann += out.riemann_down(a, b, c, d) * up;
          }
  }

  out.ricci_sq = 0.0;
  Eigen::MatrixXd ric_up = gi * out.ricci * gi;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.ricci_sq += out.ricci(a, b) * ric_up(a, b);

  return out;
}

CurvatureBundle riemann(const MetricField& metric, const Eigen::VectorXd& x) {
  return riemann(metric.eval(x));
}

std::size_t GridSpec::npoints() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

Eigen::VectorXd GridSpec::point(std::size_t flat_index) const {
  int dim = static_cast<int>(axes.size());
  Eigen::VectorXd x(dim);
  std::size_t rem = flat_index;
  for (int d = dim - 1; d >= 0; --d) {
    const auto& a = axes[d];
    std::size_t i = rem % a.count;
    rem /= a.count;
    x[d] = a.count == 1 ? a.lo
                        : a.lo + (a.hi - a.lo) * static_cast<double>(i) /
                                     (a.count - 1);
  }
  return x;
}

std::vector<ScanPoint> curvature_scan(const MetricField& metric,
                                      const GridSpec& grid, Exec exec) {
  if (static_cast<int>(grid.axes.size()) != metric.dim())
    throw std::invalid_argument("curvature_scan: grid/metric dimension mismatch");
  for (const auto& a : grid.axes)
    if (a.count < 1) throw std::invalid_argument("curvature_scan: axis count");
  std::size_t n = grid.npoints();
  std::vector<ScanPoint> out(n);
  auto body = [&](std::size_t i) {
    ScanPoint& p = out[i];
    p.x = grid.point(i);
    try {
      MetricDerivatives m = metric.eval(p.x);
      CurvatureBundle b = riemann(m);
      p.scalar = b.scalar;
      p.kretschmann = b.kretschmann;
      p.ricci_sq = b.ricci_sq;
      p.det_g = m.g.determinant();
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

FlatnessReport flatness_report(const MetricField& metric, const GridSpec& grid,
                               double tol, Exec exec) {
  auto scan = curvature_scan(metric, grid, exec);
  FlatnessReport rep;
  for (const auto& p : scan) {
    if (!p.ok) {
      ++rep.failed;
      continue;
    }
    ++rep.evaluated;
    rep.max_abs_scalar = std::max(rep.max_abs_scalar, std::abs(p.scalar));
    rep.max_kretschmann = std::max(rep.max_kretschmann, std::abs(p.kretschmann));
    rep.max_ricci_sq = std::max(rep.max_ricci_sq, std::abs(p.ricci_sq));
  }
  if (rep.failed > 0)
    throw DomainError("flatness_report: " + std::to_string(rep.failed) +
                      " grid points failed to evaluate");
  rep.flat = rep.max_abs_scalar <= tol &&
             std::sqrt(rep.max_kretschmann) <= tol &&
             std::sqrt(rep.max_ricci_sq) <= tol;
  return rep;
}

}  // namespace gtd::manifold
