#include "nakano/geometry.hpp"

#include <cmath>

namespace nakano::geom {

void gauss_legendre_01(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) + 1.0) * z * p2 - static_cast<double>(j) * p3) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 1e-15);
    // Map [-1,1] -> [0,1].
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

namespace {

FiberQuadrature build_planar_rule(std::size_t radial_order, std::size_t angular_order) {
  std::vector<double> u, wu;
  gauss_legendre_01(radial_order, u, wu);

  FiberQuadrature q;
  q.fiber_dim = 1;
  q.radial_order = radial_order;
  q.angular_order = angular_order;
  q.nodes.reserve(radial_order * angular_order);
  q.weights.reserve(radial_order * angular_order);

  const double dtheta = 2.0 * M_PI / static_cast<double>(angular_order);
  for (std::size_t a = 0; a < radial_order; ++a) {
    // u = rho^2/(1+rho^2);  rho drho = du / (2 (1-u)^2).
    const double rho = std::sqrt(u[a] / (1.0 - u[a]));
    const double wr = wu[a] / (2.0 * (1.0 - u[a]) * (1.0 - u[a]));
    for (std::size_t b = 0; b < angular_order; ++b) {
      const double theta = dtheta * static_cast<double>(b);
      q.nodes.push_back({Complex(rho * std::cos(theta), rho * std::sin(theta))});
      q.weights.push_back(wr * dtheta);
    }
  }

  // Self-calibration: the rule must reproduce integral over C of
  // (1+|zeta|^2)^{-2} dA = pi.
  double cal = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double r2 = std::norm(q.nodes[i][0]);
    cal += q.weights[i] / ((1.0 + r2) * (1.0 + r2));
  }
  if (std::abs(cal - M_PI) > 1e-10)
    throw IntegrationError("fiber quadrature self-calibration failed: got " + std::to_string(cal));
  return q;
}

}  // namespace

FiberQuadrature build_fiber_quadrature(std::size_t f, std::size_t radial_order,
                                       std::size_t angular_order) {
  if (f != 1 && f != 2) throw std::invalid_argument("build_fiber_quadrature: fiber dim must be 1 or 2");
  if (radial_order < 4 || angular_order < 4)
    throw std::invalid_argument("build_fiber_quadrature: orders must be >= 4");
  FiberQuadrature base = build_planar_rule(radial_order, angular_order);
  if (f == 1) return base;

  FiberQuadrature q;
  q.fiber_dim = 2;
  q.radial_order = radial_order;
  q.angular_order = angular_order;
  q.nodes.reserve(base.nodes.size() * base.nodes.size());
  q.weights.reserve(base.nodes.size() * base.nodes.size());
  for (std::size_t i = 0; i < base.nodes.size(); ++i)
    for (std::size_t j = 0; j < base.nodes.size(); ++j) {
      q.nodes.push_back({base.nodes[i][0], base.nodes[j][0]});
      q.weights.push_back(base.weights[i] * base.weights[j]);
    }
  return q;
}

Complex fiber_integrate(const std::function<Complex(const FiberPoint&)>& density,
                        const FiberQuadrature& rule) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Complex v = density(rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::string where = "(";
      for (const auto& c : rule.nodes[i])
        where += std::to_string(c.real()) + "+" + std::to_string(c.imag()) + "i,";
      where += ")";
      throw IntegrationError("non-finite density at node " + where);
    }
    acc += rule.weights[i] * v;
  }
  return acc;
}

}  // namespace nakano::geom
