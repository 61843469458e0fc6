#ifndef NAKANO_GEOMETRY_HPP
#define NAKANO_GEOMETRY_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nakano/linalg.hpp"

namespace nakano::geom {

using linalg::Complex;

// Base chart coordinates z_1..z_m.
using ChartPoint = std::vector<Complex>;
// Fiber chart coordinates zeta_1..zeta_f.
using FiberPoint = std::vector<Complex>;

struct Stencil {
  double step = 1e-3;
  int richardson_levels = 2;

  void validate() const {
    if (step < 1e-6 || step > 1e-1) throw std::invalid_argument("Stencil: step out of [1e-6, 1e-1]");
    if (richardson_levels < 1) throw std::invalid_argument("Stencil: levels must be >= 1");
  }
};

using ScalarField = std::function<Complex(const ChartPoint&)>;
using RealField = std::function<double(const ChartPoint&)>;
using MatrixField = std::function<linalg::CMatrix(const ChartPoint&)>;

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FiberQuadrature {
  std::size_t fiber_dim = 1;
  std::size_t radial_order = 0;
  std::size_t angular_order = 0;
  std::vector<FiberPoint> nodes;
  std::vector<double> weights;  // include the area-measure Jacobian
};

// Nodes/weights of the Gauss-Legendre rule on (0, 1).
void gauss_legendre_01(std::size_t n, std::vector<double>& x, std::vector<double>& w);

// Rule over C^f (f = 1 or 2) against Lebesgue area measure, built so that
// the radial substitution u = rho^2/(1+rho^2) makes (1+|zeta|^2)-power
// densities polynomial in u. Self-calibrates against integral of
// (1+|zeta|^2)^{-2} = pi per fiber coordinate.
FiberQuadrature build_fiber_quadrature(std::size_t f, std::size_t radial_order,
                                       std::size_t angular_order);

// Weighted sum over nodes, fixed order. Throws IntegrationError naming the
// node if the density evaluates non-finite.
Complex fiber_integrate(const std::function<Complex(const FiberPoint&)>& density,
                        const FiberQuadrature& rule);

namespace detail {

// Richardson extrapolation on a sequence D(h), D(h/2), ... with error O(h^2).
template <class T>
T richardson(std::vector<T> table) {
  double factor = 4.0;
  while (table.size() > 1) {
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
      table[i] = (table[i + 1] * factor - table[i]) * (1.0 / (factor - 1.0));
    table.pop_back();
    factor *= 4.0;
  }
  return table.front();
}

template <class T>
T d1_single(const std::function<T(const ChartPoint&)>& field, const ChartPoint& at, std::size_t i,
            double h, bool antiholomorphic) {
  ChartPoint p = at;
  p[i] = at[i] + h;
  T fxp = field(p);
  p[i] = at[i] - h;
  T fxm = field(p);
  p[i] = at[i] + Complex(0.0, h);
  T fyp = field(p);
  p[i] = at[i] - Complex(0.0, h);
  T fym = field(p);
  const Complex iu = antiholomorphic ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  return ((fxp - fxm) + (fyp - fym) * iu) * (1.0 / (4.0 * h));
}

}  // namespace detail

// d/dz_i = (d/dx_i - i d/dy_i)/2 by central differences, Richardson-extrapolated.
template <class T>
T wirtinger_d1(const std::function<T(const ChartPoint&)>& field, const ChartPoint& at,
               std::size_t i, const Stencil& st) {
  st.validate();
  std::vector<T> table;
  double h = st.step;
  for (int l = 0; l < st.richardson_levels; ++l, h *= 0.5)
    table.push_back(detail::d1_single(field, at, i, h, false));
  return detail::richardson(std::move(table));
}

// d/dzbar_i.
template <class T>
T wirtinger_dbar1(const std::function<T(const ChartPoint&)>& field, const ChartPoint& at,
                  std::size_t i, const Stencil& st) {
  st.validate();
  std::vector<T> table;
  double h = st.step;
  for (int l = 0; l < st.richardson_levels; ++l, h *= 0.5)
    table.push_back(detail::d1_single(field, at, i, h, true));
  return detail::richardson(std::move(table));
}

// d^2/dz_i dzbar_j. For i == j this is the quarter-Laplacian on the real
// stencil; otherwise composed one-variable central differences.
template <class T>
T mixed_ddbar(const std::function<T(const ChartPoint&)>& field, const ChartPoint& at, std::size_t i,
              std::size_t j, const Stencil& st) {
  st.validate();
  if (i == j) {
    std::vector<T> table;
    double h = st.step;
    for (int l = 0; l < st.richardson_levels; ++l, h *= 0.5) {
      ChartPoint p = at;
      p[i] = at[i] + h;
      T acc = field(p);
      p[i] = at[i] - h;
      acc = acc + field(p);
      p[i] = at[i] + Complex(0.0, h);
      acc = acc + field(p);
      p[i] = at[i] - Complex(0.0, h);
      acc = acc + field(p);
      acc = acc - field(at) * 4.0;
      table.push_back(acc * (1.0 / (4.0 * h * h)));
    }
    return detail::richardson(std::move(table));
  }
  std::function<T(const ChartPoint&)> inner = [&](const ChartPoint& p) {
    return wirtinger_dbar1<T>(field, p, j, st);
  };
  return wirtinger_d1<T>(inner, at, i, st);
}

}  // namespace nakano::geom

#endif
