#include "nakano/direct_image.hpp"

#include <cmath>

namespace nakano::dimg {

SectionBasis section_basis(int k, int r) {
  if (r != 2 && r != 3) throw std::invalid_argument("section_basis: rank must be 2 or 3");
  if (k < 0) throw std::invalid_argument("section_basis: k must be >= 0");
  SectionBasis b;
  b.k = k;
  b.r = r;
  if (r == 2) {
    for (int a = 0; a <= k; ++a) b.exponents.push_back({a});
  } else {
    // graded-lex over monomials of total degree <= k in two chart variables
    for (int deg = 0; deg <= k; ++deg)
      for (int a1 = deg; a1 >= 0; --a1) b.exponents.push_back({a1, deg - a1});
  }
  return b;
}

namespace {

Complex monomial(const std::vector<int>& exps, const FiberPoint& zeta) {
  Complex v = 1.0;
  for (std::size_t t = 0; t < exps.size(); ++t)
    for (int p = 0; p < exps[t]; ++p) v *= zeta[t];
  return v;
}

}  // namespace

HermitianMatrix gram_matrix(const BundleSpec& e, int k, const ChartPoint& z,
                            const FiberQuadrature& rule) {
  const auto pw = bundles::proj_weight(e, k);
  if (rule.fiber_dim != pw.fiber_dim())
    throw std::invalid_argument("gram_matrix: quadrature fiber dimension mismatch");
  const auto basis = section_basis(k, static_cast<int>(e.rank()));
  const std::size_t n = basis.dimension();

  CMatrix h(n, n);
  std::vector<Complex> mono(n);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const FiberPoint& zeta = rule.nodes[q];
    const double w = rule.weights[q] * std::exp(-pw.eval(z, zeta));
    if (!std::isfinite(w))
      throw geom::IntegrationError("gram_matrix: non-finite weight at node " + std::to_string(q));
    for (std::size_t a = 0; a < n; ++a) mono[a] = monomial(basis.exponents[a], zeta);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) h(a, b) += w * mono[a] * std::conj(mono[b]);
  }
  return linalg::hermitize(h).first;
}

MatrixFamily gram_family(const BundleSpec& e, int k, const FiberQuadrature& rule) {
  const auto basis = section_basis(k, static_cast<int>(e.rank()));
  auto eval = [e, k, rule](const ChartPoint& z) { return gram_matrix(e, k, z, rule).m; };
  return MatrixFamily{basis.dimension(), eval};
}

MatrixFamily normal_frame_transform(const MatrixFamily& fam, const ChartPoint& xi,
                                    const Stencil& st) {
  return bundles::normal_frame(fam, xi, st);
}

L2CurvatureResult l2_curvature(const BundleSpec& e, int k, const ChartPoint& xi,
                               const PipelineOptions& opt) {
  e.validate();
  const auto rule =
      geom::build_fiber_quadrature(e.rank() - 1, opt.radial_order, opt.resolved_angular(k));
  const auto fam = gram_family(e, k, rule);
  L2CurvatureResult res;
  res.tensor = bundles::curvature_from_gram(fam, xi, opt.stencil);
  res.theta = bundles::nakano_form(res.tensor);
  res.eigen = linalg::eigvalsh(res.theta);
  return res;
}

HermitianMatrix first_term(const BundleSpec& e, int k, const ChartPoint& xi,
                           const PipelineOptions& opt) {
  e.validate();
  const auto pw = bundles::proj_weight(e, k);
  const std::size_t m = e.dim();
  const auto rule =
      geom::build_fiber_quadrature(e.rank() - 1, opt.radial_order, opt.resolved_angular(k));
  const auto basis = section_basis(k, static_cast<int>(e.rank()));
  const std::size_t n = basis.dimension();

  CMatrix t1(m * n, m * n);
  std::vector<Complex> mono(n);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const FiberPoint& zeta = rule.nodes[q];
    // Base Hessian of Phi at (xi, zeta): the horizontal curvature density.
    geom::ScalarField phi_z = [&](const ChartPoint& z) { return Complex(pw.eval(z, zeta), 0.0); };
    CMatrix hess(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        hess(i, j) = geom::mixed_ddbar(phi_z, xi, i, j, opt.stencil);
        if (j != i) hess(j, i) = std::conj(hess(i, j));
      }
    const double w = rule.weights[q] * std::exp(-pw.eval(xi, zeta));
    for (std::size_t a = 0; a < n; ++a) mono[a] = monomial(basis.exponents[a], zeta);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            t1(i * n + a, j * n + b) += w * hess(i, j) * mono[a] * std::conj(mono[b]);
  }

  // Into the normal frame at xi: conjugate the section indices by H(xi)^{-1/2}.
  const auto h_xi = gram_matrix(e, k, xi, rule);
  const CMatrix s = linalg::inv_sqrt(h_xi);
  CMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      CMatrix blk(n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) blk(a, b) = t1(i * n + a, j * n + b);
      blk = s * blk * s;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(i * n + a, j * n + b) = blk(a, b);
    }
  return linalg::hermitize(out).first;
}

std::vector<FiberPoint> default_fiber_samples() {
  return {
      {Complex(0.05, 0.0)},  {Complex(0.3, 0.1)},   {Complex(-0.4, 0.55)},
      {Complex(0.9, -0.6)},  {Complex(-1.3, 0.2)},  {Complex(0.1, 1.8)},
  };
}

double harmonicity_residual(const BundleSpec& e, int k, const ChartPoint& xi, std::size_t i,
                            const std::vector<FiberPoint>& samples, const Stencil& st) {
  e.validate();
  if (e.rank() != 2) throw std::invalid_argument("harmonicity_residual: rank must be 2");
  if (i >= e.dim()) throw std::invalid_argument("harmonicity_residual: base index out of range");
  const auto pw = bundles::proj_weight(e, k);
  const std::size_t m = e.dim();
  geom::ScalarField field = [&](const ChartPoint& p) { return Complex(pw.eval_combined(p), 0.0); };

  double sup = 0.0;
  for (const auto& zeta : samples) {
    ChartPoint p = xi;
    p.push_back(zeta[0]);
    // omega coefficient: fiber Hessian of Phi.
    const double omega = geom::mixed_ddbar(field, p, m, m, st).real();
    if (omega <= 0.0)
      throw std::domain_error("harmonicity_residual: degenerate fiber metric at sample");
    // eta_i coefficient as a function of zeta, then its d/dzeta.
    geom::ScalarField eta_coeff = [&](const ChartPoint& q) {
      return geom::mixed_ddbar(field, q, i, m, st);
    };
    const Complex deta = geom::wirtinger_d1(eta_coeff, p, m, st);
    sup = std::max(sup, std::abs(deta) / omega);
  }
  return sup;
}

DecompositionReport second_term_residual(const BundleSpec& e, int k, const ChartPoint& xi,
                                         const PipelineOptions& opt) {
  DecompositionReport rep;
  const auto curv = l2_curvature(e, k, xi, opt);
  rep.theta = curv.theta;
  rep.first = first_term(e, k, xi, opt);
  rep.residual = linalg::hermitize(rep.theta.m - rep.first.m).first;
  const double denom = rep.first.m.frobenius_norm();
  const double num = rep.residual.m.frobenius_norm();
  rep.residual_norm_ratio = denom > 1e-12 ? num / denom : num;
  if (e.rank() == 2) {
    const auto samples = default_fiber_samples();
    for (std::size_t i = 0; i < e.dim(); ++i)
      rep.harmonicity_sup = std::max(rep.harmonicity_sup,
                                     harmonicity_residual(e, k, xi, i, samples));
  }
  return rep;
}

}  // namespace nakano::dimg
