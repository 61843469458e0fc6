#include "nakano/bundles.hpp"

#include <cmath>

namespace nakano::bundles {

double LineWeight::eval(const ChartPoint& z) const {
  double phi = 0.0;
  for (std::size_t t = 0; t < degrees.size(); ++t)
    phi += static_cast<double>(degrees[t]) * std::log(1.0 + std::norm(z[t]));
  if (perturbation) phi += perturbation(z);
  return phi;
}

bool BundleSpec::is_ample() const {
  for (const auto& s : summands)
    for (int d : s.degrees)
      if (d <= 0) return false;
  return !summands.empty();
}

bool BundleSpec::is_nef() const {
  for (const auto& s : summands)
    for (int d : s.degrees)
      if (d < 0) return false;
  return !summands.empty();
}

void BundleSpec::validate() const {
  if (summands.empty()) throw std::invalid_argument("BundleSpec: no summands");
  for (const auto& s : summands)
    if (s.degrees.size() != dim())
      throw std::invalid_argument("BundleSpec: degree arity does not match base");
}

double ProjWeight::eval(const ChartPoint& z, const FiberPoint& zeta) const {
  // w = (1, zeta_1, ..., zeta_{r-1}).
  double acc = std::exp(bundle.summands[0].eval(z));
  for (std::size_t i = 0; i < zeta.size(); ++i)
    acc += std::norm(zeta[i]) * std::exp(bundle.summands[i + 1].eval(z));
  return static_cast<double>(twist) * std::log(acc);
}

double ProjWeight::eval_combined(const ChartPoint& p) const {
  const std::size_t m = bundle.dim();
  ChartPoint z(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m));
  FiberPoint zeta(p.begin() + static_cast<std::ptrdiff_t>(m), p.end());
  return eval(z, zeta);
}

ProjWeight proj_weight(const BundleSpec& e, int k) {
  e.validate();
  if (e.rank() != 2 && e.rank() != 3)
    throw std::invalid_argument("proj_weight: only ranks 2 and 3 are supported");
  if (k < 0) throw std::invalid_argument("proj_weight: k must be >= 0");
  return ProjWeight{e, k, k + static_cast<int>(e.rank())};
}

HermitianMatrix line_curvature(const LineWeight& w, const ChartPoint& at, const Stencil& st) {
  const std::size_t m = at.size();
  geom::ScalarField phi = [&](const ChartPoint& z) { return Complex(w.eval(z), 0.0); };
  CMatrix hess(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) hess(i, j) = geom::mixed_ddbar(phi, at, i, j, st);
  return linalg::hermitize(hess).first;
}

TotalPositivityReport verify_total_positivity(
    const ProjWeight& pw, const std::vector<std::pair<ChartPoint, FiberPoint>>& samples,
    const Stencil& st, double margin) {
  const std::size_t n = pw.bundle.dim() + pw.fiber_dim();
  geom::ScalarField field = [&](const ChartPoint& p) { return Complex(pw.eval_combined(p), 0.0); };

  TotalPositivityReport rep;
  bool first = true;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    ChartPoint p = samples[s].first;
    p.insert(p.end(), samples[s].second.begin(), samples[s].second.end());
    CMatrix hess(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) hess(i, j) = geom::mixed_ddbar(field, p, i, j, st);
    const auto h = linalg::hermitize(hess).first;
    const auto eig = linalg::eigvalsh(h);
    if (first || eig.min < rep.min_eigenvalue) rep.min_eigenvalue = eig.min;
    first = false;
    const auto v = linalg::pd_verdict(h, margin);
    if (static_cast<int>(v) > static_cast<int>(rep.verdict)) rep.verdict = v;
    if (v == PdVerdict::INDEFINITE && !rep.failure)
      rep.failure = "indefinite total Hessian at sample index " + std::to_string(s);
  }
  return rep;
}

MatrixFamily normal_frame(const MatrixFamily& fam, const ChartPoint& xi, const Stencil& st) {
  const std::size_t n = fam.dim;
  const std::size_t m = xi.size();

  const CMatrix h_xi_raw = fam.eval(xi);
  const auto h_xi = linalg::hermitize(h_xi_raw).first;
  const auto eig = linalg::eigvalsh(h_xi);
  if (eig.min <= 0.0) throw std::domain_error("normal_frame: H(xi) is not positive definite");
  const CMatrix s = linalg::inv_sqrt(h_xi);          // H(xi)^{-1/2}
  const CMatrix h_inv = linalg::inverse(h_xi);       // H(xi)^{-1}

  // First derivatives of H at xi, entrywise.
  std::vector<CMatrix> dh(m);
  geom::MatrixField hfield = fam.eval;
  for (std::size_t i = 0; i < m; ++i) {
    dh[i] = h_inv * geom::wirtinger_d1<CMatrix>(hfield, xi, i, st);
  }

  auto eval = [n, m, xi, s, dh, base = fam.eval](const ChartPoint& z) {
    // G(z) = [I - sum_i H^{-1} (d_i H)(xi) (z_i - xi_i)] H(xi)^{-1/2}
    CMatrix g = CMatrix::identity(n);
    for (std::size_t i = 0; i < m; ++i) g = g - dh[i] * (z[i] - xi[i]);
    g = g * s;
    return g.adjoint() * base(z) * g;
  };
  return MatrixFamily{n, eval};
}

CurvatureTensor curvature_from_gram(const MatrixFamily& fam, const ChartPoint& xi,
                                    const Stencil& st) {
  const std::size_t m = xi.size();
  const std::size_t n = fam.dim;
  const MatrixFamily nf = normal_frame(fam, xi, st);
  geom::MatrixField field = nf.eval;

  CurvatureTensor raw(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const CMatrix blk = geom::mixed_ddbar<CMatrix>(field, xi, i, j, st);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) raw.at(i, j, a, b) = -blk(a, b);
    }

  // Hermitize: average c[i][j][a][b] with conj(c[j][i][b][a]), report asymmetry.
  CurvatureTensor out(m, n);
  double asym = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Complex u = raw.at(i, j, a, b);
          const Complex v = std::conj(raw.at(j, i, b, a));
          out.at(i, j, a, b) = 0.5 * (u + v);
          asym = std::max(asym, 0.5 * std::abs(u - v));
        }
  out.asymmetry = asym;
  return out;
}

HermitianMatrix nakano_form(const CurvatureTensor& c) {
  const std::size_t n = c.m * c.rprime;
  CMatrix theta(n, n);
  for (std::size_t i = 0; i < c.m; ++i)
    for (std::size_t a = 0; a < c.rprime; ++a)
      for (std::size_t j = 0; j < c.m; ++j)
        for (std::size_t b = 0; b < c.rprime; ++b)
          theta(i * c.rprime + a, j * c.rprime + b) = c.at(i, j, a, b);
  return linalg::hermitize(theta).first;
}

namespace {

// Min eigenvalue of the r' x r' matrix sum_ij v_i conj(v_j) c[i][j][.][.].
double directional_min(const CurvatureTensor& c, const std::vector<Complex>& v) {
  CMatrix a(c.rprime, c.rprime);
  for (std::size_t i = 0; i < c.m; ++i)
    for (std::size_t j = 0; j < c.m; ++j) {
      const Complex w = v[i] * std::conj(v[j]);
      for (std::size_t al = 0; al < c.rprime; ++al)
        for (std::size_t be = 0; be < c.rprime; ++be) a(al, be) += w * c.at(i, j, al, be);
    }
  return linalg::eigvalsh(linalg::hermitize(a).first).min;
}

}  // namespace

double griffiths_min(const CurvatureTensor& c, const GriffithsOptions& opt) {
  if (c.m == 1) return directional_min(c, {Complex(1.0, 0.0)});
  if (c.m != 2) throw std::invalid_argument("griffiths_min: base dimension must be 1 or 2");

  // Unit v in C^2 up to phase: v = (cos a, sin a e^{ib}).
  const std::size_t na = std::max<std::size_t>(10, opt.grid / 20);
  const std::size_t nb = std::max<std::size_t>(20, opt.grid / na);
  auto probe = [&](double aa, double bb) {
    return directional_min(c, {Complex(std::cos(aa), 0.0),
                               Complex(std::sin(aa) * std::cos(bb), std::sin(aa) * std::sin(bb))});
  };
  double best = 0.0, best_a = 0.0, best_b = 0.0;
  bool first = true;
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const double aa = 0.5 * M_PI * static_cast<double>(ia) / static_cast<double>(na - 1);
      const double bb = 2.0 * M_PI * static_cast<double>(ib) / static_cast<double>(nb);
      const double val = probe(aa, bb);
      if (first || val < best) {
        best = val;
        best_a = aa;
        best_b = bb;
        first = false;
      }
    }
  // Local refinement around the best grid point.
  double da = 0.5 * M_PI / static_cast<double>(na - 1);
  double db = 2.0 * M_PI / static_cast<double>(nb);
  for (std::size_t it = 0; it < opt.refine_iters; ++it) {
    for (int ia = -2; ia <= 2; ++ia)
      for (int ib = -2; ib <= 2; ++ib) {
        const double aa = best_a + da * 0.5 * ia;
        const double bb = best_b + db * 0.5 * ib;
        const double val = probe(aa, bb);
        if (val < best) {
          best = val;
          best_a = aa;
          best_b = bb;
        }
      }
    da *= 0.5;
    db *= 0.5;
  }
  return best;
}

CurvatureTensor dual_curvature(const CurvatureTensor& c) {
  CurvatureTensor d(c.m, c.rprime);
  d.asymmetry = c.asymmetry;
  for (std::size_t i = 0; i < c.m; ++i)
    for (std::size_t j = 0; j < c.m; ++j)
      for (std::size_t a = 0; a < c.rprime; ++a)
        for (std::size_t b = 0; b < c.rprime; ++b) d.at(i, j, a, b) = -c.at(i, j, b, a);
  return d;
}

}  // namespace nakano::bundles
