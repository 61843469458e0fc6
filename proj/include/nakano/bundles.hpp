#ifndef NAKANO_BUNDLES_HPP
#define NAKANO_BUNDLES_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nakano/geometry.hpp"
#include "nakano/linalg.hpp"

namespace nakano::bundles {

using geom::ChartPoint;
using geom::FiberPoint;
using geom::Stencil;
using linalg::CMatrix;
using linalg::Complex;
using linalg::HermitianMatrix;
using linalg::PdVerdict;

enum class BaseManifold { P1, P1xP1 };

inline std::size_t base_dim(BaseManifold b) { return b == BaseManifold::P1 ? 1 : 2; }

// Metric weight of a line bundle: phi(z) = sum_t degrees[t] log(1+|z_t|^2)
// plus an optional perturbation. The metric is h = e^{-phi}.
struct LineWeight {
  std::vector<int> degrees;
  geom::RealField perturbation;  // may be empty

  double eval(const ChartPoint& z) const;
};

// Split vector bundle over P1 or P1 x P1.
struct BundleSpec {
  BaseManifold base = BaseManifold::P1;
  std::vector<LineWeight> summands;

  std::size_t rank() const { return summands.size(); }
  std::size_t dim() const { return base_dim(base); }
  bool is_ample() const;
  bool is_nef() const;
  void validate() const;
};

// Weight of the induced metric on O_{P(E)}(k+r) in the affine fiber chart
// w = (1, zeta_1, ..., zeta_{r-1}):
//   Phi(z, zeta) = (k+r) log sum_i |w_i|^2 e^{phi_i(z)}.
struct ProjWeight {
  BundleSpec bundle;
  int k = 0;
  int twist = 0;  // k + r

  std::size_t fiber_dim() const { return bundle.rank() - 1; }
  double eval(const ChartPoint& z, const FiberPoint& zeta) const;
  // Evaluation on the combined chart (z_1..z_m, zeta_1..zeta_f).
  double eval_combined(const ChartPoint& p) const;
};

ProjWeight proj_weight(const BundleSpec& e, int k);

// Complex Hessian of the weight at a point; for h = e^{-phi} this is the
// Chern curvature coefficient matrix, so positive degree gives a positive
// matrix.
HermitianMatrix line_curvature(const LineWeight& w, const ChartPoint& at, const Stencil& st);

struct TotalPositivityReport {
  PdVerdict verdict = PdVerdict::POSITIVE_DEFINITE;
  double min_eigenvalue = 0.0;
  std::optional<std::string> failure;  // set when some sample is indefinite
};

// Checks the full (m+f)-dimensional complex Hessian of Phi at each sample.
TotalPositivityReport verify_total_positivity(
    const ProjWeight& pw, const std::vector<std::pair<ChartPoint, FiberPoint>>& samples,
    const Stencil& st, double margin = 1e-6);

// Base-point-dependent square matrix, e.g. a Gram family z -> H(z).
struct MatrixFamily {
  std::size_t dim = 0;
  std::function<CMatrix(const ChartPoint&)> eval;
};

// Four-index Chern curvature coefficients c[i][j][a][b] at a base point.
struct CurvatureTensor {
  std::size_t m = 0;       // base dimension
  std::size_t rprime = 0;  // bundle rank
  std::vector<Complex> c;
  double asymmetry = 0.0;  // reported by hermitization, never discarded silently

  CurvatureTensor() = default;
  CurvatureTensor(std::size_t m_, std::size_t rp)
      : m(m_), rprime(rp), c(m_ * m_ * rp * rp, Complex(0.0, 0.0)) {}

  Complex& at(std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
    return c[((i * m + j) * rprime + a) * rprime + b];
  }
  const Complex& at(std::size_t i, std::size_t j, std::size_t a, std::size_t b) const {
    return c[((i * m + j) * rprime + a) * rprime + b];
  }
};

// Holomorphic frame change making the family the identity with vanishing
// first derivatives at xi. Throws std::domain_error if H(xi) is not PD.
MatrixFamily normal_frame(const MatrixFamily& fam, const ChartPoint& xi, const Stencil& st);

// Curvature of the Chern connection of the family at xi:
// c[i][j][a][b] = -(d^2 H'_{ab} / dz_i dzbar_j)(xi) in the normal frame.
CurvatureTensor curvature_from_gram(const MatrixFamily& fam, const ChartPoint& xi,
                                    const Stencil& st);

// The (m r') x (m r') Hermitian matrix Theta[(i,a),(j,b)] = c[i][j][a][b].
HermitianMatrix nakano_form(const CurvatureTensor& c);

struct GriffithsOptions {
  std::size_t grid = 200;
  std::size_t refine_iters = 8;
};

// min over decomposable unit tensors v (x) e of the curvature form,
// approximated from above on a deterministic direction grid.
double griffiths_min(const CurvatureTensor& c, const GriffithsOptions& opt = {});

// c_dual[i][j][a][b] = -c[i][j][b][a].
CurvatureTensor dual_curvature(const CurvatureTensor& c);

}  // namespace nakano::bundles

#endif
