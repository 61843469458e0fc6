#ifndef NAKANO_DIRECT_IMAGE_HPP
#define NAKANO_DIRECT_IMAGE_HPP

#include <vector>

#include "nakano/bundles.hpp"
#include "nakano/geometry.hpp"
#include "nakano/linalg.hpp"

namespace nakano::dimg {

using bundles::BundleSpec;
using bundles::CurvatureTensor;
using bundles::MatrixFamily;
using geom::ChartPoint;
using geom::FiberPoint;
using geom::FiberQuadrature;
using geom::Stencil;
using linalg::CMatrix;
using linalg::Complex;
using linalg::EigenReport;
using linalg::HermitianMatrix;

// Monomial basis of H^0(P^{r-1}, O(k)) in the affine chart; the sections of
// the direct image are zeta^alpha dzeta (x) frame.
struct SectionBasis {
  int k = 0;
  int r = 2;
  std::vector<std::vector<int>> exponents;  // graded-lex order

  std::size_t dimension() const { return exponents.size(); }
};

SectionBasis section_basis(int k, int r);

struct PipelineOptions {
  Stencil stencil{1e-3, 2};
  std::size_t radial_order = 64;
  std::size_t angular_order = 0;  // 0 -> max(16, 4k+8)

  std::size_t resolved_angular(int k) const {
    return angular_order ? angular_order : std::max<std::size_t>(16, 4 * static_cast<std::size_t>(k) + 8);
  }
  PipelineOptions coarser() const {
    PipelineOptions c = *this;
    c.stencil.step *= 2.0;
    c.radial_order = std::max<std::size_t>(4, radial_order / 2);
    return c;
  }
  PipelineOptions finer() const {
    PipelineOptions f = *this;
    f.stencil.step *= 0.5;
    f.radial_order *= 2;
    return f;
  }
};

// L2 Gram matrix H_{ab}(z) = integral of zeta^a conj(zeta)^b e^{-Phi(z,zeta)} dA.
HermitianMatrix gram_matrix(const BundleSpec& e, int k, const ChartPoint& z,
                            const FiberQuadrature& rule);

// The map z -> H(z) packaged for differentiation.
MatrixFamily gram_family(const BundleSpec& e, int k, const FiberQuadrature& rule);

// Frame change to H'(xi) = I, dH'(xi) = 0 (delegates to bundles::normal_frame).
MatrixFamily normal_frame_transform(const MatrixFamily& fam, const ChartPoint& xi,
                                    const Stencil& st);

struct L2CurvatureResult {
  CurvatureTensor tensor;
  HermitianMatrix theta;  // Nakano form, dim m * r'
  EigenReport eigen;
};

L2CurvatureResult l2_curvature(const BundleSpec& e, int k, const ChartPoint& xi,
                               const PipelineOptions& opt = {});

// Fiber integral of the horizontal curvature of Phi against the section
// pairing, conjugated into the normal frame at xi.
HermitianMatrix first_term(const BundleSpec& e, int k, const ChartPoint& xi,
                           const PipelineOptions& opt = {});

struct DecompositionReport {
  HermitianMatrix theta;
  HermitianMatrix first;
  HermitianMatrix residual;  // theta - first, exact by construction
  double residual_norm_ratio = 0.0;
  double harmonicity_sup = 0.0;
};

DecompositionReport second_term_residual(const BundleSpec& e, int k, const ChartPoint& xi,
                                         const PipelineOptions& opt = {});

// sup over the given fiber samples of |Lambda_omega d(eta_i)| for the
// (0,1)-form eta_i contracted from the curvature of Phi with the horizontal
// lift of d/dz_i. Requires rank 2 (fiber dimension 1). Third derivatives are
// involved, so the default stencil is wider than the pipeline default.
double harmonicity_residual(const BundleSpec& e, int k, const ChartPoint& xi, std::size_t i,
                            const std::vector<FiberPoint>& samples,
                            const Stencil& st = Stencil{1e-2, 2});

// Default fiber samples used by decomposition reports.
std::vector<FiberPoint> default_fiber_samples();

}  // namespace nakano::dimg

#endif
