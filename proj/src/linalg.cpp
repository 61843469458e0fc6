#include "nakano/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nakano::linalg {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double s = 0.0;
  for (const auto& v : data_) s = std::max(s, std::abs(v));
  return s;
}

bool CMatrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

CMatrix CMatrix::operator*(Complex s) const {
  CMatrix r = *this;
  for (auto& v : r.data_) v *= s;
  return r;
}

std::string to_string(PdVerdict v) {
  switch (v) {
    case PdVerdict::POSITIVE_DEFINITE: return "POSITIVE_DEFINITE";
    case PdVerdict::SEMIDEFINITE_WITHIN_MARGIN: return "SEMIDEFINITE_WITHIN_MARGIN";
    default: return "INDEFINITE";
  }
}

std::pair<HermitianMatrix, double> hermitize(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitize: matrix not square");
  const std::size_t n = a.rows();
  CMatrix h(n, n);
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = avg;
      asym = std::max(asym, 0.5 * std::abs(a(i, j) - std::conj(a(j, i))));
    }
  for (std::size_t i = 0; i < n; ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return {HermitianMatrix{h}, asym};
}

HermitianMatrix HermitianMatrix::trusted(const CMatrix& a, double rel_tol) {
  auto [h, asym] = hermitize(a);
  const double scale = std::max(a.max_abs(), 1e-300);
  if (asym > rel_tol * scale)
    throw std::invalid_argument("HermitianMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
  return h;
}

namespace {

// One cyclic Jacobi sweep set; diagonalizes in place, accumulating the unitary in v.
void jacobi_diagonalize(CMatrix& a, CMatrix& v) {
  const std::size_t n = a.rows();
  const double tol = 1e-14;
  double norm = a.frobenius_norm();
  if (norm == 0.0) return;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    off = std::sqrt(2.0 * off);
    if (off <= tol * norm) return;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double rho = std::abs(apq);
        if (rho <= 1e-300) continue;
        const Complex e = apq / rho;
        const double x = a(p, p).real();
        const double y = a(q, q).real();
        double t;
        if (std::abs(y - x) < 1e-300 * rho) {
          t = 1.0;
        } else {
          const double tau = (y - x) / (2.0 * rho);
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Columns: col_p' = c*col_p - s*conj(e)*col_q ; col_q' = s*e*col_p + c*col_q
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * std::conj(e) * aiq;
          a(i, q) = s * e * aip + c * aiq;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * std::conj(e) * viq;
          v(i, q) = s * e * vip + c * viq;
        }
        // Rows (J^H from the left).
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * e * aqj;
          a(q, j) = s * std::conj(e) * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
      }
    }
  }
}

}  // namespace

std::pair<EigenReport, CMatrix> eigh(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  CMatrix a = h.m;
  CMatrix v = CMatrix::identity(n);
  jacobi_diagonalize(a, v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenReport rep;
  rep.eigenvalues.resize(n);
  CMatrix vecs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    rep.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) vecs(i, k) = v(i, order[k]);
  }
  rep.min = n ? rep.eigenvalues.front() : 0.0;
  rep.max = n ? rep.eigenvalues.back() : 0.0;

  const double hnorm = h.m.frobenius_norm();
  double worst = 0.0;
  if (hnorm > 0.0) {
    for (std::size_t k = 0; k < n; ++k) {
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex hv = 0.0;
        for (std::size_t j = 0; j < n; ++j) hv += h.m(i, j) * vecs(j, k);
        hv -= rep.eigenvalues[k] * vecs(i, k);
        r2 += std::norm(hv);
      }
      worst = std::max(worst, std::sqrt(r2) / hnorm);
    }
  }
  rep.residual = worst;
  return {rep, vecs};
}

EigenReport eigvalsh(const HermitianMatrix& h) { return eigh(h).first; }

PdVerdict pd_verdict(const HermitianMatrix& h, double margin) {
  if (margin < 0.0) throw std::invalid_argument("pd_verdict: margin must be >= 0");
  const auto rep = eigvalsh(h);
  const double scale = h.dim() ? margin * h.trace_real() / static_cast<double>(h.dim()) : 0.0;
  const double thr = std::abs(scale);
  if (rep.min > thr) return PdVerdict::POSITIVE_DEFINITE;
  if (rep.min >= -thr) return PdVerdict::SEMIDEFINITE_WITHIN_MARGIN;
  return PdVerdict::INDEFINITE;
}

CMatrix inv_sqrt(const HermitianMatrix& h) {
  auto [rep, vecs] = eigh(h);
  if (rep.min <= 0.0) throw std::domain_error("inv_sqrt: matrix not positive definite");
  const std::size_t n = h.dim();
  CMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += vecs(i, k) * std::conj(vecs(j, k)) / std::sqrt(rep.eigenvalues[k]);
      s(i, j) = acc;
    }
  return s;
}

CMatrix inverse(const HermitianMatrix& h) {
  auto [rep, vecs] = eigh(h);
  const double scale = std::max(std::abs(rep.min), std::abs(rep.max));
  const std::size_t n = h.dim();
  for (double lam : rep.eigenvalues)
    if (std::abs(lam) <= 1e-14 * scale || scale == 0.0)
      throw std::domain_error("inverse: matrix numerically singular");
  CMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += vecs(i, k) * std::conj(vecs(j, k)) / rep.eigenvalues[k];
      r(i, j) = acc;
    }
  return r;
}

}  // namespace nakano::linalg
