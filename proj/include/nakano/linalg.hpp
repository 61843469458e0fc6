#ifndef NAKANO_LINALG_HPP
#define NAKANO_LINALG_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nakano::linalg {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Sizes here are tiny (<= ~30).
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator*(Complex s) const;
  CMatrix operator*(double s) const { return (*this) * Complex(s, 0.0); }

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

// A square matrix known Hermitian. Construct via hermitize() or trusted().
struct HermitianMatrix {
  CMatrix m;

  std::size_t dim() const { return m.rows(); }
  double trace_real() const { return m.trace().real(); }

  // Wraps without averaging; throws if the asymmetry exceeds rel_tol * max|entry|.
  static HermitianMatrix trusted(const CMatrix& a, double rel_tol = 1e-12);
};

struct EigenReport {
  std::vector<double> eigenvalues;  // ascending
  double min = 0.0;
  double max = 0.0;
  double residual = 0.0;  // max_k ||H v_k - lambda_k v_k|| / ||H||_F
};

enum class PdVerdict { POSITIVE_DEFINITE, SEMIDEFINITE_WITHIN_MARGIN, INDEFINITE };

std::string to_string(PdVerdict v);

// (A + A*)/2 together with the largest deviation max |A[i][j] - conj(A[j][i])| / 2.
std::pair<HermitianMatrix, double> hermitize(const CMatrix& a);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
EigenReport eigvalsh(const HermitianMatrix& h);

// Full eigendecomposition; columns of the returned matrix are the eigenvectors,
// ordered to match the ascending eigenvalues.
std::pair<EigenReport, CMatrix> eigh(const HermitianMatrix& h);

PdVerdict pd_verdict(const HermitianMatrix& h, double margin);

// S Hermitian positive definite with S * H * S = I. Throws std::domain_error
// if H is not positive definite.
CMatrix inv_sqrt(const HermitianMatrix& h);

// H^{-1}, via the eigendecomposition. Throws std::domain_error if singular
// relative to the largest |eigenvalue|.
CMatrix inverse(const HermitianMatrix& h);

}  // namespace nakano::linalg

#endif
