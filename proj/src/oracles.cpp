#include "nakano/oracles.hpp"

#include <cmath>

namespace nakano::oracles {

int WeightVector::height() const {
  int l = 0;
  for (int v : lambda)
    if (v > 0) ++l;
  return l;
}

void WeightVector::validate() const {
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
    if (lambda[i] < lambda[i + 1]) throw std::invalid_argument("WeightVector: not decreasing");
  for (int v : lambda)
    if (v < 0) throw std::invalid_argument("WeightVector: entries must be naturals");
}

double fs_oracle(int d, std::size_t) { return static_cast<double>(d); }

EquivariantPrediction equivariant_oracle(int k) {
  if (k < 0) throw std::invalid_argument("equivariant_oracle: k must be >= 0");
  EquivariantPrediction p;
  // H(z) = diag(pi a!(k-a)!/(k+1)!) (1+|z|^2)^{-(k+2)}; curvature (k+2) Id.
  double kp1_fact = 1.0;
  for (int i = 2; i <= k + 1; ++i) kp1_fact *= i;
  for (int a = 0; a <= k; ++a) {
    double fa = 1.0, fb = 1.0;
    for (int i = 2; i <= a; ++i) fa *= i;
    for (int i = 2; i <= k - a; ++i) fb *= i;
    p.gram_diagonal.push_back(M_PI * fa * fb / kp1_fact);
  }
  p.eigenvalue = static_cast<double>(k + 2);
  return p;
}

std::vector<int> gamma_decomposition_r2(const WeightVector& lambda, int a, int b) {
  lambda.validate();
  if (lambda.rank() != 2) throw std::invalid_argument("gamma_decomposition_r2: rank must be 2");
  const int p = lambda.lambda[0] - lambda.lambda[1];
  const int t = lambda.lambda[1] + lambda.height();
  std::vector<int> degrees;
  for (int q = 0; q <= p; ++q) degrees.push_back(q * a + (p - q) * b + t * (a + b));
  return degrees;
}

CohomologyTable bott_p1(const std::vector<int>& degrees) {
  CohomologyTable tab;
  for (int d : degrees) {
    const int h0 = std::max(d + 1, 0);
    const int h1 = std::max(-d - 1, 0);
    tab.line_entries[d] = {h0, h1};
    // Twist by K_{P1} = O(-2) for the (1,1) group.
    const int e = d - 2;
    tab.h11 += std::max(-e - 1, 0);
  }
  return tab;
}

int cech_h1(int e) {
  // Two charts U0 (coordinate z) and U1 (coordinate 1/z); transition z^e.
  // Cochains on the overlap are Laurent monomials z^n. A monomial is a
  // coboundary iff it extends to U0 (n >= 0) or to U1 (n <= e). Count the
  // survivors in a window comfortably containing them all.
  const int window = std::abs(e) + 4;
  int count = 0;
  for (int n = -window; n <= window; ++n) {
    const bool regular_u0 = n >= 0;
    const bool regular_u1 = n <= e;
    if (!regular_u0 && !regular_u1) ++count;
  }
  return count;
}

SplitClass classify_split(const std::vector<std::vector<int>>& summand_degrees) {
  bool all_pos = true, all_nonneg = true;
  for (const auto& s : summand_degrees)
    for (int d : s) {
      if (d <= 0) all_pos = false;
      if (d < 0) all_nonneg = false;
    }
  if (summand_degrees.empty()) throw std::invalid_argument("classify_split: empty bundle");
  if (all_pos) return SplitClass::AMPLE;
  if (all_nonneg) return SplitClass::NEF_NOT_AMPLE;
  return SplitClass::NOT_NEF;
}

const char* to_string(SplitClass c) {
  switch (c) {
    case SplitClass::AMPLE: return "AMPLE";
    case SplitClass::NEF_NOT_AMPLE: return "NEF_NOT_AMPLE";
    default: return "NOT_NEF";
  }
}

}  // namespace nakano::oracles
