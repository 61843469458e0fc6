#ifndef NAKANO_ORACLES_HPP
#define NAKANO_ORACLES_HPP

#include <map>
#include <stdexcept>
#include <vector>

namespace nakano::oracles {

// Decreasing natural weight (lambda_1 >= ... >= lambda_r >= 0).
struct WeightVector {
  std::vector<int> lambda;

  std::size_t rank() const { return lambda.size(); }
  int height() const;  // number of positive entries
  void validate() const;
};

struct CohomologyTable {
  // Per summand degree d: (h0, h1) of O(d) on P1.
  std::map<int, std::pair<int, int>> line_entries;
  int h11 = 0;  // dim H^{1,1}(P1, direct sum O(d_q)) = sum_q h1(O(d_q - 2))
};

enum class SplitClass { AMPLE, NEF_NOT_AMPLE, NOT_NEF };

// Curvature of d * log(1+|z|^2) per base direction at the origin.
double fs_oracle(int d, std::size_t m);

struct EquivariantPrediction {
  std::vector<double> gram_diagonal;  // pi * a!(k-a)!/(k+1)! in graded-lex order
  double eigenvalue;                  // k + 2, with multiplicity k+1
};

// Exact prediction for E = O(1) + O(1) on P1.
EquivariantPrediction equivariant_oracle(int k);

// For r = 2: Gamma^lambda E (x) (det E)^l as a sum of line bundles O(d_q),
// d_q = q a + (p - q) b + t (a + b), p = lambda_1 - lambda_2, t = lambda_2 + l.
std::vector<int> gamma_decomposition_r2(const WeightVector& lambda, int a, int b);

// h0/h1 of O(d) on P1 and H^{1,1} of a split twisted bundle (K_{P1} = O(-2)).
CohomologyTable bott_p1(const std::vector<int>& degrees);

// Independent two-chart Cech enumeration of h1(P1, O(e)); shares no code
// with bott_p1's closed form.
int cech_h1(int e);

SplitClass classify_split(const std::vector<std::vector<int>>& summand_degrees);

const char* to_string(SplitClass c);

}  // namespace nakano::oracles

#endif
