#include "nakano/oracles.hpp"

#include <cmath>

#include "doctest.h"

using namespace nakano::oracles;

TEST_CASE("fs_oracle") {
  CHECK(fs_oracle(1, 1) == 1.0);
  CHECK(fs_oracle(0, 1) == 0.0);
  CHECK(fs_oracle(5, 2) == 5.0);
}

TEST_CASE("equivariant_oracle") {
  auto p0 = equivariant_oracle(0);
  CHECK(p0.gram_diagonal.size() == 1);
  CHECK(p0.gram_diagonal[0] == doctest::Approx(M_PI));
  CHECK(p0.eigenvalue == 2.0);

  auto p1 = equivariant_oracle(1);
  CHECK(p1.gram_diagonal[0] == doctest::Approx(M_PI / 2.0));
  CHECK(p1.gram_diagonal[1] == doctest::Approx(M_PI / 2.0));
  CHECK(p1.eigenvalue == 3.0);

  auto p2 = equivariant_oracle(2);
  CHECK(p2.gram_diagonal[0] == doctest::Approx(M_PI / 3.0));
  CHECK(p2.gram_diagonal[1] == doctest::Approx(M_PI / 6.0));
  CHECK(p2.gram_diagonal[2] == doctest::Approx(M_PI / 3.0));
  CHECK(p2.eigenvalue == 4.0);
}

TEST_CASE("gamma_decomposition_r2") {
  // lambda = (k, 0): S^k E (x) det E.
  const auto deg = gamma_decomposition_r2(WeightVector{{3, 0}}, 1, 2);
  REQUIRE(deg.size() == 4);
  for (int q = 0; q <= 3; ++q) CHECK(deg[q] == q * 1 + (3 - q) * 2 + 3);

  // lambda = (1, 1): det E tensored into (det E)^2.
  const auto deg2 = gamma_decomposition_r2(WeightVector{{1, 1}}, 2, 5);
  REQUIRE(deg2.size() == 1);
  CHECK(deg2[0] == 3 * (2 + 5));

  // lambda = (2, 1), degrees (1, 1): p = 1, t = 3, both degrees 7.
  const auto deg3 = gamma_decomposition_r2(WeightVector{{2, 1}}, 1, 1);
  REQUIRE(deg3.size() == 2);
  CHECK(deg3[0] == 7);
  CHECK(deg3[1] == 7);

  CHECK_THROWS_AS(gamma_decomposition_r2(WeightVector{{1, 2}}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gamma_decomposition_r2(WeightVector{{1, 0, 0}}, 1, 1), std::invalid_argument);
}

TEST_CASE("gamma_decomposition_r2 degree-sum bookkeeping") {
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= l1; ++l2)
      for (int a = -2; a <= 3; ++a)
        for (int b = -2; b <= 3; ++b) {
          const WeightVector w{{l1, l2}};
          const auto deg = gamma_decomposition_r2(w, a, b);
          const int p = l1 - l2;
          const int t = l2 + w.height();
          long sum = 0;
          for (int d : deg) sum += d;
          CHECK(sum == static_cast<long>(p + 1) * t * (a + b) +
                           static_cast<long>(a + b) * p * (p + 1) / 2);
        }
}

TEST_CASE("bott_p1 against the Cech enumeration") {
  for (int e = -10; e <= 10; ++e) {
    const auto tab = bott_p1({e + 2});  // so the (1,1) twist lands on O(e)
    CHECK(tab.h11 == cech_h1(e));
    CHECK(tab.line_entries.at(e + 2).first == std::max(e + 3, 0));
    CHECK(tab.line_entries.at(e + 2).second == std::max(-e - 3, 0));
    // Euler characteristic h0 - h1 = d + 1.
    CHECK(tab.line_entries.at(e + 2).first - tab.line_entries.at(e + 2).second == e + 3);
  }
}

TEST_CASE("bott_p1 spot values") {
  CHECK(bott_p1({1}).h11 == 0);
  CHECK(bott_p1({0}).h11 == 1);  // structure-sheaf control
  CHECK(bott_p1({3, 5}).h11 == 0);
  CHECK(bott_p1({-3}).h11 == 4);
}

TEST_CASE("ample weights give vanishing H^{1,1} exhaustively") {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int l1 = 0; l1 <= 4; ++l1)
        for (int l2 = 0; l2 <= l1; ++l2) {
          const WeightVector w{{l1, l2}};
          if (w.height() < 1) continue;
          const auto deg = gamma_decomposition_r2(w, a, b);
          for (int d : deg) CHECK(d >= 2);
          CHECK(bott_p1(deg).h11 == 0);
        }
}

TEST_CASE("classify_split") {
  CHECK(classify_split({{1}, {2}}) == SplitClass::AMPLE);
  CHECK(classify_split({{0}, {1}}) == SplitClass::NEF_NOT_AMPLE);
  CHECK(classify_split({{-1}, {3}}) == SplitClass::NOT_NEF);
  CHECK(classify_split({{1, 2}, {2, 1}}) == SplitClass::AMPLE);
  CHECK(classify_split({{1, 0}, {2, 1}}) == SplitClass::NEF_NOT_AMPLE);
  CHECK_THROWS_AS(classify_split({}), std::invalid_argument);
}
