// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sgfem/constitutive.hpp"

using namespace sgfem;

namespace {

// Independent energy oracle: contract the raw displacement gradients with the
// tensors directly, symmetrizing inline. No shared code with energy_density.
double energy_brute_force(const Rank4Tensor& C, const Rank6Tensor& D, const StrainState& s) {
  const int dim = s.dim;
  double w = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          w += 0.5 * 0.25 * (s.grad_u[i][j] + s.grad_u[j][i]) * C(i, j, k, l) *
               (s.grad_u[k][l] + s.grad_u[l][k]);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n)
              w += 0.5 * 0.25 * (s.grad2_u[i][j][k] + s.grad2_u[j][i][k]) * D(i, j, k, l, m, n) *
                   (s.grad2_u[l][m][n] + s.grad2_u[m][l][n]);
  return w;
}

StrainState random_state(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StrainState s;
  s.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      s.grad_u[i][j] = u(rng);
      for (int k = j; k < dim; ++k) {
        double v = u(rng);
        s.grad2_u[i][j][k] = v;
        s.grad2_u[i][k][j] = v;
      }
    }
  return s;
}

ConstitutiveParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ConstitutiveParams p;
  p.c1 = u(rng);
  p.c2 = u(rng);
  p.c3 = u(rng);
  p.c4 = u(rng);
  p.c5 = u(rng);
  p.c6 = u(rng);
  p.c7 = u(rng);
  return p;
}

}  // namespace

TEST_CASE("engineering map reproduces the shear-problem moduli") {
  auto p = params_from_engineering({400.0, 0.49, 0.1});
  CHECK(std::abs(p.c1 - 6577.18) < 0.005);
  CHECK(std::abs(p.c2 - 134.23) < 0.005);
  CHECK(std::abs(p.c3 - 0.59) < 0.005);
  CHECK(p.c4 == p.c3);
  CHECK(std::abs(p.c5 - 0.18) < 0.005);
  CHECK(std::abs(p.c6 - (-0.23)) < 0.005);
  CHECK(p.c7 == p.c5);
  // 1-D shear reduction stays well posed with these moduli
  CHECK(p.c2 > 0.0);
  CHECK(p.c5 + p.c6 + p.c7 > 0.0);
}

TEST_CASE("engineering map limit cases") {
  auto p = params_from_engineering({400.0, 0.0, 0.0});
  CHECK(p.c1 == 0.0);
  CHECK(p.c2 == Catch::Approx(200.0));
  CHECK(p.c3 == 0.0);
  CHECK(p.c4 == 0.0);
  CHECK(p.c5 == 0.0);
  CHECK(p.c6 == 0.0);
  CHECK(p.c7 == 0.0);

  auto q = params_from_engineering({20000.0, 0.2, 1.0});
  CHECK(std::abs(q.c1 - 5555.55) < 0.01);
  CHECK(std::abs(q.c2 - 8333.33) < 0.01);
}

TEST_CASE("engineering map rejects invalid inputs") {
  CHECK_THROWS_AS(params_from_engineering({400.0, 0.5, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(params_from_engineering({400.0, -1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(params_from_engineering({-1.0, 0.3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(params_from_engineering({400.0, 0.3, -0.1}), std::invalid_argument);
}

TEST_CASE("isotropic C entries") {
  ConstitutiveParams p;
  p.c1 = 3.0;
  p.c2 = 1.5;
  for (int dim : {2, 3}) {
    auto C = build_isotropic_C(p, dim);
    CHECK(C(0, 0, 0, 0) == Catch::Approx(p.c1 + 2.0 * p.c2));
    CHECK(C(0, 0, 1, 1) == Catch::Approx(p.c1));
    CHECK(C(0, 1, 0, 1) == Catch::Approx(p.c2));
  }
  auto Z = build_isotropic_C(ConstitutiveParams{}, 3);
  for (double v : Z.a) CHECK(v == 0.0);
}

TEST_CASE("isotropic D entries") {
  std::mt19937 rng(42);
  auto p = random_params(rng);
  auto D = build_isotropic_D(p, 3);
  CHECK(D(0, 0, 0, 0, 0, 0) ==
        Catch::Approx(4.0 * p.c3 + p.c4 + 4.0 * p.c5 + 2.0 * p.c6 + 4.0 * p.c7));
  // Only the d_ij d_kl d_mn term of the c3 group survives at (1,1,2,2,3,3)
  CHECK(D(0, 0, 1, 1, 2, 2) == Catch::Approx(p.c3));
  auto Z = build_isotropic_D(ConstitutiveParams{}, 2);
  for (double v : Z.a) CHECK(v == 0.0);
}

TEST_CASE("tensor symmetries hold exactly for random parameters") {
  std::mt19937 rng(7);
  for (int draw = 0; draw < 100; ++draw) {
    auto p = random_params(rng);
    const int dim = (draw % 2 == 0) ? 3 : 2;
    auto C = build_isotropic_C(p, dim);
    auto D = build_isotropic_D(p, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            REQUIRE(C(i, j, k, l) == C(j, i, k, l));
            REQUIRE(C(i, j, k, l) == C(k, l, i, j));
            REQUIRE(C(i, j, k, l) == C(k, l, j, i));
            REQUIRE(C(i, j, k, l) == C(i, j, l, k));
          }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l)
            for (int m = 0; m < dim; ++m)
              for (int n = 0; n < dim; ++n) {
                REQUIRE(D(i, j, k, l, m, n) == D(j, i, k, l, m, n));
                REQUIRE(D(i, j, k, l, m, n) == D(l, m, n, i, j, k));
              }
  }
}

TEST_CASE("energy density: hand-checkable states") {
  auto p = params_from_engineering({400.0, 0.49, 0.1});
  auto C2 = build_isotropic_C(p, 2);
  auto D2 = build_isotropic_D(p, 2);

  StrainState zero;
  zero.dim = 2;
  CHECK(energy_density(C2, D2, zero) == 0.0);

  // Pure shear: grad_u = [[0, gamma], [0, 0]] -> w = c2/2 gamma^2
  const double gamma = 0.37;
  StrainState shear;
  shear.dim = 2;
  shear.grad_u[0][1] = gamma;
  CHECK(energy_density(C2, D2, shear) == Catch::Approx(0.5 * p.c2 * gamma * gamma).epsilon(1e-13));

  // Single curvature u_{1,22} = kappa -> w = 1/2 D_1221 22 kappa^2,
  // D_122122 enumerated independently from the delta expansion: c5 + c6 + c7.
  const double kappa = 0.21;
  StrainState curv;
  curv.dim = 2;
  curv.grad2_u[0][1][1] = kappa;
  const double d122122 = p.c5 + p.c6 + p.c7;
  CHECK(D2(0, 1, 1, 0, 1, 1) == Catch::Approx(d122122).epsilon(1e-14));
  CHECK(energy_density(C2, D2, curv) ==
        Catch::Approx(0.5 * d122122 * kappa * kappa).epsilon(1e-13));
}

TEST_CASE("energy density matches brute-force contraction oracle") {
  std::mt19937 rng(1234);
  for (int draw = 0; draw < 100; ++draw) {
    auto p = random_params(rng);
    const int dim = (draw % 2 == 0) ? 3 : 2;
    auto C = build_isotropic_C(p, dim);
    auto D = build_isotropic_D(p, dim);
    auto s = random_state(rng, dim);
    const double w = energy_density(C, D, s);
    const double w_ref = energy_brute_force(C, D, s);
    REQUIRE(std::abs(w - w_ref) <= 1e-12 * (1.0 + std::abs(w_ref)));
  }
}

TEST_CASE("first-gradient energy sees only the symmetric strain") {
  std::mt19937 rng(99);
  auto p = random_params(rng);
  auto C = build_isotropic_C(p, 3);
  auto D = build_isotropic_D(p, 3);
  for (int draw = 0; draw < 20; ++draw) {
    auto s = random_state(rng, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s.grad2_u[i][j][k] = 0.0;
    StrainState t = s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.grad_u[i][j] = s.grad_u[j][i];
    REQUIRE(energy_density(C, D, s) ==
            Catch::Approx(energy_density(C, D, t)).epsilon(1e-12).margin(1e-14));
  }
}

TEST_CASE("energy density rejects mismatched dimensions") {
  ConstitutiveParams p;
  p.c2 = 1.0;
  auto C2 = build_isotropic_C(p, 2);
  auto D3 = build_isotropic_D(p, 3);
  StrainState s;
  s.dim = 2;
  CHECK_THROWS_AS(energy_density(C2, D3, s), std::invalid_argument);
}
