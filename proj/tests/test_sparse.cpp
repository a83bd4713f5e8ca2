// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "sgfem/sparse.hpp"

using namespace sgfem;

TEST_CASE("compress sums duplicates and orders columns within rows") {
  TripletBuffer buf;
  buf.add(1, 2, 3.0);
  buf.add(0, 0, 1.0);
  buf.add(1, 2, -1.0);
  buf.add(1, 0, 4.0);
  buf.add(0, 2, 0.0);   // explicit zero must survive
  buf.add(2, 1, 5.0);
  buf.add(2, 1, -5.0);  // duplicates summing to zero must survive too

  const auto m = compress(buf, 3, 3);
  REQUIRE(m.nnz() == 5);
  CHECK(m.row_ptr == std::vector<int>{0, 2, 4, 5});
  CHECK(m.col_idx == std::vector<int>{0, 2, 0, 2, 1});
  CHECK(m.values == std::vector<double>{1.0, 0.0, 4.0, 2.0, 0.0});

  REQUIRE(m.find(1, 2) != nullptr);
  CHECK(*m.find(1, 2) == 2.0);
  CHECK(m.find(0, 1) == nullptr);
  CHECK(m.find(2, 1) != nullptr);
}

TEST_CASE("compress validates indices") {
  TripletBuffer buf;
  buf.add(0, 3, 1.0);
  CHECK_THROWS_AS(compress(buf, 2, 3), std::invalid_argument);
  TripletBuffer neg;
  neg.add(-1, 0, 1.0);
  CHECK_THROWS_AS(compress(neg, 2, 2), std::invalid_argument);

  const auto empty = compress(TripletBuffer{}, 4, 2);
  CHECK(empty.nnz() == 0);
  CHECK(empty.row_ptr == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("matvec matches a dense reference on random matrices") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    double dense[8][8] = {};
    TripletBuffer buf;
    for (int k = 0; k < 30; ++k) {
      const int i = idx(rng), j = idx(rng);
      const double v = u(rng);
      dense[i][j] += v;
      buf.add(i, j, v);
    }
    std::vector<double> x(8);
    for (auto& xi : x) xi = u(rng);

    const auto y = matvec(compress(buf, 8, 8), x);
    for (int i = 0; i < 8; ++i) {
      double ref = 0.0;
      for (int j = 0; j < 8; ++j) ref += dense[i][j] * x[static_cast<std::size_t>(j)];
      REQUIRE(y[static_cast<std::size_t>(i)] == Catch::Approx(ref).margin(1e-14));
    }
  }
  CHECK_THROWS_AS(matvec(compress(TripletBuffer{}, 2, 3), std::vector<double>(2)),
                  std::invalid_argument);
}

TEST_CASE("apply_dirichlet eliminates symmetrically") {
  // A = [[2,-1,0],[-1,2,-1],[0,-1,2]], fix x0 = 5: the reduced system must
  // stay symmetric and reproduce the solution of the full system.
  TripletBuffer buf;
  const int n = 3;
  for (int i = 0; i < n; ++i) {
    buf.add(i, i, 2.0);
    if (i > 0) buf.add(i, i - 1, -1.0);
    if (i + 1 < n) buf.add(i, i + 1, -1.0);
  }
  auto A = compress(buf, n, n);
  std::vector<double> rhs{0.0, 1.0, 0.0};
  apply_dirichlet(A, rhs, {{0, 5.0}});

  CHECK(*A.find(0, 0) == 1.0);
  CHECK(*A.find(0, 1) == 0.0);
  CHECK(*A.find(1, 0) == 0.0);  // column eliminated, not just the row
  CHECK(rhs[0] == 5.0);
  CHECK(rhs[1] == Catch::Approx(1.0 + 5.0));  // moved to the right-hand side

  const auto x = solve_sparse(A, rhs);
  CHECK(x[0] == Catch::Approx(5.0));
  // remaining equations: 2 x1 - x2 = 6, -x1 + 2 x2 = 0 -> x1 = 4, x2 = 2
  CHECK(x[1] == Catch::Approx(4.0));
  CHECK(x[2] == Catch::Approx(2.0));
}

TEST_CASE("apply_dirichlet tolerates repeats and rejects conflicts") {
  TripletBuffer buf;
  buf.add(0, 0, 1.0);
  buf.add(1, 1, 1.0);
  auto A = compress(buf, 2, 2);
  std::vector<double> rhs{0.0, 0.0};
  apply_dirichlet(A, rhs, {{1, 2.0}, {1, 2.0}});
  CHECK(rhs[1] == 2.0);

  auto B = compress(buf, 2, 2);
  std::vector<double> rhs2{0.0, 0.0};
  CHECK_THROWS_AS(apply_dirichlet(B, rhs2, {{1, 2.0}, {1, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_dirichlet(B, rhs2, {{5, 0.0}}), std::invalid_argument);

  std::vector<double> short_rhs{0.0};
  CHECK_THROWS_AS(apply_dirichlet(B, short_rhs, {{0, 0.0}}), std::invalid_argument);
}

TEST_CASE("apply_dirichlet inserts missing diagonals") {
  // dof 1 has no entries at all; fixing it must still produce a solvable row
  TripletBuffer buf;
  buf.add(0, 0, 3.0);
  buf.add(2, 2, 4.0);
  buf.add(0, 2, 1.0);
  buf.add(2, 0, 1.0);
  auto A = compress(buf, 3, 3);
  std::vector<double> rhs{1.0, 0.0, 2.0};
  apply_dirichlet(A, rhs, {{1, 7.0}});
  REQUIRE(A.find(1, 1) != nullptr);
  CHECK(*A.find(1, 1) == 1.0);
  const auto x = solve_sparse(A, rhs);
  CHECK(x[1] == Catch::Approx(7.0));
}

TEST_CASE("solve_sparse recovers manufactured solutions") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 40;
  // diagonally dominant random band matrix: well conditioned by construction
  TripletBuffer buf;
  std::vector<std::vector<double>> dense(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = std::max(0, i - 3); j <= std::min(n - 1, i + 3); ++j) {
      if (j == i) continue;
      const double v = u(rng);
      dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      buf.add(i, j, v);
      off += std::abs(v);
    }
    dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = off + 1.0;
    buf.add(i, i, off + 1.0);
  }
  const auto A = compress(buf, n, n);

  std::vector<double> x_ref(static_cast<std::size_t>(n));
  for (auto& v : x_ref) v = u(rng);
  const auto b = matvec(A, x_ref);
  const auto x = solve_sparse(A, b);
  for (int i = 0; i < n; ++i)
    REQUIRE(x[static_cast<std::size_t>(i)] ==
            Catch::Approx(x_ref[static_cast<std::size_t>(i)]).epsilon(1e-11).margin(1e-12));
}

TEST_CASE("solve_sparse reports singular systems") {
  TripletBuffer buf;
  buf.add(0, 0, 1.0);
  buf.add(0, 1, 1.0);
  buf.add(1, 0, 1.0);
  buf.add(1, 1, 1.0);  // rank 1
  const auto A = compress(buf, 2, 2);
  CHECK_THROWS_AS(solve_sparse(A, std::vector<double>{1.0, 2.0}), std::runtime_error);

  CHECK(solve_sparse(compress(TripletBuffer{}, 0, 0), {}).empty());
  CHECK_THROWS_AS(solve_sparse(compress(TripletBuffer{}, 2, 3), std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}
