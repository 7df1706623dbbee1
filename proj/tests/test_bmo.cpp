#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ncbmo/bmo.hpp"

using namespace ncbmo;

static CMatrix randm(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
  return A;
}

TEST_CASE("fixed points have zero bmo") {
  SemigroupSpec P = SemigroupSpec::schur_length(Psi::power(1.0), 4);
  TGrid grid = TGrid::log_spaced(1e-2, 10, 15);
  BmoReport r = bmo_semigroup_norm(CMatrix(CMatrix::Identity(4, 4)), P, grid);
  CHECK(r.value <= 1e-12);
}

TEST_CASE("poisson 2x2 closed form") {
  SemigroupSpec P = SemigroupSpec::schur_length(Psi::power(1.0), 2);
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  TGrid grid = TGrid::log_spaced(1e-3, 10, 30);
  BmoReport r = bmo_semigroup_norm(e12, P, grid);
  // bracket is (1 - e^{-2t}) e_22, sup over the grid
  double want = std::sqrt(1.0 - std::exp(-2.0 * grid.values.back()));
  CHECK(r.value == doctest::Approx(want).epsilon(1e-13));
  CHECK(r.value == doctest::Approx(std::sqrt(1 - std::exp(-20.0))).epsilon(1e-9));
  CHECK(r.boundary);  // sup attained at the top grid point
  CHECK(r.argmax_t == grid.values.back());
}

TEST_CASE("heat 3x3 closed form and row side") {
  SemigroupSpec H = SemigroupSpec::schur_length(Psi::power(2.0), 3);
  CMatrix e13 = CMatrix::Zero(3, 3);
  e13(0, 2) = 1.0;
  TGrid grid = TGrid::log_spaced(1e-3, 5, 25);
  double want = std::sqrt(1.0 - std::exp(-8.0 * grid.values.back()));
  BmoReport c = bmo_semigroup_norm(e13, H, grid, Side::Column);
  CHECK(c.value == doctest::Approx(want).epsilon(1e-13));
  // row = column of the adjoint
  BmoReport rw = bmo_semigroup_norm(e13, H, grid, Side::Row);
  BmoReport ca = bmo_semigroup_norm(CMatrix(e13.adjoint()), H, grid);
  CHECK(rw.value == doctest::Approx(ca.value).epsilon(1e-15));
  BmoReport mx = bmo_semigroup_norm(e13, H, grid, Side::Max);
  CHECK(mx.value == doctest::Approx(std::max(c.value, rw.value)));
}

TEST_CASE("carrier mismatch errors") {
  SemigroupSpec C = SemigroupSpec::cyclic_multiplier(Psi::power(2.0), 6);
  TGrid grid = TGrid::log_spaced(1e-2, 1, 4);
  CHECK_THROWS_AS(bmo_semigroup_norm(CMatrix(CMatrix::Identity(6, 6)), C, grid),
                  CarrierMismatch);
  SemigroupSpec P = SemigroupSpec::schur_length(Psi::power(1.0), 6);
  CHECK_THROWS_AS(bmo_semigroup_norm(CVector(CVector::Ones(6)), P, grid),
                  CarrierMismatch);
}

TEST_CASE("vector carriers: constants are fixed points") {
  TGrid grid = TGrid::log_spaced(1e-2, 2, 6);
  SemigroupSpec C = SemigroupSpec::cyclic_multiplier(Psi::power(2.0), 8);
  // direct DFT roundoff enters under a square root, hence the loose bound
  CHECK(bmo_semigroup_norm(CVector(CVector::Ones(8)), C, grid).value <= 1e-7);
  SemigroupSpec O = SemigroupSpec::ou_grid(-6, 6, 300);
  CHECK(bmo_semigroup_norm(CVector(CVector::Ones(300)), O, grid).value <= 1e-7);
}

TEST_CASE("sinc metric norm: e12 value and psd structure") {
  MarkovMetricSpec Q = build_matrix_sinc(2);
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  TGrid grid;
  grid.values = {1.0 / 16.0};
  BmoReport r = bmo_metric_norm(e12, Q, grid);
  // at t = 1/16 the j=1 coefficient is sin(pi)/pi = 0; bracket = e_22
  bool found = false;
  for (const auto& s : r.table)
    if (s.j == 1) {
      found = true;
      CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(found);
  CHECK(r.value >= 1.0 - 1e-12);
  CHECK(r.mt_policy == "R1");
}

TEST_CASE("metric norm obeys the 5-norm-squared bracket bound") {
  std::mt19937_64 rng(17);
  MarkovMetricSpec Q = build_matrix_sinc(6);
  TGrid grid = TGrid::log_spaced(1e-2, 10, 8);
  for (int s = 0; s < 3; ++s) {
    CMatrix f = randm(rng, 6);
    f /= op_norm(f);  // ||f||_inf = 1
    BmoReport r = bmo_metric_norm(f, Q, grid);
    CHECK(r.value <= std::sqrt(5.0) + 1e-9);
  }
}

TEST_CASE("metric norm carrier checks") {
  MarkovMetricSpec Q = build_matrix_sinc(4);
  TGrid grid = TGrid::log_spaced(1e-2, 1, 3);
  CHECK_THROWS_AS(
      bmo_metric_norm(CMatrix(CMatrix::Identity(3, 3)), Q, grid),
      DimensionMismatch);
  MarkovMetricSpec E = build_euclidean_heat(1);
  CHECK_THROWS_AS(bmo_metric_norm(CMatrix(CMatrix::Identity(4, 4)), E, grid),
                  MetricCarrierMismatch);
  CHECK(bmo_metric_norm(CMatrix(CMatrix::Identity(4, 4)), Q, grid).value <=
        1e-12);
}

TEST_CASE("euclidean grid metric norm") {
  MarkovMetricSpec E = build_euclidean_heat(1);
  Eigen::Index m = 400;
  RVector nodes(m);
  for (Eigen::Index i = 0; i < m; ++i) nodes(i) = -6.0 + 12.0 * i / (m - 1);
  TGrid grid = TGrid::log_spaced(1e-3, 0.05, 6);
  // constants are invisible to averaging
  CHECK(bmo_metric_norm(CVector(CVector::Ones(m)), nodes, E, grid).value <=
        1e-12);
  CVector f(m);
  for (Eigen::Index i = 0; i < m; ++i) f(i) = std::tanh(nodes(i));
  BmoReport r = bmo_metric_norm(f, nodes, E, grid);
  CHECK(r.value > 0.0);
  CHECK(r.value <= std::sqrt(5.0));
  // grids narrower than the largest ball are rejected for every t
  TGrid big = TGrid::log_spaced(1e3, 1e4, 3);
  CHECK_THROWS_AS(bmo_metric_norm(f, nodes, E, big), GridTooNarrow);
}

TEST_CASE("arc bmo: constants, blocks, brute force") {
  long N = 32;
  std::vector<CMatrix> cst(N, CMatrix::Identity(2, 2));
  CHECK(bmo_opval_ball_norm(cst, {1, 4}).value <= 1e-13);
  CHECK_THROWS_AS(bmo_opval_ball_norm(cst, {}), EmptyRadii);
  CHECK_THROWS_AS(bmo_opval_ball_norm(cst, {17}), RadiusTooLarge);
  // block-diagonal reduction to the scalar case
  std::vector<CMatrix> scal, block;
  for (long x = 0; x < N; ++x) {
    double gx = std::sin(2 * M_PI * x / N) + 0.2 * ((x * 7) % 5);
    CMatrix s(1, 1), b = CMatrix::Zero(2, 2);
    s(0, 0) = gx;
    b(0, 0) = gx;
    scal.push_back(s);
    block.push_back(b);
  }
  double vs = bmo_opval_ball_norm(scal, {1, 2, 5}).value;
  double vb = bmo_opval_ball_norm(block, {1, 2, 5}).value;
  CHECK(vs == doctest::Approx(vb).epsilon(1e-14));
}
