#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ncbmo/czo.hpp"

using namespace ncbmo;

static CMatrix randh(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
  return CMatrix((A + A.adjoint()) / 2);
}

TEST_CASE("strict lower truncation") {
  CMatrix A = CMatrix::Ones(3, 3);
  CMatrix T = triangular_truncation(A);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      CHECK(T(i, j) == (i > j ? cplx(1, 0) : cplx(0, 0)));
  CHECK((triangular_truncation(T) - T).cwiseAbs().maxCoeff() == 0.0);
  CMatrix e12 = CMatrix::Zero(2, 2), e21 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  CHECK(triangular_truncation(e12).cwiseAbs().maxCoeff() == 0.0);
  CHECK((triangular_truncation(e21) - e21).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hilbert symbol layout") {
  MultiplierSymbol h = hilbert_symbol(8);
  CHECK(h.values(0) == cplx(0, 0));
  CHECK(h.values(1) == cplx(0, -1));
  CHECK(h.values(3) == cplx(0, -1));
  CHECK(h.values(4) == cplx(0, 0));  // Nyquist
  CHECK(h.values(5) == cplx(0, 1));
  CHECK(h.values(7) == cplx(0, 1));
  CHECK(multiplier_l2_norm(h) == doctest::Approx(1.0));
}

TEST_CASE("multiplier apply vs inline dft oracle") {
  Eigen::Index N = 8;
  CVector vals(N);
  for (Eigen::Index i = 0; i < N; ++i) vals(i) = cplx(0.3 * i, -0.1 * i * i);
  MultiplierSymbol sym = MultiplierSymbol::cyclic(vals);
  CVector delta = CVector::Zero(N);
  delta(0) = 1.0;
  CVector got = fourier_multiplier_apply(sym, delta);
  for (Eigen::Index x = 0; x < N; ++x) {
    cplx want = 0;
    for (Eigen::Index k = 0; k < N; ++k)
      want += vals(k) * std::polar(1.0, 2 * M_PI * (double)(k * x) / N) /
              (double)N;
    CHECK(std::abs(got(x) - want) < 1e-13);
  }
  // identity symbol is the identity operator
  MultiplierSymbol one = MultiplierSymbol::cyclic(CVector::Ones(N));
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  CVector f(N);
  for (Eigen::Index i = 0; i < N; ++i) f(i) = cplx(g(rng), g(rng));
  CHECK((fourier_multiplier_apply(one, f) - f).cwiseAbs().maxCoeff() < 1e-13);
  // operator-valued action is coefficientwise
  std::vector<CMatrix> fm(N), om;
  for (Eigen::Index x = 0; x < N; ++x) {
    fm[x] = CMatrix::Zero(2, 2);
    fm[x](0, 0) = f(x);
  }
  om = fourier_multiplier_apply(sym, fm);
  CVector oc = fourier_multiplier_apply(sym, f);
  for (Eigen::Index x = 0; x < N; ++x) {
    CHECK(std::abs(om[x](0, 0) - oc(x)) < 1e-13);
    CHECK(std::abs(om[x](1, 1)) < 1e-15);
  }
}

TEST_CASE("poisson bracket identity for the truncation multiplier") {
  TGrid grid = TGrid::log_spaced(1e-2, 10, 10);
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1;
  CHECK(czo_bmo_identity_check(e12, grid) <= 1e-13);
  std::mt19937_64 rng(8);
  CMatrix A = randh(rng, 8);
  CHECK(czo_bmo_identity_check(A, grid) <= 1e-12 * (1 + op_norm(A)) *
                                               (1 + op_norm(A)));
  CHECK(czo_bmo_identity_check(CMatrix::Zero(4, 4), grid) == 0.0);
}

TEST_CASE("schatten growth probe") {
  CzoProbeReport rep = schatten_growth_probe(8, 6, {1.5, 2.0, 4.0}, 42);
  CHECK(rep.rows.size() == 3);
  CHECK(rep.all_pass());
  for (const auto& r : rep.rows) {
    CHECK(r.measured <= r.bound + 1e-12);
    if (r.params.find("p=2") != std::string::npos)
      CHECK(r.measured <= 1.0 + 1e-12);  // HS contraction
  }
  CHECK_THROWS_AS(schatten_growth_probe(4, 2, {1.0}), InvalidP);
  CHECK_THROWS_AS(schatten_growth_probe(4, 2, {0.7}), InvalidP);
  CHECK(rep.to_json().find("measured") != std::string::npos);
}

TEST_CASE("hormander probe") {
  // identity symbol: kernel is a point mass, differences vanish off the arc
  MultiplierSymbol one = MultiplierSymbol::cyclic(CVector::Ones(64));
  CzoProbeReport triv = hormander_probe(one, 2, {1, 3});
  CHECK(triv.all_pass());
  for (const auto& r : triv.rows) CHECK(r.measured <= 1e-13);
  MultiplierSymbol h = hilbert_symbol(64);
  CzoProbeReport rep = hormander_probe(h, 2, {2, 4});
  CHECK(rep.all_pass());
  for (const auto& r : rep.rows) CHECK(r.measured > 0.1);
  CHECK_THROWS_AS(hormander_probe(hilbert_symbol(16), 5, {1}), RadiusTooLarge);
}
