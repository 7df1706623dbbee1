#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ncbmo/opalg.hpp"

using namespace ncbmo;

static CMatrix randm(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
  return A;
}

TEST_CASE("log grid endpoints and validation") {
  TGrid g = TGrid::log_spaced(1e-3, 1e3, 7);
  CHECK(g.values.size() == 7);
  CHECK(g.values.front() == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(g.values.back() == doctest::Approx(1e3).epsilon(1e-14));
  CHECK(g.values[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(TGrid::log_spaced(0, 1, 5), InvalidParams);
  CHECK_THROWS_AS(TGrid::log_spaced(1, 1, 5), InvalidParams);
  CHECK_THROWS_AS(TGrid::log_spaced(1, 2, 1), InvalidParams);
}

TEST_CASE("hermitian checks and psd sqrt") {
  std::mt19937_64 rng(7);
  CMatrix B = randm(rng, 5);
  CMatrix A = B * B.adjoint();
  CHECK(is_hermitian(A));
  CHECK_FALSE(is_hermitian(B + CMatrix::Identity(5, 5)));
  CMatrix R = psd_sqrt(A);
  CHECK((R * R - A).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(psd_sqrt(CMatrix(-A)), NegativeSpectrum);
  CHECK_THROWS_AS(psd_sqrt(B), NotHermitian);
}

TEST_CASE("schatten norms on a known diagonal") {
  CMatrix D = CMatrix::Zero(3, 3);
  D(0, 0) = 3;
  D(1, 1) = -4;  // singular values {4, 3, 0}
  CHECK(norm(D, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(norm(D, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(op_norm(D) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(norm(D, 0.5), InvalidP);
  CHECK(sqrt_op_norm(CMatrix(D * D.adjoint())) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("psd order gap") {
  CMatrix I = CMatrix::Identity(3, 3);
  CHECK(psd_order_gap(I, CMatrix(2 * I)) == doctest::Approx(1.0));
  CHECK(psd_order_gap(CMatrix(2 * I), I) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(psd_order_gap(I, CMatrix::Identity(4, 4)),
                  DimensionMismatch);
}

TEST_CASE("cpu map constructor validation") {
  CMatrix sym = CMatrix::Identity(3, 3);
  CHECK_NOTHROW(CpuMap::schur(sym));
  sym(0, 0) = 2.0;
  CHECK_THROWS_AS(CpuMap::schur(sym), MalformedMap);
  CVector cy = CVector::Ones(4);
  CHECK_NOTHROW(CpuMap::cyclic_fourier(cy));
  cy(0) = 0.5;
  CHECK_THROWS_AS(CpuMap::cyclic_fourier(cy), MalformedMap);
  CMatrix rho = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(CpuMap::trace_like(rho), MalformedMap);  // trace 2
  CHECK_NOTHROW(CpuMap::trace_like(CMatrix(rho / 2.0)));
}

TEST_CASE("schur application is entrywise") {
  std::mt19937_64 rng(3);
  CMatrix A = randm(rng, 4);
  CMatrix sym = randm(rng, 4);
  sym.diagonal().setOnes();
  CMatrix out = apply_cpu(CpuMap::schur(sym), A);
  CHECK((out - sym.cwiseProduct(A)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cyclic fourier acts by difference index") {
  Eigen::Index N = 5;
  CVector sym(N);
  for (Eigen::Index d = 0; d < N; ++d) sym(d) = cplx(d == 0 ? 1.0 : 0.1 * d, 0);
  std::mt19937_64 rng(11);
  CMatrix A = randm(rng, N);
  CMatrix out = apply_cpu(CpuMap::cyclic_fourier(sym), A);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index k = 0; k < N; ++k) {
      cplx want = sym(((m - k) % N + N) % N) * A(m, k);
      CHECK(std::abs(out(m, k) - want) < 1e-15);
    }
}

TEST_CASE("grid kernel acts on diagonal carriers only") {
  RVector nodes(3), w(3);
  nodes << 0, 1, 2;
  w << 0.5, 1.0, 0.5;
  Eigen::MatrixXd K = Eigen::MatrixXd::Constant(3, 3, 1.0);
  CpuMap phi = CpuMap::grid_kernel(nodes, w, K);
  CVector f(3);
  f << 1.0, 2.0, 3.0;
  CMatrix out = apply_cpu(phi, CMatrix(f.asDiagonal()));
  double want = 0.5 * 1 + 1.0 * 2 + 0.5 * 3;
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(out(i, i) - want) < 1e-14);
  std::mt19937_64 rng(2);
  CHECK_THROWS_AS(apply_cpu(phi, randm(rng, 3)), CarrierMismatch);
}

TEST_CASE("trace-like map is the state times identity") {
  std::mt19937_64 rng(5);
  CMatrix B = randm(rng, 3);
  CMatrix rho = B * B.adjoint();
  rho /= rho.trace();
  CMatrix A = randm(rng, 3);
  CMatrix out = apply_cpu(CpuMap::trace_like(rho), A);
  cplx want = (rho * A).trace();
  CHECK(std::abs(out(0, 0) - want) < 1e-12);
  CHECK(std::abs(out(0, 1)) < 1e-15);
}

TEST_CASE("composite applies in sequence") {
  CMatrix s1 = CMatrix::Constant(2, 2, 0.5);
  s1.diagonal().setOnes();
  std::vector<CpuMap> parts;
  parts.push_back(CpuMap::schur(s1));
  parts.push_back(CpuMap::schur(s1));
  CpuMap phi = CpuMap::composite(std::move(parts));
  CMatrix A = CMatrix::Constant(2, 2, 1.0);
  CMatrix out = apply_cpu(phi, A);
  CHECK(out(0, 1) == cplx(0.25, 0));
  CHECK(out(0, 0) == cplx(1.0, 0));
}

TEST_CASE("module inner product: identity map closed form and positivity") {
  std::mt19937_64 rng(9);
  Eigen::Index n = 4;
  CMatrix a = randm(rng, n), b = randm(rng, n);
  CMatrix sym = CMatrix::Ones(n, n);  // Schur with all-ones symbol = identity
  TensorElement xi{{a, b}};
  CMatrix got = module_inner_product(xi, CpuMap::schur(sym));
  CMatrix want = b.adjoint() * a.adjoint() * a * b;
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  // positivity for a cp map on a 2-term element
  CMatrix B = randm(rng, n);
  CMatrix S = B * B.adjoint();
  RVector d = S.diagonal().real().cwiseInverse().cwiseSqrt();
  CMatrix psym = d.asDiagonal().toDenseMatrix().cast<cplx>() * S *
                 d.asDiagonal().toDenseMatrix().cast<cplx>();
  TensorElement xi2{{a, b}, {randm(rng, n), randm(rng, n)}};
  CMatrix form = module_inner_product(xi2, CpuMap::schur(psym));
  CHECK(herm_eigs(form)(0) > -1e-10);
}

TEST_CASE("matrix json round trip") {
  std::mt19937_64 rng(13);
  CMatrix A = randm(rng, 3);
  CMatrix B = matrix_from_json(matrix_to_json(A));
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(matrix_from_json("{\"n\": 2, \"re\": [[1]], \"im\": [[0]]}"));
}

TEST_CASE("tensor element validation") {
  TensorElement e;
  CHECK_THROWS_AS(e.validate(), InvalidParams);
  CMatrix a = CMatrix::Identity(2, 2);
  TensorElement bad;
  bad.terms.push_back({a, a});
  bad.terms.push_back({CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)});
  CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
}
