#include "ncbmo/czo.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace ncbmo {

CMatrix triangular_truncation(const CMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("triangular_truncation");
  CMatrix out = CMatrix::Zero(A.rows(), A.cols());
  for (Eigen::Index m = 1; m < A.rows(); ++m)
    for (Eigen::Index k = 0; k < m; ++k) out(m, k) = A(m, k);
  return out;
}

MultiplierSymbol MultiplierSymbol::cyclic(CVector vals) {
  if (vals.size() < 2) throw MalformedMap("cyclic symbol too short");
  return {Domain::Cyclic, vals.size(), std::move(vals)};
}

MultiplierSymbol MultiplierSymbol::matrix_schur(CVector vals) {
  if (vals.size() < 1) throw MalformedMap("empty schur symbol");
  return {Domain::MatrixSchur, vals.size(), std::move(vals)};
}

MultiplierSymbol hilbert_symbol(Eigen::Index N) {
  CVector v(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    long k = SemigroupSpec::cyc_freq(i, N);
    if (k == 0 || 2 * k == N)
      v(i) = 0.0;  // skew-adjointness at DC and Nyquist
    else
      v(i) = cplx(0, k > 0 ? -1.0 : 1.0);
  }
  return MultiplierSymbol::cyclic(std::move(v));
}

static CVector dft(const CVector& f, int sign) {
  Eigen::Index N = f.size();
  CVector out = CVector::Zero(N);
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index x = 0; x < N; ++x)
      out(k) += f(x) * std::polar(1.0, sign * 2.0 * M_PI * k * x / N);
  return out;
}

CVector fourier_multiplier_apply(const MultiplierSymbol& sym,
                                 const CVector& f) {
  if (sym.domain != MultiplierSymbol::Domain::Cyclic)
    throw CarrierMismatch("vector carrier needs a cyclic symbol");
  if (f.size() != sym.n) throw DimensionMismatch("fourier_multiplier_apply");
  CVector fhat = dft(f, -1) / (double)sym.n;
  fhat = fhat.cwiseProduct(sym.values);
  return dft(fhat, +1);
}

std::vector<CMatrix> fourier_multiplier_apply(const MultiplierSymbol& sym,
                                              const std::vector<CMatrix>& f) {
  if ((Eigen::Index)f.size() != sym.n)
    throw DimensionMismatch("fourier_multiplier_apply");
  Eigen::Index m = f[0].rows();
  std::vector<CMatrix> out(f.size(), CMatrix::Zero(m, m));
  CVector comp(sym.n);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index x = 0; x < sym.n; ++x) comp(x) = f[x](r, c);
      CVector g = fourier_multiplier_apply(sym, comp);
      for (Eigen::Index x = 0; x < sym.n; ++x) out[x](r, c) = g(x);
    }
  return out;
}

double multiplier_l2_norm(const MultiplierSymbol& sym) {
  return sym.values.cwiseAbs().maxCoeff();
}

double czo_bmo_identity_check(const CMatrix& A, const TGrid& grid) {
  Eigen::Index n = A.rows();
  SemigroupSpec P = SemigroupSpec::schur_length(Psi::power(1.0), n);
  CMatrix T = cplx(0, 1) * (A - 2.0 * triangular_truncation(A));
  auto bracket = [&](const CMatrix& X, double t) {
    CMatrix ptx = semigroup_apply(P, t, X);
    return CMatrix(semigroup_apply(P, t, CMatrix(X.adjoint() * X)) -
                   ptx.adjoint() * ptx);
  };
  double worst = 0;
  for (double t : grid.values) {
    CMatrix d = bracket(A, t) - bracket(T, t);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

std::string CzoProbeReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"probe", r.probe},
                   {"params", r.params},
                   {"seed", r.seed},
                   {"measured", r.measured},
                   {"bound", r.bound},
                   {"pass", r.pass}});
  return arr.dump();
}

CzoProbeReport schatten_growth_probe(Eigen::Index n, int samples,
                                     const std::vector<double>& p_list,
                                     unsigned long long seed) {
  if (n < 2 || samples < 1) throw InvalidParams("schatten_growth_probe");
  for (double p : p_list)
    if (!(p > 1.0) || std::isinf(p)) throw InvalidP("p must lie in (1, inf)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> worst(p_list.size(), 0.0);
  for (int s = 0; s < samples; ++s) {
    CMatrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
    CMatrix dA = triangular_truncation(A);
    for (size_t k = 0; k < p_list.size(); ++k)
      worst[k] = std::max(worst[k],
                          norm(dA, p_list[k]) / norm(A, p_list[k]));
  }
  CzoProbeReport rep;
  for (size_t k = 0; k < p_list.size(); ++k) {
    double p = p_list[k], bound = p * p / (p - 1.0);
    rep.rows.push_back({"schatten_growth",
                        "n=" + std::to_string(n) + ",p=" + std::to_string(p),
                        seed, worst[k], bound, worst[k] <= bound});
  }
  return rep;
}

CzoProbeReport hormander_probe(const MultiplierSymbol& sym, int lambda,
                               const std::vector<int>& radii) {
  if (sym.domain != MultiplierSymbol::Domain::Cyclic)
    throw CarrierMismatch("hormander probe is for cyclic symbols");
  if (radii.empty()) throw EmptyRadii("no radii");
  long N = sym.n;
  for (int r : radii)
    if (4L * lambda * r > N) throw RadiusTooLarge("need N >= 4 lambda r");
  // convolution kernel by inverse transform of the symbol
  CVector kern(N);
  for (long d = 0; d < N; ++d) {
    cplx acc = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
      long k = SemigroupSpec::cyc_freq(i, N);
      acc += sym.values(i) * std::polar(1.0, 2.0 * M_PI * k * d / N);
    }
    kern(d) = acc / (double)N;
  }
  auto kat = [&](long d) { return kern(((d % N) + N) % N); };
  auto cyc_dist = [&](long d) {
    long m = ((d % N) + N) % N;
    return std::min(m, N - m);
  };
  CzoProbeReport rep;
  for (int r : radii) {
    // translation invariance: center the arc at 0
    double best = 0;
    for (long y1 = -r; y1 <= r; ++y1)
      for (long y2 = y1 + 1; y2 <= r; ++y2) {
        double s = 0;
        for (long z = 0; z < N; ++z)
          if (cyc_dist(z) > (long)lambda * r)
            s += std::abs(kat(y1 - z) - kat(y2 - z));
        best = std::max(best, s);
      }
    rep.rows.push_back({"hormander",
                        "N=" + std::to_string(N) + ",r=" + std::to_string(r) +
                            ",lambda=" + std::to_string(lambda),
                        0, best, std::numeric_limits<double>::infinity(),
                        true});
  }
  return rep;
}

}  // namespace ncbmo
