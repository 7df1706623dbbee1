#include "ncbmo/semigroup.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace ncbmo {

double Psi::operator()(double d) const {
  double ad = std::abs(d);
  if (form == Form::Power) return std::pow(ad, exponent);
  auto idx = (size_t)std::llround(ad);
  if (idx >= table.size()) throw InvalidParams("psi table too short");
  return table[idx];
}

Psi Psi::from_table(std::vector<double> v) {
  if (v.empty() || v[0] != 0.0)
    throw InvalidParams("psi table must start with psi(0) = 0");
  for (double x : v)
    if (!(x >= 0)) throw InvalidParams("psi must be nonnegative");
  Psi p;
  p.form = Form::Table;
  p.table = std::move(v);
  return p;
}

long SemigroupSpec::cyc_freq(Eigen::Index idx, Eigen::Index N) {
  long k = (long)(((idx % N) + N) % N);
  if (k > N / 2) k -= (long)N;
  return k;  // in (-N/2, N/2]
}

SemigroupSpec SemigroupSpec::schur_length(Psi psi, Eigen::Index n) {
  if (n < 1) throw InvalidParams("schur_length dimension");
  Eigen::MatrixXd L(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) L(m, k) = psi((double)(m - k));
  SemigroupSpec s = schur_lengths(std::move(L));
  s.psi = psi;
  return s;
}

SemigroupSpec SemigroupSpec::schur_lengths(Eigen::MatrixXd L) {
  if (L.rows() != L.cols()) throw InvalidParams("length matrix not square");
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    if (L(i, i) != 0.0) throw InvalidParams("psi(0) must be 0");
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
      if (!(L(i, j) >= 0)) throw InvalidParams("lengths must be >= 0");
      if (std::abs(L(i, j) - L(j, i)) > 1e-14)
        throw InvalidParams("length matrix must be symmetric");
    }
  }
  SemigroupSpec s;
  s.kind = Kind::SchurLength;
  s.n = L.rows();
  s.lengths = std::move(L);
  return s;
}

SemigroupSpec SemigroupSpec::cyclic_multiplier(Psi psi, Eigen::Index N) {
  if (N < 2) throw InvalidParams("cyclic size");
  SemigroupSpec s;
  s.kind = Kind::CyclicMultiplier;
  s.n = N;
  s.psi = psi;
  if (psi((double)cyc_freq(0, N)) != 0.0) throw InvalidParams("psi(0) != 0");
  return s;
}

SemigroupSpec SemigroupSpec::ou_grid(double lo, double hi, Eigen::Index count) {
  if (!(hi > lo) || count < 8) throw InvalidParams("ou grid");
  SemigroupSpec s;
  s.kind = Kind::OuGrid;
  s.n = count;
  s.nodes.resize(count);
  s.weights.resize(count);
  double h = (hi - lo) / (double)(count - 1);
  for (Eigen::Index i = 0; i < count; ++i) {
    s.nodes(i) = lo + h * (double)i;
    s.weights(i) = (i == 0 || i == count - 1) ? h / 2 : h;  // trapezoid
  }
  return s;
}

double ou_kernel_lebesgue(double t, double x, double y) {
  double v = 1.0 - std::exp(-2.0 * t);
  double d = std::exp(-t) * x - y;
  return std::exp(-d * d / v) / std::sqrt(M_PI * v);
}

CpuMap semigroup_cpu(const SemigroupSpec& S, double t) {
  if (t < 0) throw NegativeTime("semigroup_cpu");
  switch (S.kind) {
    case SemigroupSpec::Kind::SchurLength:
      return CpuMap::schur((-t * S.lengths.array()).exp().matrix().cast<cplx>());
    case SemigroupSpec::Kind::CyclicMultiplier: {
      CVector sym(S.n);
      for (Eigen::Index d = 0; d < S.n; ++d)
        sym(d) = std::exp(-t * S.psi((double)SemigroupSpec::cyc_freq(d, S.n)));
      return CpuMap::cyclic_fourier(sym);
    }
    case SemigroupSpec::Kind::OuGrid: {
      if (t == 0) throw InvalidParams("OU kernel at t=0 is a point mass");
      Eigen::MatrixXd K(S.n, S.n);
      for (Eigen::Index i = 0; i < S.n; ++i)
        for (Eigen::Index j = 0; j < S.n; ++j)
          K(i, j) = ou_kernel_lebesgue(t, S.nodes(i), S.nodes(j));
      return CpuMap::grid_kernel(S.nodes, S.weights, K);
    }
  }
  throw InvalidParams("unknown kind");
}

CMatrix semigroup_apply(const SemigroupSpec& S, double t, const CMatrix& f) {
  if (t < 0) throw NegativeTime("semigroup_apply");
  if (S.kind == SemigroupSpec::Kind::OuGrid)
    throw CarrierMismatch("OU semigroup acts on grid functions");
  if (f.rows() != S.n || f.cols() != S.n)
    throw DimensionMismatch("semigroup_apply");
  if (t == 0) return f;
  return apply_cpu(semigroup_cpu(S, t), f);
}

static CVector dft(const CVector& f, int sign) {
  Eigen::Index N = f.size();
  CVector out = CVector::Zero(N);
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index x = 0; x < N; ++x)
      out(k) += f(x) * std::polar(1.0, sign * 2.0 * M_PI * (double)k *
                                           (double)x / (double)N);
  return out;
}

CVector semigroup_apply(const SemigroupSpec& S, double t, const CVector& f) {
  if (t < 0) throw NegativeTime("semigroup_apply");
  if (f.size() != S.n) throw DimensionMismatch("semigroup_apply");
  if (t == 0) return f;
  switch (S.kind) {
    case SemigroupSpec::Kind::SchurLength:
      throw CarrierMismatch("schur semigroup acts on matrices");
    case SemigroupSpec::Kind::CyclicMultiplier: {
      CVector hat = dft(f, -1) / (double)S.n;
      for (Eigen::Index k = 0; k < S.n; ++k)
        hat(k) *= std::exp(-t * S.psi((double)SemigroupSpec::cyc_freq(k, S.n)));
      return dft(hat, +1);
    }
    case SemigroupSpec::Kind::OuGrid: {
      CVector out(S.n);
      for (Eigen::Index i = 0; i < S.n; ++i) {
        cplx acc = 0;
        for (Eigen::Index j = 0; j < S.n; ++j)
          acc += S.weights(j) * ou_kernel_lebesgue(t, S.nodes(i), S.nodes(j)) *
                 f(j);
        out(i) = acc;
      }
      return out;
    }
  }
  throw InvalidParams("unknown kind");
}

std::vector<Eigen::Index> ou_interior_nodes(const SemigroupSpec& S, double t,
                                            double tol) {
  if (S.kind != SemigroupSpec::Kind::OuGrid) throw CarrierMismatch("ou only");
  std::vector<Eigen::Index> out;
  double v = 1.0 - std::exp(-2.0 * t);
  double reach = 1.5 * std::sqrt(v * std::log(1.0 / tol));
  double lo = S.nodes(0), hi = S.nodes(S.n - 1);
  for (Eigen::Index i = 0; i < S.n; ++i) {
    double c = std::exp(-t) * S.nodes(i);
    if (c - lo >= reach && hi - c >= reach) out.push_back(i);
  }
  return out;
}

static double trace_pair_defect(const SemigroupSpec& S, double t,
                                std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  if (S.kind == SemigroupSpec::Kind::SchurLength) {
    CMatrix f(S.n, S.n), h(S.n, S.n);
    for (Eigen::Index i = 0; i < S.n; ++i)
      for (Eigen::Index j = 0; j < S.n; ++j) {
        f(i, j) = cplx(g(rng), g(rng));
        h(i, j) = cplx(g(rng), g(rng));
      }
    cplx a = (semigroup_apply(S, t, f).adjoint() * h).trace();
    cplx b = (f.adjoint() * semigroup_apply(S, t, h)).trace();
    return std::abs(a - b) / (1 + std::abs(a));
  }
  CVector f(S.n), h(S.n);
  for (Eigen::Index i = 0; i < S.n; ++i) {
    f(i) = cplx(g(rng), g(rng));
    h(i) = cplx(g(rng), g(rng));
  }
  cplx a = 0, b = 0;
  if (S.kind == SemigroupSpec::Kind::CyclicMultiplier) {
    CVector sf = semigroup_apply(S, t, f), sh = semigroup_apply(S, t, h);
    for (Eigen::Index i = 0; i < S.n; ++i) {
      a += std::conj(sf(i)) * h(i);
      b += std::conj(f(i)) * sh(i);
    }
    a /= (double)S.n;
    b /= (double)S.n;
  } else {  // OU: mu-weighted inner product
    CVector sf = semigroup_apply(S, t, f), sh = semigroup_apply(S, t, h);
    for (Eigen::Index i = 0; i < S.n; ++i) {
      double wmu = S.weights(i) * std::exp(-S.nodes(i) * S.nodes(i));
      a += wmu * std::conj(sf(i)) * h(i);
      b += wmu * std::conj(f(i)) * sh(i);
    }
  }
  return std::abs(a - b) / (1 + std::abs(a));
}

CheckReportData markov_check(const SemigroupSpec& S, const TGrid& grid,
                             unsigned long long seed) {
  CheckReportData rep;
  std::mt19937_64 rng(seed);
  double worst_unital = 0, worst_sym = 0, worst_cp = 0;
  for (double t : grid.values) {
    if (t == 0) continue;  // identity map, nothing to measure
    // unitality
    if (S.kind == SemigroupSpec::Kind::SchurLength) {
      CMatrix I = CMatrix::Identity(S.n, S.n);
      worst_unital = std::max(
          worst_unital,
          (semigroup_apply(S, t, I) - I).cwiseAbs().maxCoeff());
    } else if (S.kind == SemigroupSpec::Kind::CyclicMultiplier) {
      CVector one = CVector::Ones(S.n);
      worst_unital = std::max(
          worst_unital,
          (semigroup_apply(S, t, one) - one).cwiseAbs().maxCoeff());
    } else {
      CVector one = CVector::Ones(S.n);
      CVector img = semigroup_apply(S, t, one);
      for (auto i : ou_interior_nodes(S, t))
        worst_unital = std::max(worst_unital, std::abs(img(i) - 1.0));
    }
    // symmetry wrt trace, random pairs
    for (int r = 0; r < 3; ++r)
      worst_sym = std::max(worst_sym, trace_pair_defect(S, t, rng));
    // complete positivity
    if (S.kind == SemigroupSpec::Kind::SchurLength) {
      CMatrix sym = (-t * S.lengths.array()).exp().matrix().cast<cplx>();
      worst_cp = std::max(worst_cp, -herm_eigs(sym)(0));
    } else if (S.kind == SemigroupSpec::Kind::CyclicMultiplier) {
      CVector row(S.n);
      for (Eigen::Index d = 0; d < S.n; ++d)
        row(d) = std::exp(-t * S.psi((double)SemigroupSpec::cyc_freq(d, S.n)));
      CVector eigs = dft(row, -1);  // circulant eigenvalues
      for (Eigen::Index k = 0; k < S.n; ++k)
        worst_cp = std::max(worst_cp, -eigs(k).real());
    } else {
      CpuMap m = semigroup_cpu(S, t);
      worst_cp = std::max(worst_cp, -m.kernel.minCoeff());
    }
  }
  rep.lines.push_back({"unitality", worst_unital <= 1e-10, worst_unital, 1e-10});
  rep.lines.push_back({"trace_symmetry", worst_sym <= 1e-10, worst_sym, 1e-10});
  double cp_tol = S.kind == SemigroupSpec::Kind::OuGrid ? 0.0 : 1e-8;
  rep.lines.push_back({"complete_positivity", worst_cp <= cp_tol, worst_cp,
                       cp_tol});
  return rep;
}

OuIdentityReport ou_heat_identity_check(const SemigroupSpec& S,
                                        const CVector& f, double t) {
  if (S.kind != SemigroupSpec::Kind::OuGrid) throw CarrierMismatch("ou only");
  if (t < 0) throw NegativeTime("ou_heat_identity_check");
  double h = S.nodes(1) - S.nodes(0);
  double fmax = f.cwiseAbs().maxCoeff();
  if (t == 0) return {0.0, h * h * fmax};
  auto interior = ou_interior_nodes(S, t);
  if (interior.empty()) throw GridTooNarrow("no interior nodes at this t");
  // mass test: O_t 1 must be 1 on the interior
  CVector one = CVector::Ones(S.n);
  CVector mass = semigroup_apply(S, t, one);
  for (auto i : interior)
    if (std::abs(mass(i) - 1.0) > 1e-10)
      throw GridTooNarrow("Gaussian mass outside grid exceeds 1e-10");
  CVector ot = semigroup_apply(S, t, f);
  double v = (1.0 - std::exp(-2.0 * t)) / 4.0;  // heat time of the conjugation
  double defect = 0;
  for (auto i : interior) {
    double xp = std::exp(-t) * S.nodes(i);
    cplx hv = 0;
    for (Eigen::Index j = 0; j < S.n; ++j) {
      double d = xp - S.nodes(j);
      hv += S.weights(j) * std::exp(-d * d / (4 * v)) /
            std::sqrt(4 * M_PI * v) * f(j);
    }
    defect = std::max(defect, std::abs(ot(i) - hv));
  }
  return {defect, h * h * fmax};
}

std::string SemigroupSpec::to_json() const {
  nlohmann::json j;
  if (kind == Kind::SchurLength) {
    j["kind"] = "schur_length";
    j["n"] = n;
  } else if (kind == Kind::CyclicMultiplier) {
    j["kind"] = "cyclic_multiplier";
    j["N"] = n;
  } else {
    j["kind"] = "ou_grid";
    j["lo"] = nodes(0);
    j["hi"] = nodes(n - 1);
    j["count"] = n;
    return j.dump();
  }
  if (psi.form == Psi::Form::Power)
    j["psi"] = {{"form", "power"}, {"exponent", psi.exponent}};
  else
    j["psi"] = {{"form", "table"}, {"values", psi.table}};
  return j.dump();
}

SemigroupSpec SemigroupSpec::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "ou_grid")
    return ou_grid(j.at("lo").get<double>(), j.at("hi").get<double>(),
                   j.at("count").get<Eigen::Index>());
  Psi psi;
  auto pj = j.at("psi");
  if (pj.at("form") == "power")
    psi = Psi::power(pj.at("exponent").get<double>());
  else
    psi = Psi::from_table(pj.at("values").get<std::vector<double>>());
  if (kind == "schur_length")
    return schur_length(psi, j.at("n").get<Eigen::Index>());
  if (kind == "cyclic_multiplier")
    return cyclic_multiplier(psi, j.at("N").get<Eigen::Index>());
  throw InvalidParams("unknown semigroup kind: " + kind);
}

}  // namespace ncbmo
