#include "ncbmo/suites.hpp"

#include <cmath>
#include <random>

#include "json.hpp"
#include "ncbmo/bmo.hpp"
#include "ncbmo/czo.hpp"
#include "ncbmo/qtorus.hpp"
#include "ncbmo/transference.hpp"

namespace ncbmo {

std::string SuiteConfig::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["samples"] = samples;
  j["n"] = n;
  j["dim"] = dim;
  j["t_grid"] = {{"lo", t_lo}, {"hi", t_hi}, {"count", t_count}};
  return j.dump();
}

SuiteConfig SuiteConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SuiteConfig c;
  c.suite = j.value("suite", "");
  c.seed = j.value("seed", 1ULL);
  c.samples = j.value("samples", -1);
  c.n = j.value("n", -1);
  c.dim = j.value("dim", 1);
  if (j.contains("t_grid")) {
    c.t_lo = j["t_grid"].value("lo", 1e-3);
    c.t_hi = j["t_grid"].value("hi", 1e3);
    c.t_count = j["t_grid"].value("count", 60);
  }
  return c;
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "ncbmo-report/1";
  j["tool_version"] = "0.1.0";
  j["suite"] = suite;
  j["config"] = nlohmann::json::parse(config_echo);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"check", c.name},
                   {"status", c.status},
                   {"measured", c.measured},
                   {"bound", c.bound},
                   {"units", c.units}});
  j["checks"] = std::move(arr);
  j["pass"] = pass();
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "metric-euclidean", "metric-ou",      "metric-sinc",
      "bmo-matrix",       "czo-triangular", "czo-hormander",
      "qtorus-all",       "transference-all", "lemma11-properties"};
  return names;
}

namespace {

using Checks = std::vector<SuiteCheck>;

void add(Checks& cs, const std::string& name, bool ok, double measured,
         double bound, const std::string& units = "") {
  cs.push_back({name, ok ? "pass" : "fail", measured, bound, units});
}

CMatrix rand_mat(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
  return A;
}

TGrid cfg_grid(const SuiteConfig& c) {
  return TGrid::log_spaced(c.t_lo, c.t_hi, c.t_count);
}

// ---- lemma 1.1 instance machinery ----

CpuMap random_cpu(std::mt19937_64& rng, Eigen::Index n, int kind) {
  std::normal_distribution<double> g;
  switch (kind % 4) {
    case 0: {  // psd symbol with unit diagonal
      CMatrix B = rand_mat(rng, n);
      CMatrix S = B * B.adjoint();
      RVector d = S.diagonal().real().cwiseMax(1e-12).cwiseInverse().cwiseSqrt();
      return CpuMap::schur(d.asDiagonal().toDenseMatrix().cast<cplx>() * S *
                           d.asDiagonal().toDenseMatrix().cast<cplx>());
    }
    case 1: {  // cyclic symbol = transform of a probability vector
      RVector p(n);
      for (Eigen::Index i = 0; i < n; ++i) p(i) = std::abs(g(rng)) + 1e-3;
      p /= p.sum();
      CVector sym = CVector::Zero(n);
      for (Eigen::Index d = 0; d < n; ++d)
        for (Eigen::Index x = 0; x < n; ++x)
          sym(d) += p(x) * std::polar(1.0, 2 * M_PI * (double)(x * d) / n);
      sym(0) = 1.0;
      return CpuMap::cyclic_fourier(std::move(sym));
    }
    case 2: {  // conditional expectation onto a state
      CMatrix B = rand_mat(rng, n);
      CMatrix rho = B * B.adjoint();
      rho /= rho.trace();
      return CpuMap::trace_like(std::move(rho));
    }
    default: {
      std::vector<CpuMap> parts;
      parts.push_back(random_cpu(rng, n, 0));
      parts.push_back(random_cpu(rng, n, 1));
      return CpuMap::composite(std::move(parts));
    }
  }
}

TensorElement rand_elem(std::mt19937_64& rng, Eigen::Index n, int terms) {
  TensorElement xi;
  for (int k = 0; k < terms; ++k)
    xi.terms.push_back({rand_mat(rng, n) / (double)n, rand_mat(rng, n) / (double)n});
  return xi;
}

void lemma11_checks(Checks& cs, unsigned long long seed, int samples) {
  std::mt19937_64 rng(seed);
  Eigen::Index n = 6;
  double worst_i = 1e300, worst_iii = 1e300, worst_ii = 0;
  for (int s = 0; s < samples; ++s) {
    CpuMap phi = random_cpu(rng, n, s);
    TensorElement x1 = rand_elem(rng, n, 2), x2 = rand_elem(rng, n, 2);
    // (i) <x1+x2> <= 2<x1> + 2<x2>
    TensorElement sum = x1;
    for (const auto& t : x2.terms) sum.terms.push_back(t);
    CMatrix lhs = module_inner_product(sum, phi);
    CMatrix rhs = 2.0 * module_inner_product(x1, phi) +
                  2.0 * module_inner_product(x2, phi);
    worst_i = std::min(worst_i, psd_order_gap(lhs, rhs));
    // (ii) <f(x)1 - 1(x)phi(f)> = phi|f|^2 - |phi f|^2, exactly
    CMatrix f = rand_mat(rng, n);
    f /= (1.0 + op_norm(f));
    CMatrix pf = apply_cpu(phi, f);
    TensorElement split;
    split.terms.push_back({f, CMatrix::Identity(n, n)});
    split.terms.push_back({CMatrix::Identity(n, n), -pf});
    CMatrix left = module_inner_product(split, phi);
    CMatrix right = apply_cpu(phi, CMatrix(f.adjoint() * f)) - pf.adjoint() * pf;
    right = (right + right.adjoint().eval()) / 2.0;
    worst_ii = std::max(worst_ii, (left - right).cwiseAbs().maxCoeff());
    // (iii) |phi(f) - g|^2 <= <f(x)1 - 1(x)g>
    CMatrix g = rand_mat(rng, n);
    g /= (1.0 + op_norm(g));
    TensorElement sp2;
    sp2.terms.push_back({f, CMatrix::Identity(n, n)});
    sp2.terms.push_back({CMatrix::Identity(n, n), -g});
    CMatrix dom = module_inner_product(sp2, phi);
    CMatrix dev = (pf - g).adjoint() * (pf - g);
    worst_iii = std::min(worst_iii, psd_order_gap(dev, dom));
  }
  add(cs, "module_sum_psd_gap", worst_i >= -1e-10, worst_i, -1e-10, "eig");
  add(cs, "split_identity_defect", worst_ii <= 1e-12, worst_ii, 1e-12, "abs");
  add(cs, "approximation_psd_gap", worst_iii >= -1e-10, worst_iii, -1e-10,
      "eig");
}

// ---- suite bodies ----

void suite_metric_euclidean(const SuiteConfig& cfg, Checks& cs) {
  int samples = cfg.samples > 0 ? cfg.samples : 10000;
  MarkovMetricSpec Q = build_euclidean_heat(cfg.dim);
  TGrid grid = cfg_grid(cfg);
  double kq = kq_constant(Q, grid);
  if (cfg.dim == 1)
    add(cs, "kq_closed_form", std::abs(kq - kq_closed_form_1d()) <= 1e-12,
        kq, kq_closed_form_1d(), "norm");
  else
    add(cs, "kq_finite", std::isfinite(kq), kq, 0, "norm");
  if (cfg.dim == 1) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(-3, 3), ut(std::log(1e-3),
                                                         std::log(10.0));
    std::vector<DominationSample> pts;
    for (int i = 0; i < samples; ++i)
      pts.push_back({ux(rng), ux(rng), std::exp(ut(rng))});
    auto rep = kernel_domination_check(Q, pts);
    add(cs, "kernel_domination", rep.pass, rep.worst_ratio, rep.c_variant,
        "ratio");
  }
  double worst = 1e300;
  SemigroupSpec dummy = sinc_heat_semigroup(2);
  for (double t : {1e-3, 1e-1, 1.0, 10.0}) {
    auto r = majorization_check(Q, dummy, t, MajorizationMethod::SchurSymbolPsd);
    worst = std::min(worst, r.worst_gap);
  }
  add(cs, "lattice_symbol_psd", worst >= -1e-8, worst, -1e-8, "eig");
}

void suite_metric_ou(const SuiteConfig& cfg, Checks& cs) {
  int count = cfg.n > 0 ? cfg.n : 2000;
  SemigroupSpec S = SemigroupSpec::ou_grid(-8, 8, count);
  MarkovMetricSpec Q = build_ou_corona(-8, 8, count);
  double h = 16.0 / (count - 1);
  // conjugation identity against the dilated heat flow
  double worst_defect = 0;
  for (double t : {0.05, 0.3, 1.0}) {
    CVector f(count);
    for (Eigen::Index i = 0; i < count; ++i) {
      double x = S.nodes(i);
      f(i) = cplx(std::exp(-x * x / 3.0), x * std::exp(-x * x / 4.0));
    }
    worst_defect = std::max(worst_defect, ou_heat_identity_check(S, f, t).defect);
  }
  add(cs, "ou_heat_conjugation_defect", worst_defect <= 1e-6, worst_defect,
      1e-6, "abs");
  // semigroup sanity on the same grid
  auto mc = markov_check(S, TGrid::log_spaced(1e-2, 2.0, 8), cfg.seed);
  double worst_line = 0;
  for (const auto& l : mc.lines)
    worst_line = std::max(worst_line, l.measured - l.bound);
  add(cs, "markov_axioms", mc.all_pass(), worst_line, 0, "abs");
  // corona kernel domination
  int samples = cfg.samples > 0 ? cfg.samples : 1000;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ux(-3, 3), uy(-4, 4),
      ut(std::log(1e-3), std::log(0.99 / 36.0));
  std::vector<DominationSample> pts;
  for (int i = 0; i < samples; ++i)
    pts.push_back({ux(rng), uy(rng), std::exp(ut(rng))});
  auto rep = kernel_domination_check(Q, pts);
  add(cs, "corona_domination", rep.pass, rep.worst_ratio, rep.c_variant,
      "ratio");
  // partial-sum refinement stability
  double worst_rel = 0;
  for (double x : {0.0, 0.7, 2.5}) {
    for (double t : {0.004, 0.012}) {
      auto a = ou_partial_sums(x, t, h);
      auto b = ou_partial_sums(x, t, h / 2);
      for (int i = 0; i < 3; ++i) {
        double denom = std::max(std::abs(b[i]), 1e-12);
        worst_rel = std::max(worst_rel, std::abs(a[i] - b[i]) / denom);
      }
    }
  }
  add(cs, "partial_sum_refinement", worst_rel <= 0.01, worst_rel, 0.01, "rel");
  // module-order majorization on sampled families
  double worst_gap = 1e300;
  for (double t : {0.005, 0.012}) {
    auto m = majorization_check(Q, S, t, MajorizationMethod::SampledFamilies,
                                cfg.seed);
    worst_gap = std::min(worst_gap, m.worst_gap);
  }
  add(cs, "sampled_majorization_gap", worst_gap >= -1e-8, worst_gap, -1e-8,
      "abs");
}

void suite_metric_sinc(const SuiteConfig& cfg, Checks& cs) {
  std::vector<Eigen::Index> sizes;
  if (cfg.n > 0)
    sizes = {cfg.n};
  else
    sizes = {8, 32};
  TGrid grid = TGrid::log_spaced(1e-3, 1e2, 60);
  double worst = 1e300;
  for (Eigen::Index n : sizes) {
    MarkovMetricSpec Q = build_matrix_sinc(n);
    SemigroupSpec S = sinc_heat_semigroup(n);
    for (double t : grid.values) {
      auto r = majorization_check(Q, S, t, MajorizationMethod::SchurSymbolPsd);
      worst = std::min(worst, r.worst_gap);
    }
  }
  add(cs, "toeplitz_certificate_psd", worst >= -1e-8, worst, -1e-8, "eig");
  MarkovMetricSpec Q8 = build_matrix_sinc(8);
  double kq = kq_constant(Q8, grid);
  add(cs, "kq_closed_form", std::abs(kq - kq_closed_form_1d()) <= 1e-12, kq,
      kq_closed_form_1d(), "norm");
  double worst_fam = 1e300;
  for (double t : {0.01, 1.0}) {
    auto r = majorization_check(Q8, sinc_heat_semigroup(8), t,
                                MajorizationMethod::SampledFamilies, cfg.seed);
    worst_fam = std::min(worst_fam, r.worst_gap);
  }
  add(cs, "sampled_majorization_gap", worst_fam >= -1e-8, worst_fam, -1e-8,
      "eig");
}

void suite_bmo_matrix(const SuiteConfig& cfg, Checks& cs) {
  TGrid grid = TGrid::log_spaced(1e-3, 10, 40);
  // fixed point of a unital semigroup
  SemigroupSpec P4 = SemigroupSpec::schur_length(Psi::power(1.0), 4);
  double v0 = bmo_semigroup_norm(CMatrix(CMatrix::Identity(4, 4)), P4, grid).value;
  add(cs, "fixed_point_zero", v0 <= 1e-12, v0, 1e-12, "norm");
  // 2x2 closed form under the Poisson flow
  SemigroupSpec P2 = SemigroupSpec::schur_length(Psi::power(1.0), 2);
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  double v12 = bmo_semigroup_norm(e12, P2, grid).value;
  double want = 0;
  for (double t : grid.values)
    want = std::max(want, std::sqrt(1.0 - std::exp(-2 * t)));
  add(cs, "poisson_e12_closed_form", std::abs(v12 - want) <= 1e-12, v12, want,
      "norm");
  // 3x3 heat closed form
  SemigroupSpec H3 = SemigroupSpec::schur_length(Psi::power(2.0), 3);
  CMatrix e13 = CMatrix::Zero(3, 3);
  e13(0, 2) = 1.0;
  double v13 = bmo_semigroup_norm(e13, H3, grid).value;
  double want13 = 0;
  for (double t : grid.values)
    want13 = std::max(want13, std::sqrt(1.0 - std::exp(-8 * t)));
  add(cs, "heat_e13_closed_form", std::abs(v13 - want13) <= 1e-12, v13, want13,
      "norm");
  // seminorm axioms
  std::mt19937_64 rng(cfg.seed);
  SemigroupSpec P8 = SemigroupSpec::schur_length(Psi::power(1.0), 8);
  double worst_hom = 0, worst_tri = -1e300;
  for (int s = 0; s < 5; ++s) {
    CMatrix f = rand_mat(rng, 8), g = rand_mat(rng, 8);
    double vf = bmo_semigroup_norm(f, P8, grid).value;
    double vg = bmo_semigroup_norm(g, P8, grid).value;
    double vl = bmo_semigroup_norm(CMatrix(cplx(0.3, 0.4) * f), P8, grid).value;
    worst_hom = std::max(worst_hom, std::abs(vl - 0.5 * vf));
    double vsum = bmo_semigroup_norm(CMatrix(f + g), P8, grid).value;
    worst_tri = std::max(worst_tri, vsum - vf - vg);
  }
  add(cs, "homogeneity", worst_hom <= 1e-9, worst_hom, 1e-9, "abs");
  add(cs, "triangle_inequality", worst_tri <= 1e-9, worst_tri, 1e-9, "abs");
  // semigroup BMO dominated by k_Q times metric BMO (sinc pair)
  TGrid sg = TGrid::log_spaced(1e-3, 1e2, 20);
  Eigen::Index n = cfg.n > 0 ? cfg.n : 16;
  MarkovMetricSpec Q = build_matrix_sinc(n);
  SemigroupSpec S = sinc_heat_semigroup(n);
  double kq = kq_constant(Q, sg);
  double worst_ratio = 0;
  for (int s = 0; s < 4; ++s) {
    CMatrix f = rand_mat(rng, n);
    double lhs = bmo_semigroup_norm(f, S, sg).value;
    double rhs = bmo_metric_norm(f, Q, sg).value;
    worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  add(cs, "semigroup_vs_metric_bmo", worst_ratio <= kq + 1e-6, worst_ratio,
      kq, "ratio");
  // the centering term costs at most sqrt(2)
  double worst_mt = 0;
  for (int s = 0; s < 3; ++s) {
    CMatrix f = rand_mat(rng, 8);
    double with = bmo_metric_norm(f, build_matrix_sinc(8), sg, true).value;
    double without = bmo_metric_norm(f, build_matrix_sinc(8), sg, false).value;
    worst_mt = std::max(worst_mt, with / without);
  }
  add(cs, "centering_cost", worst_mt <= std::sqrt(2.0) + 1e-9, worst_mt,
      std::sqrt(2.0), "ratio");
  // arc BMO vs brute force on the sawtooth
  long N = 64;
  std::vector<CMatrix> saw;
  for (long x = 0; x < N; ++x) {
    CMatrix v(1, 1);
    v(0, 0) = (double)x / N - 0.5;
    saw.push_back(v);
  }
  std::vector<int> radii = {1, 2, 4, 8, 16};
  double engine = bmo_opval_ball_norm(saw, radii).value;
  double brute = 0;
  for (int r : radii)
    for (long c = 0; c < N; ++c) {
      cplx mean = 0;
      for (long d = -r; d <= r; ++d)
        mean += saw[(size_t)(((c + d) % N + N) % N)](0, 0);
      mean /= (double)(2 * r + 1);
      double acc = 0;
      for (long d = -r; d <= r; ++d)
        acc += std::norm(saw[(size_t)(((c + d) % N + N) % N)](0, 0) - mean);
      brute = std::max(brute, std::sqrt(acc / (2 * r + 1)));
    }
  add(cs, "arc_bmo_brute_force", std::abs(engine - brute) <= 1e-12, engine,
      brute, "norm");
}

void suite_czo_triangular(const SuiteConfig& cfg, Checks& cs) {
  int samples = cfg.samples > 0 ? cfg.samples : 20;
  Eigen::Index n = cfg.n > 0 ? cfg.n : 8;
  std::mt19937_64 rng(cfg.seed);
  // exact small facts
  CMatrix ones = CMatrix::Constant(3, 3, 1.0);
  double s2 = norm(triangular_truncation(ones), 2.0);
  add(cs, "ones3_strict_lower_s2", std::abs(s2 - std::sqrt(3.0)) <= 1e-12, s2,
      std::sqrt(3.0), "norm");
  TGrid grid = cfg_grid(cfg);
  double worst = 0, worst_c = 0;
  TGrid cgrid = TGrid::log_spaced(1e-3, 1e2, 30);
  SemigroupSpec P = SemigroupSpec::schur_length(Psi::power(1.0), n);
  for (int s = 0; s < samples; ++s) {
    CMatrix A = rand_mat(rng, n);
    double scale = 1.0 + op_norm(A) * op_norm(A);
    worst = std::max(worst, czo_bmo_identity_check(A, grid) / scale);
    if (s < 8) {
      double va = bmo_semigroup_norm(A, P, cgrid).value;
      double vd = bmo_semigroup_norm(triangular_truncation(A), P, cgrid).value;
      worst_c = std::max(worst_c, vd / va);
    }
  }
  add(cs, "poisson_identity_defect", worst <= 1e-10, worst, 1e-10, "rel");
  add(cs, "truncation_bmo_contraction", worst_c <= 1 + 1e-6, worst_c, 1 + 1e-6,
      "ratio");
  auto probe = schatten_growth_probe(16, 20, {1.2, 1.5, 2, 3, 4, 8}, cfg.seed);
  double pworst = 0;
  for (const auto& r : probe.rows)
    pworst = std::max(pworst, r.measured / r.bound);
  add(cs, "schatten_growth", probe.all_pass(), pworst, 1.0, "ratio");
  // multiplier norm equals max |symbol| on the circulant embedding
  Eigen::Index N = 32;
  MultiplierSymbol hs = hilbert_symbol(N);
  CMatrix circ(N, N);
  CVector basis = CVector::Zero(N);
  for (Eigen::Index c = 0; c < N; ++c) {
    basis(c) = 1.0;
    circ.col(c) = fourier_multiplier_apply(hs, basis);
    basis(c) = 0.0;
  }
  double mn = op_norm(circ);
  add(cs, "multiplier_l2_norm", std::abs(mn - multiplier_l2_norm(hs)) <= 1e-12,
      mn, multiplier_l2_norm(hs), "norm");
}

void suite_czo_hormander(const SuiteConfig& cfg, Checks& cs) {
  (void)cfg;
  Eigen::Index N0 = 64;
  CVector one = CVector::Constant(N0, 1.0);
  auto rid = hormander_probe(MultiplierSymbol::cyclic(one), 5, {1, 2, 3});
  double w = 0;
  for (const auto& r : rid.rows) w = std::max(w, r.measured);
  add(cs, "identity_kernel_constant", w <= 1e-12, w, 1e-12, "abs");
  CVector mod(N0);
  for (Eigen::Index i = 0; i < N0; ++i)
    mod(i) = std::polar(1.0, 2 * M_PI * 3.0 * SemigroupSpec::cyc_freq(i, N0) / N0);
  auto rmod = hormander_probe(MultiplierSymbol::cyclic(mod), 5, {1, 2, 3});
  w = 0;
  for (const auto& r : rmod.rows) w = std::max(w, r.measured);
  add(cs, "modulation_kernel_constant", w <= 1e-10, w, 1e-10, "abs");
  // compare at a fixed arc fraction: doubling N doubles the lattice radius
  auto h128 = hormander_probe(hilbert_symbol(128), 5, {2, 4});
  auto h256 = hormander_probe(hilbert_symbol(256), 5, {4, 8});
  double worst_rel = 0;
  for (size_t i = 0; i < h128.rows.size(); ++i)
    worst_rel = std::max(worst_rel,
                         std::abs(h256.rows[i].measured - h128.rows[i].measured) /
                             h128.rows[i].measured);
  add(cs, "hilbert_constant_stability", worst_rel <= 0.10, worst_rel, 0.10,
      "rel");
}

void suite_qtorus(const SuiteConfig& cfg, Checks& cs) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<long> ui(-4, 4);
  TwistParams tp = TwistParams::from_upper(2, {0.37});
  auto rand_xi = [&]() { return Multi{ui(rng), ui(rng)}; };
  auto rand_series = [&](int terms) {
    TwistedSeries f;
    f.params = tp;
    for (int k = 0; k < terms; ++k) {
      cplx c(g(rng), g(rng));
      Multi xi = rand_xi();
      f.set(xi, f.at(xi) + c / (2.0 + std::abs(c)));
    }
    return f;
  };
  int samples = cfg.samples > 0 ? cfg.samples : 100;
  double w_assoc = 0, w_star = 0, w_trace = 0, w_pars = 0, w_inter = 0;
  for (int s = 0; s < samples; ++s) {
    TwistedSeries f = rand_series(3), h = rand_series(3), k = rand_series(3);
    TwistedSeries d1 = twisted_mul(twisted_mul(f, h), k) -
                       twisted_mul(f, twisted_mul(h, k));
    w_assoc = std::max(w_assoc, d1.coeff_l1());
    TwistedSeries d2 = tw_adjoint(twisted_mul(f, h)) -
                       twisted_mul(tw_adjoint(h), tw_adjoint(f));
    w_star = std::max(w_star, d2.coeff_l1());
    w_trace = std::max(w_trace, std::abs(tw_trace(twisted_mul(f, h)) -
                                         tw_trace(twisted_mul(h, f))));
    double pars = std::abs(tw_trace(twisted_mul(tw_adjoint(f), f)) -
                           f.coeff_l2() * f.coeff_l2());
    w_pars = std::max(w_pars, pars);
    w_inter = std::max(w_inter, sigma_intertwine_check(f, 0.7));
  }
  add(cs, "twisted_associativity", w_assoc <= 1e-13, w_assoc, 1e-13, "abs");
  add(cs, "adjoint_antihomomorphism", w_star <= 1e-13, w_star, 1e-13, "abs");
  add(cs, "trace_tracial", w_trace <= 1e-14, w_trace, 1e-14, "abs");
  add(cs, "trace_parseval", w_pars <= 1e-13, w_pars, 1e-13, "abs");
  add(cs, "sigma_intertwine", w_inter <= 1e-14, w_inter, 1e-14, "abs");
  // unitarity of the generators
  double w_unit = 0;
  for (int s = 0; s < 50; ++s) {
    Multi xi = rand_xi();
    TwistedSeries lam = TwistedSeries::lambda(tp, xi);
    TwistedSeries d = twisted_mul(tw_adjoint(lam), lam) - TwistedSeries::unit(tp);
    w_unit = std::max(w_unit, d.coeff_l1());
  }
  add(cs, "generator_unitarity", w_unit <= 1e-14, w_unit, 1e-14, "abs");
  // pi: expectation and multiplicativity on characters
  double w_pi = 0, w_pim = 0;
  for (int s = 0; s < 30; ++s) {
    TwistedSeries phi = rand_series(4);
    w_pi = std::max(w_pi,
                    std::abs(pi_theta_expectation(phi) - tw_trace(phi)));
    Multi xi = rand_xi(), eta = rand_xi();
    TwistedTensor prod = pi_theta(TwistedSeries::lambda(tp, xi))
                             .mul(pi_theta(TwistedSeries::lambda(tp, eta)));
    Multi sum{xi[0] + eta[0], xi[1] + eta[1]};
    TwistedTensor want = pi_theta(TwistedSeries::lambda(tp, sum));
    double d = 0;
    for (const auto& [key, c] : prod.coeffs) {
      auto it = want.coeffs.find(key);
      d = std::max(d, std::abs(c - (it == want.coeffs.end() ? cplx(0) : it->second)));
    }
    w_pim = std::max(w_pim, d);
  }
  add(cs, "pi_expectation", w_pi <= 1e-14, w_pi, 1e-14, "abs");
  add(cs, "pi_character_multiplicative", w_pim <= 1e-13, w_pim, 1e-13, "abs");
  // GNS norms
  double v_shift = gns_opnorm(TwistedSeries::lambda(tp, {1, 0}), GnsBox{8});
  add(cs, "gns_generator_norm", std::abs(v_shift - 1.0) <= 1e-10, v_shift, 1.0,
      "norm");
  long L = cfg.n > 0 ? cfg.n : 128;
  TwistedSeries one_plus_u = TwistedSeries::unit(tp) +
                             TwistedSeries::lambda(tp, {1, 0});
  double v2 = gns_opnorm(one_plus_u, GnsBox{L});
  add(cs, "gns_one_plus_shift", std::abs(v2 - 2.0) <= 1e-2, v2, 2.0, "norm");
  // Harper element at half twist vs clock-and-shift oracle
  TwistParams hp = TwistParams::from_upper(2, {0.5});
  TwistedSeries u = TwistedSeries::lambda(hp, {1, 0}),
                v = TwistedSeries::lambda(hp, {0, 1});
  TwistedSeries harper = u + tw_adjoint(u) + v + tw_adjoint(v);
  double hv = gns_opnorm(harper, GnsBox{std::min<long>(L, 96)});
  double oracle = harper_oracle(1, 2, 64);
  add(cs, "harper_vs_clock_shift", std::abs(hv - oracle) <= 1e-2, hv, oracle,
      "norm");
  // commutative limit: theta = 0 BMO vs pointwise oracle
  TwistParams cp = TwistParams::from_upper(1, {});
  TwistedSeries f0;
  f0.params = cp;
  f0.set({1}, 1.0);
  f0.set({-1}, 1.0);
  f0.set({2}, cplx(0.25, 0.25));
  f0.set({-2}, cplx(0.25, -0.25));
  MarkovMetricSpec Qc = build_qtorus_metric(Eigen::MatrixXd::Zero(1, 1));
  TGrid bgrid = TGrid::log_spaced(1e-2, 10, 12);
  BmoReport br = qt_bmo_norm(f0, Qc, bgrid, GnsBox{16});
  // oracle: same bracket, sup over a fine commutative grid
  double oval = 0;
  TwistedSeries ff = twisted_mul(tw_adjoint(f0), f0);
  for (double t : bgrid.values)
    for (int j = 1; j <= Qc.J(t); ++j) {
      TwistedSeries rf = qt_metric_apply(f0, Qc, j, t);
      TwistedSeries mf = qt_metric_apply(f0, Qc, 1, t);
      TwistedSeries dd = rf - mf;
      TwistedSeries gg = qt_metric_apply(ff, Qc, j, t) -
                         twisted_mul(tw_adjoint(rf), rf) +
                         twisted_mul(tw_adjoint(dd), dd);
      double sup = 0;
      for (int i = 0; i < 4096; ++i) {
        Eigen::VectorXd x(1);
        x(0) = i / 4096.0;
        sup = std::max(sup, series_eval(gg, x).real());
      }
      oval = std::max(oval, std::sqrt(std::max(sup, 0.0) / Qc.gamma2(j)));
    }
  add(cs, "theta0_bmo_vs_commutative", std::abs(br.value - oval) <= 0.05 * oval,
      br.value, oval, "norm");
}

void suite_transference(const SuiteConfig& cfg, Checks& cs) {
  int samples = cfg.samples > 0 ? cfg.samples : 200;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  struct Case {
    FiniteGroupTable G;
    std::vector<UnitaryRep> reps;
    std::string name;
  };
  std::vector<Case> cases;
  {
    FiniteGroupTable z6 = FiniteGroupTable::cyclic(6);
    cases.push_back({z6, {regular_rep(z6), cyclic_character_rep(6, {0, 1, 3})},
                     "z6"});
    FiniteGroupTable z12 = FiniteGroupTable::cyclic(12);
    cases.push_back(
        {z12, {regular_rep(z12), cyclic_character_rep(12, {1, 4, 7, 11})},
         "z12"});
    FiniteGroupTable s3 = FiniteGroupTable::s3();
    cases.push_back({s3, {regular_rep(s3), two_dim_irrep("s3")}, "s3"});
    FiniteGroupTable d4 = FiniteGroupTable::d4();
    cases.push_back({d4, {regular_rep(d4), two_dim_irrep("d4")}, "d4"});
  }
  double worst_ratio = 0, worst_reg = 0;
  bool all = true;
  for (const auto& c : cases) {
    for (int s = 0; s < samples; ++s) {
      GroupKernel k;
      for (Eigen::Index i = 0; i < c.G.order; ++i)
        k.values.push_back(cplx(g(rng), g(rng)));
      for (size_t r = 0; r < c.reps.size(); ++r) {
        auto row = transference_check(c.G, k, c.reps[r]);
        all = all && row.pass;
        worst_ratio = std::max(worst_ratio, row.ratio);
        if (r == 0) worst_reg = std::max(worst_reg, std::abs(row.ratio - 1.0));
      }
    }
  }
  add(cs, "transference_inequality", all && worst_ratio <= 1 + 1e-9,
      worst_ratio, 1 + 1e-9, "ratio");
  add(cs, "regular_rep_ratio_one", worst_reg <= 1e-12, worst_reg, 1e-12,
      "abs");
  // band-level equality for abelian groups under the regular action
  double worst_band = 0;
  for (const auto& name : {"z6", "z12"}) {
    FiniteGroupTable G = name[1] == '6' ? FiniteGroupTable::cyclic(6)
                                        : FiniteGroupTable::cyclic(12);
    GroupKernel k;
    for (Eigen::Index i = 0; i < G.order; ++i)
      k.values.push_back(cplx(g(rng), g(rng)));
    worst_band = std::max(worst_band, regular_band_defect(G, k));
  }
  add(cs, "abelian_band_equality", worst_band <= 1e-12, worst_band, 1e-12,
      "abs");
  // conditionally negative lengths
  FiniteGroupTable z4 = FiniteGroupTable::cyclic(4);
  auto good = cnd_length_check(z4, {0, 1, 2, 1}, {0.01, 0.1, 1.0});
  bool gpass = true;
  for (const auto& r : good) gpass = gpass && r.pass;
  add(cs, "cnd_word_length_psd", gpass, good[0].min_eig, -1e-10, "eig");
  auto bad = cnd_length_check(z4, {0, 1, 10, 1}, {0.01});
  add(cs, "cnd_non_length_detected", !bad[0].pass, bad[0].min_eig, -1e-10,
      "eig");
  // cross-module: a passing certificate induces a Markov Schur semigroup
  FiniteGroupTable z6 = FiniteGroupTable::cyclic(6);
  std::vector<double> psi = {0, 1, 2, 3, 2, 1};
  auto cert = cnd_length_check(z6, psi, {0.05, 0.5, 2.0});
  bool cpass = true;
  for (const auto& r : cert) cpass = cpass && r.pass;
  auto mc = markov_check(group_schur_semigroup(z6, psi),
                         TGrid::log_spaced(0.05, 2.0, 6), cfg.seed);
  add(cs, "cnd_markov_consistency", cpass == mc.all_pass() && cpass,
      cpass ? 1.0 : 0.0, 1.0, "bool");
  // multiplier with symbol 1 leaves the group BMO norm unchanged
  SemigroupSpec GS = group_schur_semigroup(z6, psi);
  CMatrix lam(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      lam(a, b) = cplx(g(rng), g(rng));
  lam = (lam + lam.adjoint().eval()) / 2.0;
  TGrid tg = TGrid::log_spaced(1e-2, 10, 10);
  double v1 = bmo_semigroup_norm(lam, GS, tg).value;
  double v2 = bmo_semigroup_norm(CMatrix(1.0 * lam), GS, tg).value;
  add(cs, "trivial_multiplier_invariance", v1 == v2 && std::isfinite(v1), v1,
      v2, "norm");
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = cfg.suite;
  rep.config_echo = cfg.to_json();
  if (cfg.suite == "metric-euclidean")
    suite_metric_euclidean(cfg, rep.checks);
  else if (cfg.suite == "metric-ou")
    suite_metric_ou(cfg, rep.checks);
  else if (cfg.suite == "metric-sinc")
    suite_metric_sinc(cfg, rep.checks);
  else if (cfg.suite == "bmo-matrix")
    suite_bmo_matrix(cfg, rep.checks);
  else if (cfg.suite == "czo-triangular")
    suite_czo_triangular(cfg, rep.checks);
  else if (cfg.suite == "czo-hormander")
    suite_czo_hormander(cfg, rep.checks);
  else if (cfg.suite == "qtorus-all")
    suite_qtorus(cfg, rep.checks);
  else if (cfg.suite == "transference-all")
    suite_transference(cfg, rep.checks);
  else if (cfg.suite == "lemma11-properties")
    lemma11_checks(rep.checks, cfg.seed, cfg.samples > 0 ? cfg.samples : 1000);
  else
    throw InvalidParams("unknown suite: " + cfg.suite);
  return rep;
}

}  // namespace ncbmo
