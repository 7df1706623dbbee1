#include "ncbmo/metric.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace ncbmo {

static const double kTwoEOverSqrtPi = 2.0 * M_E / std::sqrt(M_PI);

double ball_avg_ft(int dim, double rho, double q) {
  double u = 2.0 * M_PI * rho * q;
  if (std::abs(u) < 1e-8) {
    // series heads; enough accuracy for |u| < 1e-8
    if (dim == 1) return 1.0 - u * u / 6.0;
    if (dim == 2) return 1.0 - u * u / 8.0;
    if (dim == 3) return 1.0 - u * u / 10.0;
  }
  switch (dim) {
    case 1:
      return std::sin(u) / u;
    case 2:
      return 2.0 * std::cyl_bessel_j(1, u) / u;
    case 3:
      return 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
  }
  throw InvalidParams("ball_avg_ft supports dim 1..3");
}

int MarkovMetricSpec::J(double) const {
  int n = (variant == Variant::MatrixSinc) ? 1 : dim;
  int j = 1;
  while (std::exp(-(double)j) * std::pow((double)j, n) > 1e-14) ++j;
  return j;
}

double MarkovMetricSpec::sigma2(int j) const {
  int n = (variant == Variant::MatrixSinc) ? 1 : dim;
  return kTwoEOverSqrtPi * std::pow((double)j, n / 2.0) * std::exp(-(double)j);
}

double MarkovMetricSpec::gamma2(int j) const {
  int n = (variant == Variant::MatrixSinc) ? 1 : dim;
  return std::pow((double)j, n / 2.0);
}

double MarkovMetricSpec::r_coeff(int j, double t, double dist) const {
  int n = (variant == Variant::MatrixSinc) ? 1 : dim;
  return ball_avg_ft(n, std::sqrt(4.0 * j * t), dist);
}

CpuMap MarkovMetricSpec::matrix_cpu(int j, double t) const {
  if (variant != Variant::MatrixSinc)
    throw MethodUnsupported("matrix_cpu requires the sinc variant");
  CMatrix sym(mat_n, mat_n);
  for (Eigen::Index m = 0; m < mat_n; ++m)
    for (Eigen::Index k = 0; k < mat_n; ++k)
      sym(m, k) = r_coeff(j, t, std::abs((double)(m - k)));
  return CpuMap::schur(sym);
}

MarkovMetricSpec build_euclidean_heat(int dim) {
  if (dim < 1 || dim > 3) throw InvalidParams("euclidean_heat dim 1..3");
  MarkovMetricSpec q;
  q.variant = MarkovMetricSpec::Variant::EuclideanHeat;
  q.dim = dim;
  return q;
}

MarkovMetricSpec build_matrix_sinc(Eigen::Index n) {
  if (n < 1) throw InvalidParams("matrix_sinc size");
  MarkovMetricSpec q;
  q.variant = MarkovMetricSpec::Variant::MatrixSinc;
  q.mat_n = n;
  q.dim = 1;
  return q;
}

MarkovMetricSpec build_ou_corona(double lo, double hi, Eigen::Index count) {
  MarkovMetricSpec q;
  q.variant = MarkovMetricSpec::Variant::OuCorona;
  q.dim = 1;
  q.ou = SemigroupSpec::ou_grid(lo, hi, count);
  q.c_ou = M_E / std::sqrt(M_PI) + 0.05;
  if (hi - lo < 4) throw GridTooNarrow("ou_corona grid too narrow");
  return q;
}

MarkovMetricSpec build_qtorus_metric(Eigen::MatrixXd theta) {
  if (theta.rows() != theta.cols() ||
      (theta + theta.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw InvalidParams("theta must be antisymmetric");
  MarkovMetricSpec q;
  q.variant = MarkovMetricSpec::Variant::QTorus;
  q.dim = (int)theta.rows();
  q.theta = std::move(theta);
  return q;
}

SemigroupSpec sinc_heat_semigroup(Eigen::Index n) {
  Eigen::MatrixXd L(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      L(m, k) = 4.0 * M_PI * M_PI * (double)((m - k) * (m - k));
  return SemigroupSpec::schur_lengths(std::move(L));
}

double kq_closed_form_1d() {
  return std::sqrt(kTwoEOverSqrtPi * M_E / ((M_E - 1.0) * (M_E - 1.0)));
}

// ---- OU corona geometry ----

OuCorona::OuCorona(double x_, double t_) : t(t_), x(std::abs(x_)) {
  if (!(t > 0) || 2 * t >= 1.0 / 18.0)
    throw SampleOutOfRange("OU corona region is 0 < 2t < 1/18");
  v = std::sqrt(std::exp(2 * t) - 1.0);
  double r = std::exp(t) * x / v;
  j0 = std::max(1, (int)std::ceil(r * r - 1e-12));
}

std::pair<double, double> OuCorona::sigma_ball(int j) const {
  double c = std::exp(t) * x;
  return {c - std::sqrt((double)j) * v, c + std::sqrt((double)j) * v};
}
std::pair<double, double> OuCorona::corona_minus(int j) const {
  double c = std::exp(t) * x;
  return {c - std::sqrt((double)j) * v, c - std::sqrt((double)(j - 1)) * v};
}
std::pair<double, double> OuCorona::corona_plus(int j) const {
  double c = std::exp(t) * x;
  return {c + std::sqrt((double)(j - 1)) * v, c + std::sqrt((double)j) * v};
}
double OuCorona::gamma2_split(int j) const {
  double u = v * x + std::exp(t) * std::sqrt((double)(j - 1));
  return std::exp(u * u / 2.0);  // may overflow; partial sums go via logs
}
double OuCorona::gamma2_ball(int j) const {
  return std::exp(j / 4.0) / std::sqrt((double)j);
}

double mu_interval(double a, double b, double h) {
  if (!(b > a)) return 0.0;
  int panels = std::max(4, (int)std::ceil((b - a) / h));
  double s = 0.5 * (std::exp(-a * a) + std::exp(-b * b));
  double step = (b - a) / panels;
  for (int i = 1; i < panels; ++i) {
    double y = a + step * i;
    s += std::exp(-y * y);
  }
  return s * step;
}

std::array<double, 3> ou_partial_sums(double x, double t, double h) {
  OuCorona C(x, t);
  double c_ou = M_E / std::sqrt(M_PI) + 0.05;
  double logc = std::log(c_ou / C.v) + C.x * C.x;
  std::array<double, 3> out{0, 0, 0};
  for (int j = 1; j < C.j0; ++j) {
    // log(sigma^2 gamma^2) assembled in log space: gamma^2 alone overflows
    double u = C.v * C.x + std::exp(t) * std::sqrt((double)(j - 1));
    double lg = u * u / 2.0;
    auto dm = C.corona_minus(j);
    auto dp = C.corona_plus(j);
    double lm = std::log(std::max(mu_interval(dm.first, dm.second, h), 1e-300));
    double lp = std::log(std::max(mu_interval(dp.first, dp.second, h), 1e-300));
    double em = logc - j + lm + lg;
    double ep = logc - j + lp + lg;
    if (em > 700 || ep > 700) throw TailUnbounded("corona term overflow");
    out[0] += std::exp(em);
    out[1] += std::exp(ep);
  }
  for (int j = C.j0;; ++j) {
    auto b = C.sigma_ball(j);
    double lmu = std::log(std::max(mu_interval(b.first, b.second, h), 1e-300));
    double e = logc - j + lmu + j / 4.0 - 0.5 * std::log((double)j);
    if (e > 700) throw TailUnbounded("ball term overflow");
    double term = std::exp(e);
    out[2] += term;
    if ((term < 1e-18 * (1 + out[2]) && j > C.j0 + 4) || j > C.j0 + 400) break;
  }
  return out;
}

double kq_constant(const MarkovMetricSpec& Q, const TGrid& grid) {
  using V = MarkovMetricSpec::Variant;
  if (Q.variant == V::OuCorona) {
    double h = Q.ou.nodes(1) - Q.ou.nodes(0);
    double worst = 0;
    for (double t : grid.values) {
      if (!(2 * t < 1.0 / 18.0)) continue;
      for (Eigen::Index i = 0; i < Q.ou.n; i += std::max<Eigen::Index>(1, Q.ou.n / 40)) {
        auto s = ou_partial_sums(Q.ou.nodes(i), t, h);
        worst = std::max(worst, s[0] + s[1] + s[2]);
      }
    }
    if (!std::isfinite(worst)) throw TailUnbounded("OU kq diverged");
    return std::sqrt(worst);
  }
  // scalar variants: t-independent series
  int J = Q.J(grid.values.front());
  int n = (Q.variant == V::MatrixSinc) ? 1 : Q.dim;
  double head = 0;
  for (int j = 1; j <= J; ++j) head += Q.sigma2(j) * Q.gamma2(j);
  double r = std::exp(-1.0) * std::pow(1.0 + 1.0 / (J + 1), n);
  if (!(r < 1)) throw TailUnbounded("tail ratio >= 1");
  double tail = Q.sigma2(J + 1) * Q.gamma2(J + 1) / (1 - r);
  if (tail > 1e-10 * head) throw TailUnbounded("tail bound exceeds budget");
  return std::sqrt(head + tail);
}

static MajorizationReport symbol_psd(const MarkovMetricSpec& Q,
                                     const SemigroupSpec& S, double t) {
  using V = MarkovMetricSpec::Variant;
  int J = Q.J(t);
  CMatrix D;
  if (Q.variant == V::MatrixSinc) {
    if (S.kind != SemigroupSpec::Kind::SchurLength || S.n != Q.mat_n)
      throw CarrierMismatch("sinc certificate needs a Schur semigroup on M_n");
    D.resize(Q.mat_n, Q.mat_n);
    for (Eigen::Index m = 0; m < Q.mat_n; ++m)
      for (Eigen::Index k = 0; k < Q.mat_n; ++k) {
        double acc = 0;
        for (int j = 1; j <= J; ++j)
          acc += Q.sigma2(j) * Q.r_coeff(j, t, std::abs((double)(m - k)));
        D(m, k) = acc - std::exp(-t * S.lengths(m, k));
      }
  } else if (Q.variant == V::QTorus || Q.variant == V::EuclideanHeat) {
    // lattice box certificate on Z^dim
    int L = 4;
    std::vector<std::vector<long>> pts;
    std::vector<long> p(Q.dim, -L);
    for (;;) {
      pts.push_back(p);
      int k = 0;
      while (k < Q.dim && ++p[k] > L) p[k++] = -L;
      if (k == Q.dim) break;
    }
    Eigen::Index m = (Eigen::Index)pts.size();
    D.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) {
        double d2 = 0;
        for (int k = 0; k < Q.dim; ++k) {
          double d = (double)(pts[a][k] - pts[b][k]);
          d2 += d * d;
        }
        double acc = 0;
        for (int j = 1; j <= J; ++j)
          acc += Q.sigma2(j) * Q.r_coeff(j, t, std::sqrt(d2));
        D(a, b) = acc - std::exp(-4.0 * M_PI * M_PI * t * d2);
      }
  } else {
    throw MethodUnsupported("schur_symbol_psd for this variant");
  }
  double gap = herm_eigs(D)(0);
  return {gap >= -1e-8, gap, "schur_symbol_psd"};
}

// commutative <xi,xi>_Phi on grid functions: apply is the cpu map on vectors
template <typename Apply>
static CVector comm_inner(const std::vector<std::pair<CVector, CVector>>& xi,
                          Apply&& apply) {
  Eigen::Index m = xi[0].first.size();
  CVector out = CVector::Zero(m);
  for (const auto& [aj, bj] : xi)
    for (const auto& [ak, bk] : xi) {
      CVector mid = apply(CVector(aj.conjugate().cwiseProduct(ak)));
      out += bj.conjugate().cwiseProduct(mid).cwiseProduct(bk);
    }
  return out;
}

static MajorizationReport ou_sampled_families(const MarkovMetricSpec& Q,
                                              double t,
                                              unsigned long long seed) {
  const SemigroupSpec& G = Q.ou;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::Index m = G.n;
  auto interior = ou_interior_nodes(G, t);
  double worst = 1e300;
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::pair<CVector, CVector>> xi;
    for (int k = 0; k < 2; ++k) {
      CVector a(m), b(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        a(i) = cplx(g(rng), g(rng));
        b(i) = cplx(g(rng), g(rng));
      }
      xi.push_back({a, b});
    }
    CVector lhs = comm_inner(xi, [&](const CVector& f) {
      return semigroup_apply(G, t, f);
    });
    // rhs = sum over corona maps of sigma^2(x) <xi,xi>_{R}(x); the measure
    // normalization cancels, so each map contributes
    // c_ou (1/v) e^{x^2-j} sum_{nodes in set} w_mu * (...)
    // evaluated directly from mu-weighted partial sums over the set.
    RVector wmu(m);
    for (Eigen::Index i = 0; i < m; ++i)
      wmu(i) = G.weights(i) * std::exp(-G.nodes(i) * G.nodes(i));
    // pair sums: s_{jk}(y) = conj(a_j a_k-ish) handled via comm structure:
    // precompute F(y) = sum_{j,k} conj(b_j(x)) ... depends on x through b at x
    // only; so precompute per (j,k) the integrand vector.
    Eigen::Index stride = std::max<Eigen::Index>(1, (Eigen::Index)interior.size() / 25);
    for (size_t ii = 0; ii < interior.size(); ii += (size_t)stride) {
      Eigen::Index inode = interior[ii];
      double x = G.nodes(inode);
      if (std::abs(x) > 3.0) continue;
      OuCorona C(x, t);
      double sgn = x < 0 ? -1.0 : 1.0;
      // integrand h(y) = |sum_j a_j(y) b_j(x)|^2 >= 0 pointwise
      CVector prof = CVector::Zero(m);
      for (const auto& [a, b] : xi) prof += b(inode) * a;
      // prefix sums of w_mu * h along the reflected coordinate sgn * y
      std::vector<std::pair<double, double>> pts(m);
      for (Eigen::Index y = 0; y < m; ++y)
        pts[y] = {sgn * G.nodes(y), wmu(y) * std::norm(prof(y))};
      std::sort(pts.begin(), pts.end());
      std::vector<double> coord(m), pre(m + 1, 0.0);
      for (Eigen::Index y = 0; y < m; ++y) {
        coord[y] = pts[y].first;
        pre[y + 1] = pre[y] + pts[y].second;
      }
      auto set_sum = [&](double lo, double hi) {
        auto a = std::lower_bound(coord.begin(), coord.end(), lo) - coord.begin();
        auto b = std::upper_bound(coord.begin(), coord.end(), hi) - coord.begin();
        return b > a ? pre[b] - pre[a] : 0.0;
      };
      double rhs = 0;
      double base = Q.c_ou * std::exp(x * x) / C.v;
      for (int j = 1; j < C.j0; ++j) {
        auto dm = C.corona_minus(j), dp = C.corona_plus(j);
        rhs += base * std::exp(-(double)j) *
               (set_sum(dm.first, dm.second) + set_sum(dp.first, dp.second));
      }
      for (int j = C.j0; j <= C.j0 + Q.J(t); ++j) {
        auto bl = C.sigma_ball(j);
        rhs += base * std::exp(-(double)j) * set_sum(bl.first, bl.second);
      }
      worst = std::min(worst, rhs - lhs(inode).real());
    }
  }
  return {worst >= -1e-8, worst, "sampled_families"};
}

static MajorizationReport sinc_sampled_families(const MarkovMetricSpec& Q,
                                                const SemigroupSpec& S,
                                                double t,
                                                unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::Index n = Q.mat_n;
  double worst = 1e300;
  for (int trial = 0; trial < 4; ++trial) {
    TensorElement xi;
    for (int k = 0; k < 2; ++k) {
      CMatrix a(n, n), b(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          a(i, j) = cplx(g(rng), g(rng));
          b(i, j) = cplx(g(rng), g(rng));
        }
      xi.terms.push_back({a, b});
    }
    CMatrix lhs = module_inner_product(xi, semigroup_cpu(S, t));
    CMatrix rhs = CMatrix::Zero(n, n);
    for (int j = 1; j <= Q.J(t); ++j)
      rhs += Q.sigma2(j) * module_inner_product(xi, Q.matrix_cpu(j, t));
    worst = std::min(worst, psd_order_gap(lhs, rhs));
  }
  return {worst >= -1e-8, worst, "sampled_families"};
}

MajorizationReport majorization_check(const MarkovMetricSpec& Q,
                                      const SemigroupSpec& S, double t,
                                      MajorizationMethod method,
                                      unsigned long long seed) {
  using V = MarkovMetricSpec::Variant;
  switch (method) {
    case MajorizationMethod::SchurSymbolPsd:
      return symbol_psd(Q, S, t);
    case MajorizationMethod::PointwiseKernel: {
      // delegate: deterministic sample cloud
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> ux(-3, 3);
      std::vector<DominationSample> s;
      for (int i = 0; i < 200; ++i) s.push_back({ux(rng), ux(rng), t});
      auto rep = kernel_domination_check(Q, s);
      return {rep.pass, rep.c_variant - rep.worst_ratio, "pointwise_kernel"};
    }
    case MajorizationMethod::SampledFamilies:
      if (Q.variant == V::OuCorona) return ou_sampled_families(Q, t, seed);
      if (Q.variant == V::MatrixSinc)
        return sinc_sampled_families(Q, S, t, seed);
      throw MethodUnsupported("sampled_families for this variant");
  }
  throw MethodUnsupported("unknown method");
}

DominationReport kernel_domination_check(
    const MarkovMetricSpec& Q, const std::vector<DominationSample>& samples) {
  using V = MarkovMetricSpec::Variant;
  double worst = 0;
  if (Q.variant == V::EuclideanHeat) {
    if (Q.dim != 1) throw MethodUnsupported("domination check is 1-d");
    for (const auto& s : samples) {
      if (!(s.t > 0)) throw SampleOutOfRange("t must be positive");
      double lhs = std::exp(-(s.x - s.y) * (s.x - s.y) / (4 * s.t)) /
                   std::sqrt(4 * M_PI * s.t);
      double rhs = 0;
      int J = Q.J(s.t);
      // include enough terms to cover the sample's corona level
      int jy = (int)std::floor((s.x - s.y) * (s.x - s.y) / (4 * s.t)) + 1;
      for (int j = 1; j <= std::max(J, jy + 60); ++j) {
        double rho = std::sqrt(4.0 * j * s.t);
        if (std::abs(s.x - s.y) < rho) rhs += Q.sigma2(j) / (2 * rho);
      }
      if (lhs > 1e-300) worst = std::max(worst, lhs / rhs);
    }
    return {worst <= 1.0 + 1e-12, worst, 1.0};
  }
  if (Q.variant == V::OuCorona) {
    double c = M_E / std::sqrt(M_PI) + 0.05;
    for (const auto& s : samples) {
      OuCorona C(s.x, s.t);
      double sgn = s.x < 0 ? -1.0 : 1.0;
      double ya = sgn * s.y;  // reflect so the corona geometry sees |x|
      double lhs = std::exp(s.t) / (std::sqrt(M_PI) * C.v) *
                   std::exp(s.x * s.x - std::pow(std::exp(s.t) * C.x - ya, 2) /
                                            (C.v * C.v));
      double base = std::exp(s.x * s.x) / C.v;
      double rhs = 0;
      int jy =
          (int)std::floor(std::pow(std::exp(s.t) * C.x - ya, 2) / (C.v * C.v)) +
          1;
      for (int j = 1; j < C.j0; ++j) {
        auto dm = C.corona_minus(j), dp = C.corona_plus(j);
        if ((ya >= dm.first && ya <= dm.second) ||
            (ya >= dp.first && ya <= dp.second))
          rhs += base * std::exp(-(double)j);
      }
      for (int j = C.j0; j <= std::max(C.j0, jy) + 80; ++j) {
        auto b = C.sigma_ball(j);
        if (ya >= b.first && ya <= b.second) rhs += base * std::exp(-(double)j);
      }
      if (lhs > 1e-300) worst = std::max(worst, lhs / rhs);
    }
    return {worst <= c, worst, c};
  }
  throw MethodUnsupported("kernel domination for this variant");
}

std::string MarkovMetricSpec::to_json() const {
  nlohmann::json j;
  switch (variant) {
    case Variant::EuclideanHeat:
      j["variant"] = "euclidean_heat";
      j["dim"] = dim;
      break;
    case Variant::MatrixSinc:
      j["variant"] = "matrix_sinc";
      j["n"] = mat_n;
      break;
    case Variant::OuCorona:
      j["variant"] = "ou_corona";
      j["lo"] = ou.nodes(0);
      j["hi"] = ou.nodes(ou.n - 1);
      j["count"] = ou.n;
      j["c_ou"] = c_ou;
      break;
    case Variant::QTorus: {
      j["variant"] = "qtorus";
      j["dim"] = dim;
      std::vector<double> up;
      for (int r = 0; r < dim; ++r)
        for (int c = r + 1; c < dim; ++c) up.push_back(theta(r, c));
      j["theta_upper"] = up;
      break;
    }
  }
  j["truncation"] = {{"rule", "exp(-J) J^n <= 1e-14"}, {"J", J(1.0)}};
  return j.dump();
}

}  // namespace ncbmo
