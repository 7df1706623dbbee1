#include "ncbmo/qtorus.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace ncbmo {

TwistParams TwistParams::from_upper(int n, const std::vector<double>& upper) {
  if (n < 1 || (int)upper.size() != n * (n - 1) / 2)
    throw InvalidParams("twist upper triangle size");
  TwistParams p;
  p.n = n;
  p.theta = Eigen::MatrixXd::Zero(n, n);
  size_t idx = 0;
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) {
      p.theta(r, c) = upper[idx];
      p.theta(c, r) = -upper[idx];
      ++idx;
    }
  return p;
}

bool TwistParams::same(const TwistParams& o) const {
  return n == o.n && theta == o.theta;
}

void TwistedSeries::set(const Multi& xi, cplx c) {
  if ((int)xi.size() != params.n) throw DimensionMismatch("frequency length");
  if (c == cplx(0, 0))
    coeffs.erase(xi);
  else
    coeffs[xi] = c;
}

cplx TwistedSeries::at(const Multi& xi) const {
  auto it = coeffs.find(xi);
  return it == coeffs.end() ? cplx(0, 0) : it->second;
}

long TwistedSeries::support_radius() const {
  long r = 0;
  for (const auto& [xi, c] : coeffs)
    for (long v : xi) r = std::max(r, std::abs(v));
  return r;
}

double TwistedSeries::coeff_l1() const {
  double s = 0;
  for (const auto& [xi, c] : coeffs) s += std::abs(c);
  return s;
}

double TwistedSeries::coeff_l2() const {
  double s = 0;
  for (const auto& [xi, c] : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

TwistedSeries TwistedSeries::unit(const TwistParams& p) {
  return lambda(p, Multi(p.n, 0));
}

TwistedSeries TwistedSeries::lambda(const TwistParams& p, const Multi& xi) {
  TwistedSeries f;
  f.params = p;
  f.set(xi, 1.0);
  return f;
}

TwistedSeries TwistedSeries::operator+(const TwistedSeries& o) const {
  if (!params.same(o.params)) throw ParamMismatch("twist params differ");
  TwistedSeries out = *this;
  for (const auto& [xi, c] : o.coeffs) out.set(xi, out.at(xi) + c);
  return out;
}

TwistedSeries TwistedSeries::operator-(const TwistedSeries& o) const {
  return *this + o * cplx(-1, 0);
}

TwistedSeries TwistedSeries::operator*(cplx s) const {
  TwistedSeries out;
  out.params = params;
  for (const auto& [xi, c] : coeffs) out.set(xi, s * c);
  return out;
}

cplx tw_phase(const TwistParams& p, const Multi& xi, const Multi& eta) {
  double s = 0;
  for (int k = 1; k < p.n; ++k)
    for (int j = 0; j < k; ++j) s += p.theta(k, j) * xi[k] * eta[j];
  return std::polar(1.0, 2.0 * M_PI * s);
}

TwistedSeries twisted_mul(const TwistedSeries& f, const TwistedSeries& g) {
  if (!f.params.same(g.params)) throw ParamMismatch("twist params differ");
  TwistedSeries out;
  out.params = f.params;
  for (const auto& [xi, cf] : f.coeffs)
    for (const auto& [eta, cg] : g.coeffs) {
      Multi z(xi.size());
      for (size_t i = 0; i < z.size(); ++i) z[i] = xi[i] + eta[i];
      out.set(z, out.at(z) + tw_phase(f.params, xi, eta) * cf * cg);
    }
  return out;
}

TwistedSeries tw_adjoint(const TwistedSeries& f) {
  TwistedSeries out;
  out.params = f.params;
  for (const auto& [xi, c] : f.coeffs) {
    Multi m(xi.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = -xi[i];
    // lambda(xi)* = conj(phase(xi,-xi)) lambda(-xi)
    out.set(m, out.at(m) + std::conj(c) * std::conj(tw_phase(f.params, xi, m)));
  }
  return out;
}

cplx tw_trace(const TwistedSeries& f) { return f.at(Multi(f.params.n, 0)); }

TwistedSeries qt_heat_apply(const TwistedSeries& f, double t) {
  if (t < 0) throw NegativeTime("heat semigroup needs t >= 0");
  TwistedSeries out;
  out.params = f.params;
  for (const auto& [xi, c] : f.coeffs) {
    double q = 0;
    for (long v : xi) q += (double)v * v;
    out.set(xi, c * std::exp(-t * q));
  }
  return out;
}

TwistedSeries qt_metric_apply(const TwistedSeries& f,
                              const MarkovMetricSpec& Q, int j, double t) {
  if (Q.variant != MarkovMetricSpec::Variant::QTorus ||
      Q.dim != f.params.n || Q.theta != f.params.theta)
    throw ParamMismatch("metric does not match the series twist");
  TwistedSeries out;
  out.params = f.params;
  double rho = std::sqrt(4.0 * j * t);
  for (const auto& [xi, c] : f.coeffs) {
    double q = 0;
    for (long v : xi) q += (double)v * v;
    out.set(xi, c * ball_avg_ft(Q.dim, rho, std::sqrt(q)));
  }
  return out;
}

double sigma_intertwine_check(const TwistedSeries& f, double t) {
  // path 1: sigma(S_t f), coefficient at (xi, xi)
  TwistedSeries p1 = qt_heat_apply(f, t);
  // path 2: (H_t (x) id) sigma(f): the H_t factor hits exp_xi
  std::map<Multi, cplx> p2;
  for (const auto& [xi, c] : f.coeffs) {
    Eigen::VectorXd v(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) v((Eigen::Index)i) = (double)xi[i];
    p2[xi] = c * std::exp(-t * v.squaredNorm());
  }
  double worst = 0;
  for (const auto& [xi, c] : p1.coeffs)
    worst = std::max(worst, std::abs(c - p2[xi]));
  for (const auto& [xi, c] : p2)
    worst = std::max(worst, std::abs(c - p1.at(xi)));
  return worst;
}

TwistedTensor TwistedTensor::mul(const TwistedTensor& o) const {
  if (!params.same(o.params)) throw ParamMismatch("twist params differ");
  TwistedTensor out;
  out.params = params;
  for (const auto& [ab, c1] : coeffs)
    for (const auto& [cd, c2] : o.coeffs) {
      Multi xf(ab.first.size()), xs(ab.second.size());
      for (size_t i = 0; i < xf.size(); ++i) {
        xf[i] = ab.first[i] + cd.first[i];
        xs[i] = ab.second[i] + cd.second[i];
      }
      // second leg multiplies in the opposite algebra
      cplx ph = tw_phase(params, ab.first, cd.first) *
                tw_phase(params, cd.second, ab.second);
      auto key = std::make_pair(xf, xs);
      out.coeffs[key] += ph * c1 * c2;
    }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
    it = it->second == cplx(0, 0) ? out.coeffs.erase(it) : std::next(it);
  return out;
}

TwistedSeries TwistedTensor::tau_id() const {
  TwistedSeries out;
  out.params = params;
  Multi zero(params.n, 0);
  for (const auto& [ab, c] : coeffs)
    if (ab.first == zero) out.set(ab.second, out.at(ab.second) + c);
  return out;
}

TwistedTensor pi_theta(const TwistedSeries& phi) {
  TwistedTensor out;
  out.params = phi.params;
  for (const auto& [xi, c] : phi.coeffs) {
    Multi m(xi.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = -xi[i];
    // lambda(xi) (x) lambda(xi)*
    out.coeffs[{xi, m}] = c * std::conj(tw_phase(phi.params, xi, m));
  }
  return out;
}

cplx pi_theta_expectation(const TwistedSeries& phi) {
  TwistedSeries red = pi_theta(phi).tau_id();
  Multi zero(phi.params.n, 0);
  for (const auto& [xi, c] : red.coeffs)
    if (xi != zero && std::abs(c) > 1e-15)
      throw PositivityViolation("expectation is not scalar");
  return red.at(zero);
}

// ---- GNS box machinery ----

static long box_dims(int n, long L) {
  long d = 1;
  for (int i = 0; i < n; ++i) d *= 2 * L + 1;
  return d;
}

static long box_index(const Multi& eta, long L) {
  long idx = 0;
  for (long v : eta) idx = idx * (2 * L + 1) + (v + L);
  return idx;
}

// support list with phase precomputation: phase(xi, eta) = e^{2 pi i w.eta}
struct SuppTerm {
  Multi xi;
  cplx c;
  Eigen::VectorXd w;
};

static std::vector<SuppTerm> supp_terms(const TwistedSeries& f) {
  std::vector<SuppTerm> out;
  int n = f.params.n;
  for (const auto& [xi, c] : f.coeffs) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) w(j) += f.params.theta(k, j) * xi[k];
    out.push_back({xi, c, std::move(w)});
  }
  return out;
}

static void gns_apply(const std::vector<SuppTerm>& terms, int n, long L,
                      const CVector& x, CVector& y) {
  y.setZero();
  Multi eta(n, -L);
  long d = box_dims(n, L);
  for (long src = 0; src < d; ++src) {
    if (x(src) != cplx(0, 0)) {
      for (const auto& tm : terms) {
        long dst = 0;
        bool inside = true;
        double dot = 0;
        for (int i = 0; i < n; ++i) {
          long v = eta[i] + tm.xi[i];
          if (v < -L || v > L) {
            inside = false;
            break;
          }
          dst = dst * (2 * L + 1) + (v + L);
          dot += tm.w(i) * eta[i];
        }
        if (inside) y(dst) += tm.c * std::polar(1.0, 2 * M_PI * dot) * x(src);
      }
    }
    int k = n - 1;
    while (k >= 0 && ++eta[k] > L) eta[k--] = -L;
  }
}

CMatrix gns_matrix(const TwistedSeries& f, const GnsBox& box) {
  if (box.L < f.support_radius() + 1)
    throw BoxTooSmall("GNS box must exceed the support radius");
  int n = f.params.n;
  long d = box_dims(n, box.L);
  if (d > 4000) throw BoxTooSmall("dense GNS matrix capped at 4000 dims");
  auto terms = supp_terms(f);
  CMatrix M = CMatrix::Zero(d, d);
  CVector x = CVector::Zero(d), y(d);
  for (long col = 0; col < d; ++col) {
    x(col) = 1.0;
    gns_apply(terms, n, box.L, x, y);
    M.col(col) = y;
    x(col) = 0.0;
  }
  return M;
}

// Lanczos extremal Ritz value of a Hermitian operator given by op(x, y)
template <typename Op>
static std::pair<double, double> lanczos_extremes(Op&& op, long d, int iters) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> g;
  CVector v = CVector::Zero(d), vp = CVector::Zero(d), w(d);
  for (long i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  v /= v.norm();
  std::vector<double> alpha, beta;
  for (int k = 0; k < iters; ++k) {
    op(v, w);
    if (k > 0) w -= beta.back() * vp;
    double a = (v.adjoint() * w).real()(0, 0);
    w -= a * v;
    alpha.push_back(a);
    double b = w.norm();
    if (b < 1e-13) break;
    beta.push_back(b);
    vp = v;
    v = w / b;
  }
  Eigen::Index m = (Eigen::Index)alpha.size();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0), es.eigenvalues()(m - 1)};
}

double gns_opnorm(const TwistedSeries& f, const GnsBox& box) {
  if (box.L < f.support_radius() + 1)
    throw BoxTooSmall("GNS box must exceed the support radius");
  int n = f.params.n;
  long d = box_dims(n, box.L);
  if (d <= 600) {
    Eigen::JacobiSVD<CMatrix> svd(gns_matrix(f, box));
    return svd.singularValues()(0);
  }
  auto tf = supp_terms(f);
  auto ta = supp_terms(tw_adjoint(f));
  CVector mid(d);
  auto op = [&](const CVector& x, CVector& y) {
    gns_apply(tf, n, box.L, x, mid);   // A x
    gns_apply(ta, n, box.L, mid, y);   // A* A x
  };
  int iters = (int)std::min<long>(d, 400);
  double top = lanczos_extremes(op, d, iters).second;
  return std::sqrt(std::max(top, 0.0));
}

double gns_min_eig(const TwistedSeries& f, const GnsBox& box) {
  // requires f = f*
  TwistedSeries diff = f - tw_adjoint(f);
  if (diff.coeff_l1() > 1e-10 * (1 + f.coeff_l1()))
    throw NotHermitian("gns_min_eig needs a selfadjoint series");
  int n = f.params.n;
  long d = box_dims(n, box.L);
  if (d <= 2000) {
    CMatrix M = gns_matrix(f, box);
    return herm_eigs(CMatrix((M + M.adjoint()) / 2.0))(0);
  }
  auto tf = supp_terms(f);
  auto op = [&](const CVector& x, CVector& y) { gns_apply(tf, n, box.L, x, y); };
  int iters = (int)std::min<long>(d, 400);
  return lanczos_extremes(op, d, iters).first;
}

BmoReport qt_bmo_norm(const TwistedSeries& f, const MarkovMetricSpec& Q,
                      const TGrid& grid, const GnsBox& box) {
  if (Q.variant != MarkovMetricSpec::Variant::QTorus ||
      Q.dim != f.params.n || Q.theta != f.params.theta)
    throw ParamMismatch("metric does not match the series twist");
  TwistedSeries ff = twisted_mul(tw_adjoint(f), f);
  auto bracket_norm = [&](double t, int j, const GnsBox& b) {
    TwistedSeries rf = qt_metric_apply(f, Q, j, t);
    TwistedSeries mf = qt_metric_apply(f, Q, 1, t);
    TwistedSeries dd = rf - mf;
    TwistedSeries g = qt_metric_apply(ff, Q, j, t) -
                      twisted_mul(tw_adjoint(rf), rf) +
                      twisted_mul(tw_adjoint(dd), dd);
    double gap = gns_min_eig(g, b);
    if (gap < -1e-8)
      throw PositivityViolation("qt bracket gap " + std::to_string(gap));
    return std::sqrt(gns_opnorm(g, b)) / std::sqrt(Q.gamma2(j));
  };
  std::vector<BmoSample> table;
  for (double t : grid.values)
    for (int j = 1; j <= Q.J(t); ++j)
      table.push_back({t, j, bracket_norm(t, j, box)});
  BmoReport rep;
  rep.side = Side::Column;
  rep.table = std::move(table);
  for (const auto& s : rep.table)
    if (s.value >= rep.value) {
      rep.value = s.value;
      rep.argmax_t = s.t;
      rep.argmax_j = s.j;
    }
  rep.boundary = rep.argmax_t == grid.values.front() ||
                 rep.argmax_t == grid.values.back();
  // refinement stability at the arg-max: L vs 2L within 2%
  double v2 = bracket_norm(rep.argmax_t, rep.argmax_j, GnsBox{2 * box.L});
  bool stable = std::abs(v2 - rep.value) <= 0.02 * std::max(rep.value, 1e-12);
  rep.mt_policy = stable ? "R1;L-stable" : "R1;L-unstable";
  return rep;
}

cplx series_eval(const TwistedSeries& f, const Eigen::VectorXd& x) {
  if (f.params.theta.cwiseAbs().maxCoeff() != 0.0)
    throw MethodUnsupported("pointwise evaluation needs theta = 0");
  if (x.size() != f.params.n) throw DimensionMismatch("series_eval");
  cplx acc = 0;
  for (const auto& [xi, c] : f.coeffs) {
    double dot = 0;
    for (int i = 0; i < f.params.n; ++i) dot += xi[i] * x(i);
    acc += c * std::polar(1.0, 2 * M_PI * dot);
  }
  return acc;
}

double harper_oracle(int p, int q, int phase_grid) {
  if (q < 1 || phase_grid < 1) throw InvalidParams("harper_oracle");
  CMatrix C = CMatrix::Zero(q, q), S = CMatrix::Zero(q, q);
  for (int k = 0; k < q; ++k) {
    C(k, k) = std::polar(1.0, 2 * M_PI * p * k / (double)q);
    S((k + 1) % q, k) = 1.0;
  }
  double best = 0;
  for (int ia = 0; ia < phase_grid; ++ia)
    for (int ib = 0; ib < phase_grid; ++ib) {
      cplx a = std::polar(1.0, 2 * M_PI * ia / phase_grid);
      cplx b = std::polar(1.0, 2 * M_PI * ib / phase_grid);
      CMatrix H = a * C + std::conj(a) * C.adjoint() + b * S +
                  std::conj(b) * S.adjoint();
      best = std::max(best, op_norm(H));
    }
  return best;
}

std::string TwistedSeries::to_json() const {
  nlohmann::json j;
  j["n"] = params.n;
  std::vector<double> up;
  for (int r = 0; r < params.n; ++r)
    for (int c = r + 1; c < params.n; ++c) up.push_back(params.theta(r, c));
  j["theta_upper"] = up;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [xi, c] : coeffs)
    arr.push_back({{"xi", xi}, {"re", c.real()}, {"im", c.imag()}});
  j["coeffs"] = std::move(arr);
  return j.dump();
}

TwistedSeries TwistedSeries::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  TwistedSeries f;
  f.params = TwistParams::from_upper(
      n, j.at("theta_upper").get<std::vector<double>>());
  for (const auto& row : j.at("coeffs")) {
    Multi xi = row.at("xi").get<Multi>();
    f.set(xi, f.at(xi) + cplx(row.at("re").get<double>(),
                              row.at("im").get<double>()));
  }
  return f;
}

}  // namespace ncbmo
