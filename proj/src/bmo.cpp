#include "ncbmo/bmo.hpp"

#include <cmath>

#include "json.hpp"

namespace ncbmo {

static const char* side_name(Side s) {
  switch (s) {
    case Side::Column: return "column";
    case Side::Row: return "row";
    case Side::Max: return "max";
  }
  return "?";
}

std::string BmoReport::to_json(bool terse) const {
  nlohmann::json j;
  j["value"] = value;
  j["side"] = side_name(side);
  j["argmax_t"] = argmax_t;
  if (argmax_j >= 0) j["argmax_j"] = argmax_j;
  j["boundary"] = boundary;
  j["mt_policy"] = mt_policy;
  if (!terse) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : table) {
      nlohmann::json r{{"t", s.t}, {"value", s.value}};
      if (s.j >= 0) r["j"] = s.j;
      rows.push_back(std::move(r));
    }
    j["table"] = std::move(rows);
  }
  return j.dump();
}

// reduce the (t, j, value) table to a report
static BmoReport reduce(std::vector<BmoSample> table, const TGrid& grid,
                        Side side) {
  BmoReport rep;
  rep.side = side;
  rep.table = std::move(table);
  for (const auto& s : rep.table)
    if (s.value >= rep.value) {
      rep.value = s.value;
      rep.argmax_t = s.t;
      rep.argmax_j = s.j;
    }
  rep.boundary = rep.argmax_t == grid.values.front() ||
                 rep.argmax_t == grid.values.back();
  return rep;
}

static double psd_bracket_norm(const CMatrix& bracket) {
  RVector ev = herm_eigs((bracket + bracket.adjoint().eval()) / 2.0);
  if (ev(0) < -1e-8)
    throw PositivityViolation("bracket min eigenvalue " +
                              std::to_string(ev(0)));
  return std::sqrt(std::max(ev(ev.size() - 1), 0.0));
}

static double psd_bracket_norm(const CVector& bracket) {
  double lo = 0, hi = 0;
  for (Eigen::Index i = 0; i < bracket.size(); ++i) {
    lo = std::min(lo, bracket(i).real());
    hi = std::max(hi, bracket(i).real());
  }
  if (lo < -1e-8)
    throw PositivityViolation("bracket min value " + std::to_string(lo));
  return std::sqrt(std::max(hi, 0.0));
}

BmoReport bmo_semigroup_norm(const CMatrix& f, const SemigroupSpec& S,
                             const TGrid& grid, Side side) {
  if (side == Side::Row) {
    BmoReport rep = bmo_semigroup_norm(CMatrix(f.adjoint()), S, grid,
                                       Side::Column);
    rep.side = Side::Row;
    return rep;
  }
  if (side == Side::Max) {
    BmoReport c = bmo_semigroup_norm(f, S, grid, Side::Column);
    BmoReport r = bmo_semigroup_norm(f, S, grid, Side::Row);
    BmoReport rep = c.value >= r.value ? c : r;
    rep.side = Side::Max;
    return rep;
  }
  if (S.kind == SemigroupSpec::Kind::CyclicMultiplier ||
      S.kind == SemigroupSpec::Kind::OuGrid)
    throw CarrierMismatch("vector carrier expected for this semigroup");
  std::vector<BmoSample> table;
  CMatrix ff = f.adjoint() * f;
  for (double t : grid.values) {
    CMatrix stf = semigroup_apply(S, t, f);
    CMatrix bracket = semigroup_apply(S, t, ff) - stf.adjoint() * stf;
    table.push_back({t, -1, psd_bracket_norm(bracket)});
  }
  return reduce(std::move(table), grid, side);
}

BmoReport bmo_semigroup_norm(const CVector& f, const SemigroupSpec& S,
                             const TGrid& grid, Side side) {
  if (side == Side::Row || side == Side::Max) {
    // commutative carrier: row equals column
    BmoReport rep = bmo_semigroup_norm(f, S, grid, Side::Column);
    rep.side = side;
    return rep;
  }
  if (S.kind == SemigroupSpec::Kind::SchurLength)
    throw CarrierMismatch("matrix carrier expected for a Schur semigroup");
  std::vector<BmoSample> table;
  CVector ff = f.conjugate().cwiseProduct(f);
  std::vector<Eigen::Index> idx;
  if (S.kind == SemigroupSpec::Kind::CyclicMultiplier)
    for (Eigen::Index i = 0; i < S.n; ++i) idx.push_back(i);
  for (double t : grid.values) {
    CVector stf = semigroup_apply(S, t, f);
    CVector bracket =
        semigroup_apply(S, t, ff) - stf.conjugate().cwiseProduct(stf);
    if (S.kind == SemigroupSpec::Kind::OuGrid) {
      auto interior = ou_interior_nodes(S, t);
      CVector sub(interior.size());
      for (size_t k = 0; k < interior.size(); ++k) sub(k) = bracket(interior[k]);
      bracket = std::move(sub);
      if (bracket.size() == 0) continue;
    }
    table.push_back({t, -1, psd_bracket_norm(bracket)});
  }
  if (table.empty()) throw GridTooNarrow("no admissible t in the grid");
  return reduce(std::move(table), grid, side);
}

BmoReport bmo_metric_norm(const CMatrix& f, const MarkovMetricSpec& Q,
                          const TGrid& grid, bool with_mt) {
  if (Q.variant != MarkovMetricSpec::Variant::MatrixSinc)
    throw MetricCarrierMismatch("matrix carrier is for the sinc metric");
  if (f.rows() != Q.mat_n || f.cols() != Q.mat_n)
    throw DimensionMismatch("bmo_metric_norm");
  std::vector<BmoSample> table;
  CMatrix ff = f.adjoint() * f;
  for (double t : grid.values) {
    CpuMap m1 = Q.matrix_cpu(1, t);
    CMatrix mf = apply_cpu(m1, f);
    int J = Q.J(t);
    for (int j = 1; j <= J; ++j) {
      CpuMap r = Q.matrix_cpu(j, t);
      CMatrix rf = apply_cpu(r, f);
      CMatrix bracket = apply_cpu(r, ff) - rf.adjoint() * rf;
      if (with_mt) {
        CMatrix d = rf - mf;
        bracket += d.adjoint() * d;
      }
      table.push_back({t, j, psd_bracket_norm(bracket) / std::sqrt(Q.gamma2(j))});
    }
  }
  return reduce(std::move(table), grid, Side::Column);
}

// trapezoid ball average over nodes within [x-rho, x+rho]
static cplx ball_avg(const CVector& f, const RVector& nodes, Eigen::Index i,
                     double rho) {
  double lo = nodes(i) - rho, hi = nodes(i) + rho;
  Eigen::Index a = i, b = i;
  while (a > 0 && nodes(a - 1) >= lo) --a;
  while (b + 1 < nodes.size() && nodes(b + 1) <= hi) ++b;
  if (b == a) return f(i);
  cplx acc = 0;
  double w = 0;
  for (Eigen::Index k = a; k <= b; ++k) {
    double wk = (k == a || k == b) ? 0.5 : 1.0;
    acc += wk * f(k);
    w += wk;
  }
  return acc / w;
}

BmoReport bmo_metric_norm(const CVector& f, const RVector& nodes,
                          const MarkovMetricSpec& Q, const TGrid& grid,
                          bool with_mt) {
  if (Q.variant != MarkovMetricSpec::Variant::EuclideanHeat || Q.dim != 1)
    throw MetricCarrierMismatch("grid carrier is for the 1-d euclidean metric");
  if (f.size() != nodes.size() || nodes.size() < 8)
    throw DimensionMismatch("bmo_metric_norm grid");
  double span = nodes(nodes.size() - 1) - nodes(0);
  std::vector<BmoSample> table;
  CVector ff = f.conjugate().cwiseProduct(f);
  for (double t : grid.values) {
    int J = Q.J(t);
    double rho_max = std::sqrt(4.0 * J * t);
    if (2 * rho_max > span) continue;  // largest ball fits nowhere
    for (int j = 1; j <= J; ++j) {
      double rho = std::sqrt(4.0 * j * t), rho1 = std::sqrt(4.0 * t);
      double best = 0;
      bool any = false;
      for (Eigen::Index i = 0; i < nodes.size(); ++i) {
        if (nodes(i) - rho_max < nodes(0) ||
            nodes(i) + rho_max > nodes(nodes.size() - 1))
          continue;  // eligible nodes: every ball up to J fits
        any = true;
        cplx rf = ball_avg(f, nodes, i, rho);
        cplx rff = ball_avg(ff, nodes, i, rho);
        double bracket = (rff - std::conj(rf) * rf).real();
        if (with_mt) {
          cplx mf = ball_avg(f, nodes, i, rho1);
          bracket += std::norm(rf - mf);
        }
        if (bracket < -1e-8)
          throw PositivityViolation("ball bracket " + std::to_string(bracket));
        best = std::max(best, bracket / Q.gamma2(j));
      }
      if (any) table.push_back({t, j, std::sqrt(std::max(best, 0.0))});
    }
  }
  if (table.empty()) throw GridTooNarrow("no t with a fitting ball");
  return reduce(std::move(table), grid, Side::Column);
}

BmoReport bmo_opval_ball_norm(const std::vector<CMatrix>& f,
                              const std::vector<int>& radii) {
  if (radii.empty()) throw EmptyRadii("no radii supplied");
  long N = (long)f.size();
  if (N < 2) throw InvalidParams("need N >= 2 points on Z_N");
  Eigen::Index m = f[0].rows();
  for (const auto& a : f)
    if (a.rows() != m || a.cols() != m)
      throw DimensionMismatch("bmo_opval_ball_norm");
  for (int r : radii)
    if (r < 1 || r > N / 2) throw RadiusTooLarge("radius outside 1..N/2");
  BmoReport rep;
  rep.mt_policy = "arc";
  for (int r : radii) {
    for (long c = 0; c < N; ++c) {
      CMatrix fb = CMatrix::Zero(m, m), sq = CMatrix::Zero(m, m);
      long cnt = 2L * r + 1;
      for (long d = -r; d <= r; ++d) {
        const CMatrix& v = f[(size_t)(((c + d) % N + N) % N)];
        fb += v;
        sq += v.adjoint() * v;
      }
      fb /= (double)cnt;
      sq /= (double)cnt;
      double val = psd_bracket_norm(CMatrix(sq - fb.adjoint() * fb));
      rep.table.push_back({(double)c, r, val});
      if (val >= rep.value) {
        rep.value = val;
        rep.argmax_t = (double)c;
        rep.argmax_j = r;
      }
    }
  }
  return rep;
}

}  // namespace ncbmo
