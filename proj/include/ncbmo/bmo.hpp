#ifndef NCBMO_BMO_HPP
#define NCBMO_BMO_HPP

#include "ncbmo/metric.hpp"

namespace ncbmo {

enum class Side { Column, Row, Max };

struct BmoSample {
  double t;
  int j;  // -1 when the sample has no j index
  double value;
};

struct BmoReport {
  double value = 0;
  Side side = Side::Column;
  double argmax_t = 0;
  int argmax_j = -1;
  bool boundary = false;  // arg-max t sits on a grid endpoint
  std::vector<BmoSample> table;
  std::string mt_policy = "R1";
  std::string to_json(bool terse = false) const;
};

// sup_t || (S_t|f|^2 - |S_t f|^2)^{1/2} ||; row side runs the column engine
// on the adjoint.
BmoReport bmo_semigroup_norm(const CMatrix& f, const SemigroupSpec& S,
                             const TGrid& grid, Side side = Side::Column);
BmoReport bmo_semigroup_norm(const CVector& f, const SemigroupSpec& S,
                             const TGrid& grid, Side side = Side::Column);

// Markov-metric BMO with M_t fixed to R_{1,t}; max over grid x {1..J(t)} of
// || gamma^-1 [R|f|^2 - |Rf|^2 + |Rf - Mf|^2] gamma^-1 ||^{1/2}.
// with_mt=false drops the |Rf - Mf|^2 term (used by the doubling check).
BmoReport bmo_metric_norm(const CMatrix& f, const MarkovMetricSpec& Q,
                          const TGrid& grid, bool with_mt = true);
// Euclidean grid carrier: f sampled at uniform nodes; t values whose largest
// ball fits nowhere inside the node range are skipped.
BmoReport bmo_metric_norm(const CVector& f, const RVector& nodes,
                          const MarkovMetricSpec& Q, const TGrid& grid,
                          bool with_mt = true);

// sup over arcs (every center, every radius) of ||avg_B |f - f_B|^2||^{1/2}
// for f: Z_N -> M_m.
BmoReport bmo_opval_ball_norm(const std::vector<CMatrix>& f,
                              const std::vector<int>& radii);

}  // namespace ncbmo

#endif
