#ifndef NCBMO_SEMIGROUP_HPP
#define NCBMO_SEMIGROUP_HPP

#include <functional>

#include "ncbmo/opalg.hpp"

namespace ncbmo {

// Length function on integer differences, either a closed form |d|^e or a
// table on (-N/2, N/2] (cyclic) / 0..n-1 (Schur).
struct Psi {
  enum class Form { Power, Table };
  Form form = Form::Power;
  double exponent = 2.0;          // psi(d) = |d|^exponent
  std::vector<double> table;      // psi(|d|) for table form

  double operator()(double d) const;
  static Psi power(double e) { return Psi{Form::Power, e, {}}; }
  static Psi from_table(std::vector<double> v);
};

struct SemigroupSpec {
  enum class Kind { SchurLength, CyclicMultiplier, OuGrid };
  Kind kind;
  Eigen::Index n = 0;  // matrix dim / N / node count
  Psi psi;
  // SchurLength generalization: explicit length matrix L(m,k) >= 0 with zero
  // diagonal; Toeplitz psi(|m-k|) and group lengths psi(g^-1 h) both land here.
  Eigen::MatrixXd lengths;
  RVector nodes, weights;  // OuGrid

  static SemigroupSpec schur_length(Psi psi, Eigen::Index n);
  static SemigroupSpec schur_lengths(Eigen::MatrixXd lengths);
  static SemigroupSpec cyclic_multiplier(Psi psi, Eigen::Index N);
  static SemigroupSpec ou_grid(double lo, double hi, Eigen::Index count);

  // Frequency k in (-N/2, N/2] for index 0..N-1.
  static long cyc_freq(Eigen::Index idx, Eigen::Index N);

  std::string to_json() const;
  static SemigroupSpec from_json(const std::string& text);
};

// Matrix carrier (SchurLength) application.
CMatrix semigroup_apply(const SemigroupSpec& S, double t, const CMatrix& f);
// Vector carrier (CyclicMultiplier: values on Z_N; OuGrid: values at nodes).
CVector semigroup_apply(const SemigroupSpec& S, double t, const CVector& f);

// The CpuMap realizing S_t (Schur symbol / cyclic multiplier / grid kernel).
CpuMap semigroup_cpu(const SemigroupSpec& S, double t);

// OU kernel wrt the Gaussian measure dmu = e^{-y^2} dy:
//   O_t f(x) = (pi(1-e^{-2t}))^{-1/2} int exp(-(e^{-t}x - y)^2/(1-e^{-2t})) f dy.
double ou_kernel_lebesgue(double t, double x, double y);
// Nodes of an OU grid where the kernel mass lost outside the grid is < tol.
std::vector<Eigen::Index> ou_interior_nodes(const SemigroupSpec& S, double t,
                                            double tol = 1e-10);

struct CheckLine {
  std::string name;
  bool pass;
  double measured;
  double bound;
};
struct CheckReportData {
  std::vector<CheckLine> lines;
  bool all_pass() const {
    for (auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

// Unitality, trace symmetry on seeded random pairs, complete positivity.
CheckReportData markov_check(const SemigroupSpec& S, const TGrid& grid,
                             unsigned long long seed = 1);

struct OuIdentityReport {
  double defect;       // sup over interior nodes of |O_t f - H_{v(t)} f(e^-t x)|
  double quad_bound;   // crude quadrature error scale (h^2 * sup|f|)
};
// Checks O_t f(x) = H_{v(t)} f(e^{-t} x), v(t) = (1 - e^{-2t})/4, both sides
// by trapezoid quadrature on the spec's grid.
OuIdentityReport ou_heat_identity_check(const SemigroupSpec& S,
                                        const CVector& f, double t);

}  // namespace ncbmo

#endif
