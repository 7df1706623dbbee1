#ifndef NCBMO_METRIC_HPP
#define NCBMO_METRIC_HPP

#include "ncbmo/semigroup.hpp"

namespace ncbmo {

// Ball-average Fourier coefficient: normalized FT of the indicator of the
// Euclidean ball of radius rho in R^dim, at a frequency of magnitude q.
// dim=1 gives sin(2 pi rho q)/(2 pi rho q).
double ball_avg_ft(int dim, double rho, double q);

struct MarkovMetricSpec {
  enum class Variant { EuclideanHeat, MatrixSinc, OuCorona, QTorus };
  Variant variant;
  int dim = 1;             // ambient dimension (EuclideanHeat, QTorus)
  Eigen::Index mat_n = 0;  // matrix size (MatrixSinc)
  SemigroupSpec ou;        // OuCorona quadrature grid (kind OuGrid)
  double c_ou = 0;         // majorization constant folded into sigma^2
  Eigen::MatrixXd theta;   // QTorus twist

  // Truncation: smallest J with e^-J J^dim <= 1e-14.
  int J(double t) const;

  // Scalar weights for the EuclideanHeat / MatrixSinc / QTorus variants:
  // sigma^2 = (2e/sqrt(pi)) j^{dim/2} e^{-j}, gamma^2 = j^{dim/2}.
  double sigma2(int j) const;
  double gamma2(int j) const;

  // Averaging coefficient at lattice difference distance |d| (radius
  // sqrt(4jt)); for MatrixSinc this is sin(4 sqrt(jt) pi d)/(4 sqrt(jt) pi d).
  double r_coeff(int j, double t, double dist) const;

  // R_{j,t} as a Schur multiplier on M_n (MatrixSinc only).
  CpuMap matrix_cpu(int j, double t) const;

  std::string to_json() const;  // metric.json provenance dump
};

MarkovMetricSpec build_euclidean_heat(int dim);
MarkovMetricSpec build_matrix_sinc(Eigen::Index n);
MarkovMetricSpec build_ou_corona(double lo, double hi, Eigen::Index count);
MarkovMetricSpec build_qtorus_metric(Eigen::MatrixXd theta);

// Heat semigroup paired with the sinc averages: psi(d) = 4 pi^2 d^2 (the
// Fourier-side normalization under which the radius-sqrt(4jt) ball averages
// dominate the heat kernel; see README).
SemigroupSpec sinc_heat_semigroup(Eigen::Index n);

// sup_t sqrt(sum_j sigma^2 gamma^2 + certified tail); for OuCorona the sup
// also runs over grid nodes and the three corona partial sums.
double kq_constant(const MarkovMetricSpec& Q, const TGrid& grid);

// Closed form for dim=1 scalar variants: sqrt((2e/sqrt(pi)) e/(e-1)^2).
double kq_closed_form_1d();

// --- OU corona geometry (n = 1), x >= 0 via reflection ---
struct OuCorona {
  double t, v;  // v = sqrt(e^{2t} - 1)
  double x;     // |x|
  int j0;       // smallest j with 0 in Sigma_{j,t}(x)

  OuCorona(double x, double t);
  // Interval endpoints (coordinates on the |y| axis around c = e^t x).
  std::pair<double, double> sigma_ball(int j) const;   // j >= j0
  std::pair<double, double> corona_minus(int j) const; // 1 <= j < j0
  std::pair<double, double> corona_plus(int j) const;
  double gamma2_split(int j) const;  // j < j0 (both signs)
  double gamma2_ball(int j) const;   // j >= j0: j^{-1/2} e^{j/4}
};

// Gaussian measure of [a,b] by composite trapezoid with step h (grid-tied so
// refinement checks are meaningful).
double mu_interval(double a, double b, double h);

// The three metric-integrability partial sums at (x,t): {j<j0 minus,
// j<j0 plus, j>=j0}; h is the quadrature step for the mu measures.
std::array<double, 3> ou_partial_sums(double x, double t, double h);

enum class MajorizationMethod { SchurSymbolPsd, PointwiseKernel, SampledFamilies };

struct MajorizationReport {
  bool pass;
  double worst_gap;    // min eigenvalue / min psd gap over checks
  std::string method;
};
MajorizationReport majorization_check(const MarkovMetricSpec& Q,
                                      const SemigroupSpec& S, double t,
                                      MajorizationMethod method,
                                      unsigned long long seed = 1);

struct DominationSample {
  double x, y, t;
};
struct DominationReport {
  bool pass;
  double worst_ratio;  // max over samples of lhs/rhs
  double c_variant;
};
DominationReport kernel_domination_check(const MarkovMetricSpec& Q,
                                         const std::vector<DominationSample>& s);

}  // namespace ncbmo

#endif
