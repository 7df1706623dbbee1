#ifndef NCBMO_CZO_HPP
#define NCBMO_CZO_HPP

#include "ncbmo/semigroup.hpp"

namespace ncbmo {

// strictly-lower-triangular part of A
CMatrix triangular_truncation(const CMatrix& A);

struct MultiplierSymbol {
  enum class Domain { Cyclic, MatrixSchur };
  Domain domain;
  Eigen::Index n;   // N (cyclic) or matrix size
  CVector values;   // cyclic: per frequency index 0..N-1 (cyc_freq order);
                    // matrix_schur: per difference 0..n-1
  static MultiplierSymbol cyclic(CVector vals);
  static MultiplierSymbol matrix_schur(CVector vals);
};

// -i sgn(k) on (-N/2, N/2], 0 at k = 0 and at the Nyquist frequency
MultiplierSymbol hilbert_symbol(Eigen::Index N);

CVector fourier_multiplier_apply(const MultiplierSymbol& sym, const CVector& f);
// operator-valued: acts on each matrix coefficient of f: Z_N -> M_m
std::vector<CMatrix> fourier_multiplier_apply(const MultiplierSymbol& sym,
                                              const std::vector<CMatrix>& f);
// L2-operator norm = max |symbol|
double multiplier_l2_norm(const MultiplierSymbol& sym);

// max over grid of entrywise max modulus of
// P_t|A|^2 - |P_tA|^2 - (P_t|TA|^2 - |P_tTA|^2), T = i(id - 2 triang)
double czo_bmo_identity_check(const CMatrix& A, const TGrid& grid);

struct ProbeRow {
  std::string probe;
  std::string params;
  unsigned long long seed;
  double measured;
  double bound;
  bool pass;
};
struct CzoProbeReport {
  std::vector<ProbeRow> rows;
  bool all_pass() const {
    for (auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  std::string to_json() const;
};

// empirical max over Gaussian samples of ||triang(A)||_p / ||A||_p vs p^2/(p-1)
CzoProbeReport schatten_growth_probe(Eigen::Index n, int samples,
                                     const std::vector<double>& p_list,
                                     unsigned long long seed = 1);

// discrete Hormander constant of the multiplier's convolution kernel:
// sup over arcs B of radius r and y1,y2 in B of
// sum_{z not in lambda B} |k(y1-z) - k(y2-z)|
CzoProbeReport hormander_probe(const MultiplierSymbol& sym, int lambda,
                               const std::vector<int>& radii);

}  // namespace ncbmo

#endif
