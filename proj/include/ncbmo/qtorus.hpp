#ifndef NCBMO_QTORUS_HPP
#define NCBMO_QTORUS_HPP

#include <map>
#include <vector>

#include "ncbmo/bmo.hpp"

namespace ncbmo {

using Multi = std::vector<long>;  // lattice frequency in Z^n

struct TwistParams {
  int n = 1;
  Eigen::MatrixXd theta;  // antisymmetric
  static TwistParams from_upper(int n, const std::vector<double>& upper);
  bool same(const TwistParams& o) const;
};

struct TwistedSeries {
  TwistParams params;
  std::map<Multi, cplx> coeffs;  // zero coefficients absent

  void set(const Multi& xi, cplx c);
  cplx at(const Multi& xi) const;
  long support_radius() const;  // max sup-norm of a supported frequency
  double coeff_l1() const;
  double coeff_l2() const;

  static TwistedSeries unit(const TwistParams& p);
  static TwistedSeries lambda(const TwistParams& p, const Multi& xi);

  TwistedSeries operator+(const TwistedSeries& o) const;
  TwistedSeries operator-(const TwistedSeries& o) const;
  TwistedSeries operator*(cplx s) const;

  std::string to_json() const;
  static TwistedSeries from_json(const std::string& text);
};

// Weyl-ordering phase: lambda(xi) lambda(eta) = phase(xi,eta) lambda(xi+eta)
cplx tw_phase(const TwistParams& p, const Multi& xi, const Multi& eta);

TwistedSeries twisted_mul(const TwistedSeries& f, const TwistedSeries& g);
TwistedSeries tw_adjoint(const TwistedSeries& f);
cplx tw_trace(const TwistedSeries& f);
TwistedSeries qt_heat_apply(const TwistedSeries& f, double t);
// averaging map R_{j,t}: coefficientwise ball-average transform at |xi|
TwistedSeries qt_metric_apply(const TwistedSeries& f,
                              const MarkovMetricSpec& Q, int j, double t);

// max coefficient modulus of sigma(S_t f) - (H_t (x) id)(sigma f),
// the two paths coded independently
double sigma_intertwine_check(const TwistedSeries& f, double t);

// Element of the algebraic tensor square, second leg with the opposite
// multiplication (needed so pi is multiplicative on characters).
struct TwistedTensor {
  TwistParams params;
  std::map<std::pair<Multi, Multi>, cplx> coeffs;
  TwistedTensor mul(const TwistedTensor& o) const;
  TwistedSeries tau_id() const;  // (trace (x) id)
};
TwistedTensor pi_theta(const TwistedSeries& phi);
// (tau (x) id)(pi(phi)) as a scalar multiple of the unit; built explicitly
cplx pi_theta_expectation(const TwistedSeries& phi);

struct GnsBox {
  long L = 8;
};

// finite GNS compression of left multiplication by f on [-L,L]^n
CMatrix gns_matrix(const TwistedSeries& f, const GnsBox& box);
double gns_opnorm(const TwistedSeries& f, const GnsBox& box);
// smallest Ritz/eigen value of the (Hermitian) compression of a selfadjoint f
double gns_min_eig(const TwistedSeries& f, const GnsBox& box);

BmoReport qt_bmo_norm(const TwistedSeries& f, const MarkovMetricSpec& Q,
                      const TGrid& grid, const GnsBox& box);

// evaluate at a torus point (theta = 0 only): sum c_xi e^{2 pi i xi.x}
cplx series_eval(const TwistedSeries& f, const Eigen::VectorXd& x);

// rational-twist oracle: max over boundary phases of the spectral norm of
// e^{ia}C + e^{-ia}C* + e^{ib}S + e^{-ib}S* on the q x q clock-and-shift pair
// with omega = e^{2 pi i p/q}
double harper_oracle(int p, int q, int phase_grid = 64);

}  // namespace ncbmo

#endif
