#ifndef NCBMO_TYPES_HPP
#define NCBMO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncbmo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Error taxonomy shared by all modules. Each carries a stable code string so
// the C API can map exceptions to error codes without string matching.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

#define NCBMO_ERROR(Name) \
  struct Name : Error { \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

NCBMO_ERROR(NotHermitian);
NCBMO_ERROR(NegativeSpectrum);
NCBMO_ERROR(DimensionMismatch);
NCBMO_ERROR(InvalidP);
NCBMO_ERROR(MalformedMap);
NCBMO_ERROR(NegativeTime);
NCBMO_ERROR(CarrierMismatch);
NCBMO_ERROR(GridTooNarrow);
NCBMO_ERROR(PositivityViolation);
NCBMO_ERROR(MetricCarrierMismatch);
NCBMO_ERROR(EmptyRadii);
NCBMO_ERROR(InvalidParams);
NCBMO_ERROR(TailUnbounded);
NCBMO_ERROR(MethodUnsupported);
NCBMO_ERROR(SampleOutOfRange);
NCBMO_ERROR(RadiusTooLarge);
NCBMO_ERROR(ParamMismatch);
NCBMO_ERROR(BoxTooSmall);
NCBMO_ERROR(AsymmetricPsi);
NCBMO_ERROR(UsageError);

#undef NCBMO_ERROR

// Finite grid of t > 0 approximating sup_{t>0}.
struct TGrid {
  std::vector<double> values;

  static TGrid log_spaced(double lo, double hi, int count);
  static TGrid default_grid() { return log_spaced(1e-3, 1e3, 60); }
};

}  // namespace ncbmo

#endif
