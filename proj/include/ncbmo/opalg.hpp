#ifndef NCBMO_OPALG_HPP
#define NCBMO_OPALG_HPP

#include <functional>
#include <memory>
#include <optional>

#include "ncbmo/types.hpp"

namespace ncbmo {

constexpr double kDefaultPsdTol = 1e-8;
constexpr double kHermTol = 1e-12;

bool is_hermitian(const CMatrix& A, double tol = kHermTol);
void require_hermitian(const CMatrix& A, double tol = kHermTol);

// Eigenvalues of a Hermitian matrix, ascending.
RVector herm_eigs(const CMatrix& A);

// B with B^2 = A after clamping eigenvalues in [-tol, 0) to zero.
CMatrix psd_sqrt(const CMatrix& A, double tol = kDefaultPsdTol);

// min eigenvalue of B - A; B >= A at tolerance tau iff result >= -tau.
double psd_order_gap(const CMatrix& A, const CMatrix& B);

// Schatten p-norm (p = inf -> operator norm).
double norm(const CMatrix& A, double p);
double op_norm(const CMatrix& A);

// sqrt(op_norm) of a Hermitian PSD operand; the norm of its psd_sqrt without
// forming the square root. Clamps tiny negative leading eigenvalues to 0.
double sqrt_op_norm(const CMatrix& A);

struct TensorElement {
  struct Term {
    CMatrix a, b;
  };
  std::vector<Term> terms;

  TensorElement() = default;
  TensorElement(std::initializer_list<Term> ts) : terms(ts) { validate(); }
  void validate() const;
  Eigen::Index dim() const { return terms.at(0).a.rows(); }
};

// Completely positive unital maps, closed under the kinds the paper needs.
struct CpuMap {
  enum class Kind { Schur, CyclicFourier, GridKernel, TraceLike, Composite };
  Kind kind;
  Eigen::Index n = 0;  // carrier dimension (matrix side / N / node count)

  CMatrix symbol;            // Schur: n x n, diagonal == 1
  CVector cyc_symbol;        // CyclicFourier: length N, indexed by difference
  RVector nodes, weights;    // GridKernel quadrature
  Eigen::MatrixXd kernel;    // GridKernel: K(x_i, y_j), weights applied on use
  CMatrix density;           // TraceLike: trace-1 PSD density
  std::vector<std::shared_ptr<const CpuMap>> parts;  // Composite, outermost last

  static CpuMap schur(CMatrix sym);
  static CpuMap cyclic_fourier(CVector sym_by_difference);
  static CpuMap grid_kernel(RVector nodes, RVector weights, Eigen::MatrixXd k);
  static CpuMap trace_like(CMatrix density);
  static CpuMap composite(std::vector<CpuMap> seq);
};

// Dispatch over all kinds. For GridKernel the carrier is the diagonal
// embedding of a grid function; off-diagonal input raises CarrierMismatch.
CMatrix apply_cpu(const CpuMap& phi, const CMatrix& A);

// sum_{j,k} b_j^* Phi(a_j^* a_k) b_k; Hermitian PSD up to roundoff.
CMatrix module_inner_product(const TensorElement& xi, const CpuMap& phi);

// JSON matrix format {"n": int, "re": [[..]], "im": [[..]]}, row-major.
std::string matrix_to_json(const CMatrix& A);
CMatrix matrix_from_json(const std::string& text);

}  // namespace ncbmo

#endif
