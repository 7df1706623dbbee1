#include "ncbmo/opalg.hpp"

#include <cmath>

#include "json.hpp"

namespace ncbmo {

TGrid TGrid::log_spaced(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2)
    throw InvalidParams("log grid needs 0 < lo < hi and count >= 2");
  TGrid g;
  g.values.resize(count);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g.values[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  return g;
}

bool is_hermitian(const CMatrix& A, double tol) {
  if (A.rows() != A.cols()) return false;
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_hermitian(const CMatrix& A, double tol) {
  if (!is_hermitian(A, tol))
    throw NotHermitian("max |A - A*| entry exceeds " + std::to_string(tol));
}

RVector herm_eigs(const CMatrix& A) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix psd_sqrt(const CMatrix& A, double tol) {
  require_hermitian(A);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A);
  RVector ev = es.eigenvalues();
  if (ev(0) < -tol)
    throw NegativeSpectrum("min eigenvalue " + std::to_string(ev(0)) +
                           " below -tol");
  RVector s = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

double psd_order_gap(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionMismatch("psd_order_gap");
  require_hermitian(A, 1e-10 * (1 + A.cwiseAbs().maxCoeff()));
  require_hermitian(B, 1e-10 * (1 + B.cwiseAbs().maxCoeff()));
  CMatrix D = B - A;
  D = (D + D.adjoint().eval()) / 2.0;
  return herm_eigs(D)(0);
}

double norm(const CMatrix& A, double p) {
  if (!(p >= 1.0)) throw InvalidP("Schatten exponent must satisfy p >= 1");
  Eigen::JacobiSVD<CMatrix> svd(A);
  const RVector& s = svd.singularValues();
  if (std::isinf(p)) return s.size() ? s(0) : 0.0;
  double acc = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
  return std::pow(acc, 1.0 / p);
}

double op_norm(const CMatrix& A) {
  return norm(A, std::numeric_limits<double>::infinity());
}

double sqrt_op_norm(const CMatrix& A) {
  RVector ev = herm_eigs((A + A.adjoint().eval()) / 2.0);
  double top = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return std::sqrt(std::max(top, 0.0));
}

void TensorElement::validate() const {
  if (terms.empty()) throw InvalidParams("TensorElement must be nonempty");
  Eigen::Index n = terms[0].a.rows();
  for (const auto& t : terms)
    if (t.a.rows() != n || t.a.cols() != n || t.b.rows() != n || t.b.cols() != n)
      throw DimensionMismatch("TensorElement term dimensions differ");
}

CpuMap CpuMap::schur(CMatrix sym) {
  if (sym.rows() != sym.cols()) throw MalformedMap("schur symbol not square");
  for (Eigen::Index i = 0; i < sym.rows(); ++i)
    if (std::abs(sym(i, i) - 1.0) > 1e-10)
      throw MalformedMap("schur symbol diagonal must be 1 (unitality)");
  CpuMap m;
  m.kind = Kind::Schur;
  m.n = sym.rows();
  m.symbol = std::move(sym);
  return m;
}

CpuMap CpuMap::cyclic_fourier(CVector sym) {
  if (sym.size() < 1) throw MalformedMap("empty cyclic symbol");
  if (std::abs(sym(0) - 1.0) > 1e-10)
    throw MalformedMap("cyclic symbol at difference 0 must be 1 (unitality)");
  CpuMap m;
  m.kind = Kind::CyclicFourier;
  m.n = sym.size();
  m.cyc_symbol = std::move(sym);
  return m;
}

CpuMap CpuMap::grid_kernel(RVector nodes, RVector weights, Eigen::MatrixXd k) {
  Eigen::Index n = nodes.size();
  if (weights.size() != n || k.rows() != n || k.cols() != n)
    throw MalformedMap("grid kernel shape mismatch");
  CpuMap m;
  m.kind = Kind::GridKernel;
  m.n = n;
  m.nodes = std::move(nodes);
  m.weights = std::move(weights);
  m.kernel = std::move(k);
  return m;
}

CpuMap CpuMap::trace_like(CMatrix density) {
  require_hermitian(density, 1e-10);
  if (std::abs(density.trace() - 1.0) > 1e-10)
    throw MalformedMap("trace_like density must have trace 1 (unitality)");
  CpuMap m;
  m.kind = Kind::TraceLike;
  m.n = density.rows();
  m.density = std::move(density);
  return m;
}

CpuMap CpuMap::composite(std::vector<CpuMap> seq) {
  if (seq.empty()) throw MalformedMap("empty composite");
  CpuMap m;
  m.kind = Kind::Composite;
  m.n = seq[0].n;
  for (auto& p : seq) {
    if (p.n != m.n) throw DimensionMismatch("composite parts differ in size");
    m.parts.push_back(std::make_shared<CpuMap>(std::move(p)));
  }
  return m;
}

static CMatrix apply_cyclic_fourier(const CpuMap& phi, const CMatrix& A) {
  // Herz-Schur action: entry (m,k) scaled by symbol((m-k) mod N). On the
  // circulant embedding of a function this is the Fourier multiplier.
  Eigen::Index N = phi.n;
  CMatrix out(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index k = 0; k < N; ++k)
      out(m, k) = phi.cyc_symbol(((m - k) % N + N) % N) * A(m, k);
  return out;
}

static CMatrix apply_grid_kernel(const CpuMap& phi, const CMatrix& A) {
  // Carrier: grid functions embedded as diagonal matrices.
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (i != j && std::abs(A(i, j)) > 1e-13 * (1 + A.cwiseAbs().maxCoeff()))
        throw CarrierMismatch("grid kernel map expects a diagonal matrix");
  CVector f = A.diagonal();
  CVector g = CVector::Zero(phi.n);
  for (Eigen::Index i = 0; i < phi.n; ++i)
    for (Eigen::Index j = 0; j < phi.n; ++j)
      g(i) += phi.kernel(i, j) * phi.weights(j) * f(j);
  return g.asDiagonal();
}

CMatrix apply_cpu(const CpuMap& phi, const CMatrix& A) {
  if (A.rows() != phi.n || A.cols() != phi.n)
    throw DimensionMismatch("apply_cpu");
  switch (phi.kind) {
    case CpuMap::Kind::Schur:
      return phi.symbol.cwiseProduct(A);
    case CpuMap::Kind::CyclicFourier:
      return apply_cyclic_fourier(phi, A);
    case CpuMap::Kind::GridKernel:
      return apply_grid_kernel(phi, A);
    case CpuMap::Kind::TraceLike:
      return (phi.density.cwiseProduct(A.transpose())).sum() *
             CMatrix::Identity(phi.n, phi.n);
    case CpuMap::Kind::Composite: {
      CMatrix out = A;
      for (const auto& p : phi.parts) out = apply_cpu(*p, out);
      return out;
    }
  }
  throw MalformedMap("unknown kind");
}

CMatrix module_inner_product(const TensorElement& xi, const CpuMap& phi) {
  xi.validate();
  if (xi.dim() != phi.n) throw DimensionMismatch("module_inner_product");
  Eigen::Index n = phi.n;
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& tj : xi.terms)
    for (const auto& tk : xi.terms)
      out += tj.b.adjoint() * apply_cpu(phi, tj.a.adjoint() * tk.a) * tk.b;
  return (out + out.adjoint().eval()) / 2.0;
}

std::string matrix_to_json(const CMatrix& A) {
  nlohmann::json j;
  j["n"] = A.rows();
  auto grid = [&](auto f) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(f(A(r, c)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["re"] = grid([](cplx z) { return z.real(); });
  j["im"] = grid([](cplx z) { return z.imag(); });
  return j.dump();
}

CMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Eigen::Index n = j.at("n").get<Eigen::Index>();
  auto re = j.at("re"), im = j.at("im");
  if ((Eigen::Index)re.size() != n || (Eigen::Index)im.size() != n)
    throw InvalidParams("matrix JSON: row count != n");
  CMatrix A(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if ((Eigen::Index)re[r].size() != n || (Eigen::Index)im[r].size() != n)
      throw InvalidParams("matrix JSON: column count != n");
    for (Eigen::Index c = 0; c < n; ++c)
      A(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return A;
}

}  // namespace ncbmo
