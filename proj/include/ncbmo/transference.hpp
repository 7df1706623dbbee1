#ifndef NCBMO_TRANSFERENCE_HPP
#define NCBMO_TRANSFERENCE_HPP

#include "ncbmo/semigroup.hpp"

namespace ncbmo {

struct FiniteGroupTable {
  Eigen::Index order = 0;
  std::vector<std::vector<int>> mul;  // mul[g][h] = gh
  std::vector<int> inv;
  int identity = 0;
  std::vector<std::string> labels;

  void validate() const;  // axioms, exhaustive for order <= 64
  bool abelian() const;

  static FiniteGroupTable cyclic(int N);
  static FiniteGroupTable s3();
  static FiniteGroupTable d4();
  static FiniteGroupTable q8();
  static FiniteGroupTable named(const std::string& name);

  std::string to_json() const;
  static FiniteGroupTable from_json(const std::string& text);
};

struct GroupKernel {
  std::vector<cplx> values;  // k(g) indexed by element
  double l1() const;
};

struct UnitaryRep {
  Eigen::Index d = 0;
  std::vector<CMatrix> mats;  // u(g)
  void validate(const FiniteGroupTable& G) const;
};

// right regular representation rho(g) delta_x = delta_{x g^-1}
UnitaryRep regular_rep(const FiniteGroupTable& G);
// character-diagonal rep of Z_N: u(g) = diag of d distinct characters at g
UnitaryRep cyclic_character_rep(int N, const std::vector<int>& chars);
// the 2-dimensional irreducible representation of s3 / d4 / q8
UnitaryRep two_dim_irrep(const std::string& name);

// spectral norm of the left-convolution matrix [k(g h^-1)]
double conv_l2_norm(const FiniteGroupTable& G, const GroupKernel& k);

// sum_g k(g) u(g^-1) f u(g^-1)*
CMatrix transferred_apply(const FiniteGroupTable& G, const GroupKernel& k,
                          const UnitaryRep& rep, const CMatrix& f);

struct TransferenceRow {
  double v_norm;   // ||V|| on Hilbert-Schmidt space
  double t_norm;   // ||T|| = conv_l2_norm
  double ratio;
  bool pass;       // ratio <= 1 + 1e-9
};
TransferenceRow transference_check(const FiniteGroupTable& G,
                                   const GroupKernel& k,
                                   const UnitaryRep& rep);

// max entrywise |V - conv matrix| under the regular representation's
// diagonal-band compression (exact equality for abelian G)
double regular_band_defect(const FiniteGroupTable& G, const GroupKernel& k);

struct CndRow {
  double t;
  double min_eig;
  bool pass;
};
// Schoenberg certificate: [e^{-t psi(g^-1 h)}] PSD at each sampled t
std::vector<CndRow> cnd_length_check(const FiniteGroupTable& G,
                                     const std::vector<double>& psi,
                                     const std::vector<double>& t_samples);

// group-Schur semigroup with lengths psi(g^-1 h) (cross-module consistency)
SemigroupSpec group_schur_semigroup(const FiniteGroupTable& G,
                                    const std::vector<double>& psi);

}  // namespace ncbmo

#endif
