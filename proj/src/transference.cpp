#include "ncbmo/transference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "json.hpp"

namespace ncbmo {

void FiniteGroupTable::validate() const {
  if (order < 1 || order > 64)
    throw InvalidParams("group order must lie in 1..64");
  if ((Eigen::Index)mul.size() != order)
    throw InvalidParams("multiplication table shape");
  for (const auto& row : mul) {
    if ((Eigen::Index)row.size() != order)
      throw InvalidParams("multiplication table shape");
    for (int v : row)
      if (v < 0 || v >= order) throw InvalidParams("table entry out of range");
  }
  for (int g = 0; g < order; ++g)
    if (mul[identity][g] != g || mul[g][identity] != g)
      throw InvalidParams("identity axiom fails");
  if ((Eigen::Index)inv.size() != order) throw InvalidParams("inverse list");
  for (int g = 0; g < order; ++g)
    if (mul[g][inv[g]] != identity || mul[inv[g]][g] != identity)
      throw InvalidParams("inverse axiom fails");
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw InvalidParams("associativity fails");
}

bool FiniteGroupTable::abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

static FiniteGroupTable finish(FiniteGroupTable G) {
  G.inv.assign(G.order, -1);
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h)
      if (G.mul[g][h] == G.identity) G.inv[g] = h;
  G.validate();
  return G;
}

FiniteGroupTable FiniteGroupTable::cyclic(int N) {
  FiniteGroupTable G;
  G.order = N;
  G.identity = 0;
  G.mul.assign(N, std::vector<int>(N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) G.mul[a][b] = (a + b) % N;
  for (int a = 0; a < N; ++a) G.labels.push_back(std::to_string(a));
  return finish(std::move(G));
}

FiniteGroupTable FiniteGroupTable::s3() {
  // permutations of {0,1,2} in lexicographic order
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FiniteGroupTable G;
  G.order = 6;
  G.identity = 0;
  G.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      G.mul[a][b] =
          (int)(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  for (auto& q : perms)
    G.labels.push_back("(" + std::to_string(q[0]) + std::to_string(q[1]) +
                       std::to_string(q[2]) + ")");
  return finish(std::move(G));
}

FiniteGroupTable FiniteGroupTable::d4() {
  // element a + 4b = r^a s^b, s r = r^-1 s
  FiniteGroupTable G;
  G.order = 8;
  G.identity = 0;
  G.mul.assign(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 2; ++d) {
          int rot = ((a + (b ? -c : c)) % 4 + 4) % 4;
          G.mul[a + 4 * b][c + 4 * d] = rot + 4 * ((b + d) % 2);
        }
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 4; ++a)
      G.labels.push_back(std::string(b ? "sr" : "r") + std::to_string(a));
  return finish(std::move(G));
}

FiniteGroupTable FiniteGroupTable::q8() {
  // element u + 4s: unit u in {1,i,j,k}, sign s
  // quaternion unit products with sign
  static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2},
                                 {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1},
                                {1, -1, -1, 1}, {1, 1, -1, -1}};
  FiniteGroupTable G;
  G.order = 8;
  G.identity = 0;
  G.mul.assign(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a % 4, ub = b % 4;
      int s = (a / 4 + b / 4 + (sgn[ua][ub] < 0 ? 1 : 0)) % 2;
      G.mul[a][b] = prod[ua][ub] + 4 * s;
    }
  const char* u[4] = {"1", "i", "j", "k"};
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < 4; ++k)
      G.labels.push_back(std::string(s ? "-" : "") + u[k]);
  return finish(std::move(G));
}

FiniteGroupTable FiniteGroupTable::named(const std::string& name) {
  if (name == "s3") return s3();
  if (name == "d4") return d4();
  if (name == "q8") return q8();
  if (name.size() > 1 && name[0] == 'z') {
    int N = std::stoi(name.substr(1));
    if (N >= 1 && N <= 64) return cyclic(N);
  }
  throw InvalidParams("unknown group: " + name);
}

std::string FiniteGroupTable::to_json() const {
  nlohmann::json j;
  j["order"] = order;
  j["mul"] = mul;
  j["labels"] = labels;
  return j.dump();
}

FiniteGroupTable FiniteGroupTable::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteGroupTable G;
  G.order = j.at("order").get<Eigen::Index>();
  G.mul = j.at("mul").get<std::vector<std::vector<int>>>();
  if (j.contains("labels"))
    G.labels = j.at("labels").get<std::vector<std::string>>();
  // locate the identity, then fill inverses
  G.identity = -1;
  for (int e = 0; e < G.order; ++e) {
    bool ok = true;
    for (int g = 0; g < G.order && ok; ++g)
      ok = G.mul[e][g] == g && G.mul[g][e] == g;
    if (ok) {
      G.identity = e;
      break;
    }
  }
  if (G.identity < 0) throw InvalidParams("table has no identity");
  return finish(std::move(G));
}

double GroupKernel::l1() const {
  double s = 0;
  for (cplx v : values) s += std::abs(v);
  return s;
}

void UnitaryRep::validate(const FiniteGroupTable& G) const {
  if ((Eigen::Index)mats.size() != G.order)
    throw DimensionMismatch("representation size");
  CMatrix I = CMatrix::Identity(d, d);
  if ((mats[G.identity] - I).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidParams("u(e) != I");
  for (int g = 0; g < G.order; ++g) {
    if ((mats[g] * mats[g].adjoint() - I).cwiseAbs().maxCoeff() > 1e-12)
      throw InvalidParams("u(g) not unitary");
    for (int h = 0; h < G.order; ++h)
      if ((mats[g] * mats[h] - mats[G.mul[g][h]]).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidParams("u is not a homomorphism");
  }
}

UnitaryRep regular_rep(const FiniteGroupTable& G) {
  UnitaryRep r;
  r.d = G.order;
  for (int g = 0; g < G.order; ++g) {
    CMatrix U = CMatrix::Zero(G.order, G.order);
    // rho(g) delta_x = delta_{x g^-1}
    for (int x = 0; x < G.order; ++x) U(G.mul[x][G.inv[g]], x) = 1.0;
    r.mats.push_back(std::move(U));
  }
  r.validate(G);
  return r;
}

UnitaryRep cyclic_character_rep(int N, const std::vector<int>& chars) {
  UnitaryRep r;
  r.d = (Eigen::Index)chars.size();
  for (int g = 0; g < N; ++g) {
    CMatrix U = CMatrix::Zero(r.d, r.d);
    for (Eigen::Index m = 0; m < r.d; ++m)
      U(m, m) = std::polar(1.0, 2.0 * M_PI * chars[m] * g / (double)N);
    r.mats.push_back(std::move(U));
  }
  r.validate(FiniteGroupTable::cyclic(N));
  return r;
}

UnitaryRep two_dim_irrep(const std::string& name) {
  FiniteGroupTable G = FiniteGroupTable::named(name);
  UnitaryRep r;
  r.d = 2;
  r.mats.assign(G.order, CMatrix::Zero(2, 2));
  if (name == "s3") {
    // permutation action restricted to the plane x+y+z = 0
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    Eigen::MatrixXd B(3, 2);
    B << 1 / std::sqrt(2), 1 / std::sqrt(6), -1 / std::sqrt(2),
        1 / std::sqrt(6), 0, -2 / std::sqrt(6);
    for (int g = 0; g < 6; ++g) {
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, 3);
      for (int i = 0; i < 3; ++i) P(perms[g][i], i) = 1.0;
      r.mats[g] = (B.transpose() * P * B).cast<cplx>();
    }
  } else if (name == "d4") {
    CMatrix rot(2, 2), ref(2, 2);
    rot << 0, -1, 1, 0;
    ref << 1, 0, 0, -1;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 2; ++b) {
        CMatrix U = CMatrix::Identity(2, 2);
        for (int i = 0; i < a; ++i) U = rot * U;
        if (b) U = U * ref;
        r.mats[a + 4 * b] = U;
      }
  } else if (name == "q8") {
    CMatrix I2 = CMatrix::Identity(2, 2), qi(2, 2), qj(2, 2);
    qi << cplx(0, 1), 0, 0, cplx(0, -1);
    qj << 0, 1, -1, 0;
    CMatrix qk = qi * qj;
    CMatrix units[4] = {I2, qi, qj, qk};
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 4; ++u)
        r.mats[u + 4 * s] = (s ? -1.0 : 1.0) * units[u];
  } else {
    throw InvalidParams("no built-in 2-dim irrep for " + name);
  }
  r.validate(G);
  return r;
}

static CMatrix conv_matrix(const FiniteGroupTable& G, const GroupKernel& k) {
  if ((Eigen::Index)k.values.size() != G.order)
    throw DimensionMismatch("kernel size");
  CMatrix M(G.order, G.order);
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) M(g, h) = k.values[G.mul[g][G.inv[h]]];
  return M;
}

double conv_l2_norm(const FiniteGroupTable& G, const GroupKernel& k) {
  return op_norm(conv_matrix(G, k));
}

CMatrix transferred_apply(const FiniteGroupTable& G, const GroupKernel& k,
                          const UnitaryRep& rep, const CMatrix& f) {
  if (f.rows() != rep.d || f.cols() != rep.d)
    throw DimensionMismatch("transferred_apply");
  CMatrix out = CMatrix::Zero(rep.d, rep.d);
  for (int g = 0; g < G.order; ++g) {
    const CMatrix& U = rep.mats[G.inv[g]];
    out += k.values[g] * U * f * U.adjoint();
  }
  return out;
}

static CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

TransferenceRow transference_check(const FiniteGroupTable& G,
                                   const GroupKernel& k,
                                   const UnitaryRep& rep) {
  // vec(U f U*) = (conj(U) kron U) vec(f)
  Eigen::Index d2 = rep.d * rep.d;
  CMatrix V = CMatrix::Zero(d2, d2);
  for (int g = 0; g < G.order; ++g) {
    const CMatrix& U = rep.mats[G.inv[g]];
    V += k.values[g] * kron(U.conjugate(), U);
  }
  TransferenceRow row;
  row.v_norm = op_norm(V);
  row.t_norm = conv_l2_norm(G, k);
  row.ratio = row.t_norm > 0 ? row.v_norm / row.t_norm
                             : (row.v_norm == 0 ? 1.0 : 1e300);
  row.pass = row.v_norm <= (1 + 1e-9) * row.t_norm;
  return row;
}

double regular_band_defect(const FiniteGroupTable& G, const GroupKernel& k) {
  UnitaryRep rep = regular_rep(G);
  CMatrix T = conv_matrix(G, k);
  Eigen::Index n = G.order;
  double worst = 0;
  for (int c = 0; c < n; ++c)
    for (int x = 0; x < n; ++x) {
      CMatrix F = CMatrix::Zero(n, n);
      F(x, G.mul[x][c]) = 1.0;
      CMatrix img = transferred_apply(G, k, rep, F);
      // expected: sum_{x'} T(x',x) E_{x', x' c}
      CMatrix want = CMatrix::Zero(n, n);
      for (int xp = 0; xp < n; ++xp) want(xp, G.mul[xp][c]) = T(xp, x);
      worst = std::max(worst, (img - want).cwiseAbs().maxCoeff());
    }
  return worst;
}

std::vector<CndRow> cnd_length_check(const FiniteGroupTable& G,
                                     const std::vector<double>& psi,
                                     const std::vector<double>& t_samples) {
  if ((Eigen::Index)psi.size() != G.order)
    throw DimensionMismatch("psi size");
  if (psi[G.identity] != 0.0) throw AsymmetricPsi("psi(e) must be 0");
  for (int g = 0; g < G.order; ++g)
    if (psi[g] < 0 || psi[G.inv[g]] != psi[g])
      throw AsymmetricPsi("psi must be nonnegative and inverse-symmetric");
  std::vector<CndRow> rows;
  for (double t : t_samples) {
    CMatrix M(G.order, G.order);
    for (int g = 0; g < G.order; ++g)
      for (int h = 0; h < G.order; ++h)
        M(g, h) = std::exp(-t * psi[G.mul[G.inv[g]][h]]);
    double e = herm_eigs(M)(0);
    rows.push_back({t, e, e >= -1e-10});
  }
  return rows;
}

SemigroupSpec group_schur_semigroup(const FiniteGroupTable& G,
                                    const std::vector<double>& psi) {
  Eigen::MatrixXd L(G.order, G.order);
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) L(g, h) = psi[G.mul[G.inv[g]][h]];
  return SemigroupSpec::schur_lengths(std::move(L));
}

}  // namespace ncbmo
