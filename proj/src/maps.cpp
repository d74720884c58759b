#include "ldoi/maps.hpp"

#include <cmath>
#include <random>

namespace ldoi {

namespace {

bool close(const Matrix& x, const Matrix& y, const Tolerance& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return max_abs(x - y) <= tol.bound(std::max(max_abs(x), max_abs(y)));
}

void require_same_dim(Index a, Index b) {
  if (a != b) throw ValidationError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix stack(const std::vector<Matrix>& ops) {
  const Index d = ops.front().rows();
  Matrix out(d * d, static_cast<Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) out.col(static_cast<Index>(k)) = vec(ops[k]);
  return out;
}

// Conjugation generators acting on vectorised Kraus operators.
std::vector<Matrix> generators(InvariantClass c, Index d) {
  std::vector<Matrix> out;
  const cplx omega = std::polar(1.0, 2.0 * std::acos(-1.0) / 5.0);
  for (Index k = 0; k < d; ++k) {
    Matrix g = Matrix::Identity(d, d);
    if (c == InvariantClass::LDOI) {
      g(k, k) = -1.0;
      out.push_back(kron(g, g));
    } else {
      g(k, k) = omega;
      // DUC keeps U P U, CDUC keeps U^* P U.
      out.push_back(c == InvariantClass::LDUI ? kron(g, g) : kron(g.conjugate(), g));
    }
  }
  return out;
}

}  // namespace

std::string map_class_name(InvariantClass c) {
  switch (c) {
    case InvariantClass::LDUI:
      return "DUC";
    case InvariantClass::CLDUI:
      return "CDUC";
    case InvariantClass::LDOI:
      return "DOC";
  }
  return "DOC";
}

InvariantClass map_class_from_name(const std::string& s) {
  if (s == "DUC") return InvariantClass::LDUI;
  if (s == "CDUC") return InvariantClass::CLDUI;
  if (s == "DOC") return InvariantClass::LDOI;
  throw ValidationError("unknown map class '" + s + "' (expected DUC, CDUC or DOC)");
}

CovariantMap make_map(InvariantClass c, const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  return CovariantMap{c, promote(c, t)};
}

Matrix apply(const CovariantMap& m, const Matrix& Z) {
  const MatrixTriple t = promote(m.cls, m.triple);
  require_square(Z, "Z");
  require_same_dim(t.dim(), Z.rows());
  Matrix out = hadamard(tilde(t.B), Z) + hadamard(tilde(t.C), Z.transpose());
  out.diagonal() += t.A * Z.diagonal();
  return out;
}

BipartiteMatrix choi(const CovariantMap& m) { return build(m.cls, promote(m.cls, m.triple)); }

CovariantMap from_choi(const BipartiteMatrix& x, const Tolerance& tol) {
  if (!is_invariant(x, InvariantClass::LDOI, tol))
    throw ValidationError("Choi matrix is not invariant under any of the diagonal groups");
  const MatrixTriple t = extract_triple(x);
  const Matrix dA = diag_part(t.A);
  if (close(t.B, dA, tol)) return CovariantMap{InvariantClass::LDUI, t};
  if (close(t.C, dA, tol)) return CovariantMap{InvariantClass::CLDUI, t};
  return CovariantMap{InvariantClass::LDOI, t};
}

std::string to_string(EbStatus s) {
  switch (s) {
    case EbStatus::certified:
      return "certified";
    case EbStatus::refuted:
      return "refuted";
    case EbStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

MapProperties map_properties(const CovariantMap& m, const Tolerance& tol) {
  const MatrixTriple t = promote(m.cls, m.triple);
  validate(t, tol);
  MapProperties p;
  const double sa = max_abs(t.A);
  p.herm_preserving = t.A.imag().cwiseAbs().maxCoeff() <= tol.bound(sa) && is_hermitian(t.B, tol) &&
                      is_hermitian(t.C, tol);
  p.cp = psd_test(t, tol).passed();
  p.ccp = psd_test(leg_permutation(t, LegPermutation::gamma), tol).passed();
  const Vector rows = t.A.rowwise().sum();
  const Vector cols = t.A.colwise().sum().transpose();
  p.unital = (rows.array() - 1.0).abs().maxCoeff() <= tol.bound(1.0);
  p.trace_preserving = (cols.array() - 1.0).abs().maxCoeff() <= tol.bound(1.0);
  p.channel = p.cp && p.trace_preserving;
  if (!p.cp) {
    p.eb = EbStatus::refuted;
  } else if (certify_tcp(t, tol)) {
    p.eb = EbStatus::certified;
  } else if (!tcp_necessary_battery(t, tol).passed()) {
    p.eb = EbStatus::refuted;
  } else {
    p.eb = EbStatus::inconclusive;
  }
  return p;
}

CovariantMap adjoint(const CovariantMap& m) {
  const MatrixTriple t = promote(m.cls, m.triple);
  return CovariantMap{m.cls, MatrixTriple{t.A.adjoint(), t.B.conjugate(), t.C.adjoint()}};
}

CovariantMap transpose_compose(const CovariantMap& m, TransposeSide side) {
  const MatrixTriple t = promote(m.cls, m.triple);
  InvariantClass c = m.cls;
  if (c == InvariantClass::LDUI)
    c = InvariantClass::CLDUI;
  else if (c == InvariantClass::CLDUI)
    c = InvariantClass::LDUI;
  if (side == TransposeSide::pre) return CovariantMap{c, MatrixTriple{t.A, t.C, t.B}};
  return CovariantMap{c, MatrixTriple{t.A, t.C.transpose(), t.B.transpose()}};
}

cplx pairing(const MatrixTriple& t1, const MatrixTriple& t2) {
  require_same_dim(t1.dim(), t2.dim());
  return (t1.A * t2.A.transpose()).trace() + (tilde(t1.B) * tilde(t2.B)).trace() +
         (tilde(t1.C) * tilde(t2.C)).trace();
}

CertificateReport positivity_necessary(const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  CertificateReport r;
  const RealMatrix a = t.A.real().cwiseMax(0.0);
  const bool ewp = is_ewp(t.A, tol);
  r.add("A_ewp", ewp ? 0.0 : -std::max(-t.A.real().minCoeff(), t.A.imag().cwiseAbs().maxCoeff()), tol.abs_eps);
  r.add("B_hermitian", -max_abs(t.B - t.B.adjoint()), tol.bound(max_abs(t.B)));
  r.add("C_hermitian", -max_abs(t.C - t.C.adjoint()), tol.bound(max_abs(t.C)));
  const Index d = t.dim();
  double margin = 0.0;
  bool any = false;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double v = std::sqrt(a(i, i) * a(j, j)) + std::sqrt(a(i, j) * a(j, i)) - std::abs(t.B(i, j)) -
                       std::abs(t.C(i, j));
      margin = any ? std::min(margin, v) : v;
      any = true;
    }
  r.add("pair_bound", margin, tol.bound(std::max({max_abs(t.A), max_abs(t.B), max_abs(t.C)})));
  return r;
}

CriterionResult decomposable_sufficient(const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  if (!is_ewp(t.A, tol) || !is_hermitian(t.B, tol) || !is_hermitian(t.C, tol))
    return CriterionResult{false, 0.0, "A is not entrywise non-negative or B, C are not self-adjoint"};
  const Index d = t.dim();
  if (d == 1) return CriterionResult{true, t.A(0, 0).real(), "d = 1"};
  const RealMatrix a = t.A.real().cwiseMax(0.0);
  double margin = 0.0;
  bool any = false;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double v = std::sqrt(a(i, i) * a(j, j)) / static_cast<double>(d - 1) + std::sqrt(a(i, j) * a(j, i)) -
                       std::abs(t.B(i, j)) - std::abs(t.C(i, j));
      margin = any ? std::min(margin, v) : v;
      any = true;
    }
  const double allow = tol.bound(std::max({max_abs(t.A), max_abs(t.B), max_abs(t.C)}));
  if (margin >= -allow) return CriterionResult{true, margin, "pairwise bound holds"};
  return CriterionResult{false, margin, "pairwise bound fails"};
}

FalsifierResult positivity_falsifier(const MatrixTriple& t, std::int64_t samples, std::uint64_t seed,
                                     const Tolerance& tol) {
  validate(t, tol);
  if (samples < 0) throw ValidationError("sample budget must be non-negative");
  const Index d = t.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&]() {
    Vector x(d);
    for (Index i = 0; i < d; ++i) x(i) = cplx(normal(rng), normal(rng));
    const double n = x.norm();
    return n > 0.0 ? Vector(x / n) : Vector(Vector::Ones(d) / std::sqrt(static_cast<double>(d)));
  };
  const double allow = tol.bound(3.0 * std::max({max_abs(t.A), max_abs(t.B), max_abs(t.C)}));
  FalsifierResult r;
  for (std::int64_t s = 0; s < samples; ++s) {
    Vector v = draw(), w = draw();
    const cplx val = pairing(t, triple_of(TcpWitness{v, w}));
    r.tried = s + 1;
    if (val.real() < -allow || std::abs(val.imag()) > allow) {
      r.found = true;
      r.v = v;
      r.w = w;
      r.value = val;
      return r;
    }
  }
  return r;
}

MatrixTriple compose_triples(const MatrixTriple& t1, const MatrixTriple& t2) {
  require_same_dim(t1.dim(), t2.dim());
  const Matrix AA = t1.A * t2.A;
  Matrix fix = AA - 2.0 * hadamard(t1.A, t2.A);
  fix = diag_part(fix);
  MatrixTriple out;
  out.A = AA;
  out.B = hadamard(t1.B, t2.B) + hadamard(t1.C, t2.C.transpose()) + fix;
  out.C = hadamard(t1.B, t2.C) + hadamard(t1.C, t2.B.transpose()) + fix;
  return out;
}

InvariantClass composed_class(InvariantClass c1, InvariantClass c2) {
  if (c1 == InvariantClass::LDOI || c2 == InvariantClass::LDOI) return InvariantClass::LDOI;
  if (c1 == c2) return InvariantClass::CLDUI;
  return InvariantClass::LDUI;
}

CovariantMap compose(const CovariantMap& m1, const CovariantMap& m2) {
  const InvariantClass c = composed_class(m1.cls, m2.cls);
  const MatrixTriple t = compose_triples(promote(m1.cls, m1.triple), promote(m2.cls, m2.triple));
  return CovariantMap{c, promote(c, t)};
}

MatrixPair compose1(const MatrixPair& p1, const MatrixPair& p2) {
  require_same_dim(p1.dim(), p2.dim());
  const Matrix AA = p1.A * p2.A;
  return MatrixPair{AA, hadamard(p1.B, p2.B.transpose()) + diag_part(AA - hadamard(p1.B, p2.B))};
}

MatrixPair compose2(const MatrixPair& p1, const MatrixPair& p2) {
  require_same_dim(p1.dim(), p2.dim());
  const Matrix AA = p1.A * p2.A;
  return MatrixPair{AA, hadamard(p1.B, p2.B) + diag_part(AA - hadamard(p1.B, p2.B))};
}

MatrixTriple partial_action(const CovariantMap& m, const MatrixTriple& t) {
  return compose_triples(promote(m.cls, m.triple), t);
}

Vector vec(const Matrix& P) {
  const Index d = P.rows();
  Vector v(d * P.cols());
  for (Index k = 0; k < d; ++k)
    for (Index i = 0; i < P.cols(); ++i) v(k * P.cols() + i) = P(k, i);
  return v;
}

Matrix unvec(const Vector& v, Index d) {
  if (v.size() != d * d) throw ValidationError("vector length is not d^2");
  Matrix P(d, d);
  for (Index k = 0; k < d; ++k)
    for (Index i = 0; i < d; ++i) P(k, i) = v(k * d + i);
  return P;
}

Matrix apply_kraus(const KrausSet& k, const Matrix& Z) {
  if (k.left.size() != k.right.size()) throw ValidationError("Kraus lists differ in length");
  Matrix out = Matrix::Zero(Z.rows(), Z.cols());
  for (std::size_t i = 0; i < k.size(); ++i) out += k.left[i] * Z * k.right[i].adjoint();
  return out;
}

KrausSet kraus_from_choi(const BipartiteMatrix& J, const Tolerance& tol) {
  const Index d = bipartite_dim(J);
  KrausSet k;
  if (is_hermitian(J, tol)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(J));
    if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on the Choi matrix");
    const RealVector& lam = es.eigenvalues();
    const double top = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
    const double cut = std::max(tol.abs_eps, tol.rel_eps * top);
    for (Index q = lam.size() - 1; q >= 0; --q) {
      if (std::abs(lam(q)) <= cut) continue;
      const Matrix P = std::sqrt(std::abs(lam(q))) * unvec(es.eigenvectors().col(q), d);
      k.left.push_back(P);
      k.right.push_back(lam(q) > 0.0 ? P : Matrix(-P));
    }
    return k;
  }
  Eigen::JacobiSVD<Matrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cut = std::max(tol.abs_eps, tol.rel_eps * (s.size() ? s(0) : 0.0));
  for (Index q = 0; q < s.size(); ++q) {
    if (s(q) <= cut) continue;
    k.left.push_back(std::sqrt(s(q)) * unvec(svd.matrixU().col(q), d));
    k.right.push_back(std::sqrt(s(q)) * unvec(svd.matrixV().col(q), d));
  }
  return k;
}

KrausSet kraus_extract(const CovariantMap& m, const Tolerance& tol) { return kraus_from_choi(choi(m), tol); }

bool covariance_span_test(const KrausSet& k, InvariantClass c, const Tolerance& tol) {
  if (k.left.size() != k.right.size()) throw ValidationError("Kraus lists differ in length");
  if (k.size() == 0) return true;
  const Index d = k.left.front().rows();
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.left[i].rows() != d || k.left[i].cols() != d || k.right[i].rows() != d || k.right[i].cols() != d)
      throw ValidationError("Kraus operators must all be d x d");
  const Matrix P = stack(k.left), Q = stack(k.right);
  const Index r = P.cols();
  if (numerical_rank(P, tol) != r || numerical_rank(Q, tol) != r)
    throw ValidationError("Kraus set is not minimal");
  Eigen::ColPivHouseholderQR<Matrix> qp(P), qq(Q);
  const Matrix I = Matrix::Identity(r, r);
  for (const Matrix& g : generators(c, d)) {
    const Matrix P2 = g * P, Q2 = g * Q;
    const Matrix T = qp.solve(P2), S = qq.solve(Q2);
    if (max_abs(P * T - P2) > tol.bound(max_abs(P))) return false;
    if (max_abs(Q * S - Q2) > tol.bound(max_abs(Q))) return false;
    const double scale = max_abs(T) * max_abs(S) * static_cast<double>(r);
    if (max_abs(T * S.adjoint() - I) > tol.bound(scale)) return false;
  }
  return true;
}

}  // namespace ldoi
