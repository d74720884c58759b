#include "ldoi/gallery.hpp"

#include <cmath>
#include <numbers>

namespace ldoi::gallery {

namespace {

void require_dim(Index d, Index min = 1) {
  if (d < min) throw ValidationError("dimension must be at least " + std::to_string(min));
}

CovariantMap cduc_pair(const Matrix& A, const Matrix& B) {
  return CovariantMap{InvariantClass::CLDUI, embed(InvariantClass::CLDUI, MatrixPair{A, B})};
}

CovariantMap duc_pair(const Matrix& A, const Matrix& C) {
  return CovariantMap{InvariantClass::LDUI, embed(InvariantClass::LDUI, MatrixPair{A, C})};
}

}  // namespace

ClassedTriple diagonal(const Matrix& A) {
  require_square(A, "A");
  require_dim(A.rows());
  const Matrix D = diag_part(A);
  return ClassedTriple{InvariantClass::LDUI, MatrixTriple{A, D, D}};
}

ClassedTriple werner(double a, double b, Index d) {
  require_dim(d);
  const Matrix I = Matrix::Identity(d, d), J = Matrix::Ones(d, d);
  const Matrix A = b * I + a * J, C = a * I + b * J;
  return ClassedTriple{InvariantClass::LDUI, embed(InvariantClass::LDUI, MatrixPair{A, C})};
}

ClassedTriple isotropic(double a, double b, Index d) {
  require_dim(d);
  const Matrix I = Matrix::Identity(d, d), J = Matrix::Ones(d, d);
  const Matrix A = b * I + a * J, B = a * I + b * J;
  return ClassedTriple{InvariantClass::CLDUI, embed(InvariantClass::CLDUI, MatrixPair{A, B})};
}

ClassedTriple dicke(const Matrix& Y) {
  require_square(Y, "Y");
  require_dim(Y.rows());
  if (max_abs(Y - Y.transpose()) > 0.0 || Y.imag().cwiseAbs().maxCoeff() > 0.0)
    throw ValidationError("dicke needs a real symmetric Y");
  const Matrix A = diag_part(Y) + 0.5 * tilde(Y);
  return ClassedTriple{InvariantClass::LDUI, embed(InvariantClass::LDUI, MatrixPair{A, A})};
}

ClassedTriple pt_invariant(const Matrix& A, const Matrix& B, PtSide side) {
  MatrixTriple t{A, B, side == PtSide::B ? B : Matrix(B.transpose())};
  validate(t);
  return ClassedTriple{InvariantClass::LDOI, t};
}

ClassedTriple a_equals_j(const Matrix& B, const Matrix& C) {
  require_square(B, "B");
  const Index d = B.rows();
  MatrixTriple t{Matrix::Ones(d, d), B, C};
  validate(t);
  return ClassedTriple{InvariantClass::LDOI, t};
}

ClassedTriple canonical_npt(double a, double b, double c, Index d) {
  require_dim(d, 2);
  Matrix A = Matrix::Constant(d, d, (c + b) / 2.0);
  Matrix C = Matrix::Constant(d, d, (c - b) / 2.0);
  A.diagonal().setConstant(a);
  C.diagonal().setConstant(a);
  return ClassedTriple{InvariantClass::LDUI, embed(InvariantClass::LDUI, MatrixPair{A, C})};
}

ClassedTriple edge_3x3(double b, double theta, const Vector& eta, const Vector& zeta, const Vector& xi,
                       const Tolerance& tol) {
  if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("edge_3x3 needs b > 0");
  const double third = std::numbers::pi / 3.0;
  if (!(theta > -third && theta < third) || theta == 0.0)
    throw ValidationError("edge_3x3 needs theta in (-pi/3, pi/3) without 0");
  if (eta.size() != 3 || zeta.size() != 3 || xi.size() != 3)
    throw ValidationError("edge_3x3 needs three vectors in C^3");
  const double n2 = 2.0 * std::cos(theta);
  for (const Vector* v : {&eta, &zeta, &xi})
    if (std::abs(v->squaredNorm() - n2) > tol.bound(n2))
      throw ValidationError("edge_3x3 vectors must have squared norm 2 cos(theta)");
  const cplx eta_xi = eta.dot(xi), zeta_xi = zeta.dot(xi), zeta_eta = zeta.dot(eta);
  for (cplx z : {eta_xi, zeta_xi, zeta_eta})
    if (std::abs(z) > 1.0 + tol.bound(1.0)) throw ValidationError("edge_3x3 overlaps must have modulus <= 1");
  const cplx e = std::polar(1.0, theta);
  Matrix A(3, 3), B = Matrix::Zero(3, 3), C = Matrix::Zero(3, 3);
  A << n2, 1.0 / b, b, b, n2, 1.0 / b, 1.0 / b, b, n2;
  B(0, 1) = -e;
  B(0, 2) = -std::conj(e);
  B(1, 0) = -std::conj(e);
  B(1, 2) = -e;
  B(2, 0) = -e;
  B(2, 1) = -std::conj(e);
  B.diagonal() = A.diagonal();
  // Eigen's dot conjugates the first argument: eta.dot(xi) = <eta|xi>.
  C(0, 1) = eta_xi;
  C(1, 0) = std::conj(eta_xi);
  C(0, 2) = zeta_xi;
  C(2, 0) = std::conj(zeta_xi);
  C(1, 2) = zeta_eta;
  C(2, 1) = std::conj(zeta_eta);
  C.diagonal() = A.diagonal();
  return ClassedTriple{InvariantClass::LDOI, MatrixTriple{A, B, C}};
}

ClassedTriple unit_rank_ldui(Index d, Index i, Index j, cplx alpha, cplx beta, cplx gamma, cplx delta) {
  require_dim(d, 2);
  if (i < 0 || j < 0 || i >= d || j >= d || i == j) throw ValidationError("unit_rank_ldui needs distinct indices");
  MatrixTriple t = MatrixTriple::zero(d);
  t.A(i, j) = alpha * gamma;
  t.C(i, j) = alpha * delta;
  t.C(j, i) = beta * gamma;
  t.A(j, i) = beta * delta;
  return ClassedTriple{InvariantClass::LDUI, t};
}

ClassedTriple nontcp_fixture() {
  Matrix A(3, 3), B(3, 3), C(3, 3);
  A << 1, 0, 1, 0, 1, 1, 1, 1, 1;
  B << 1, 0, -1, 0, 1, 0, -1, 0, 1;
  C << 1, 0, 0, 0, 1, -1, 0, -1, 1;
  return ClassedTriple{InvariantClass::LDOI, MatrixTriple{A, B, C}};
}

CovariantMap choi_general(const Matrix& A) {
  require_square(A, "A");
  require_dim(A.rows());
  const Index d = A.rows();
  const Matrix B = diag_part(A) - tilde(Matrix::Ones(d, d));
  return cduc_pair(A, B);
}

CovariantMap choi_cho(double a, double b, double c) {
  Matrix A(3, 3);
  A << a, b, c, c, a, b, b, c, a;
  return choi_general(A);
}

CovariantMap choi_kye(double a, double c1, double c2, double c3) {
  Matrix A(3, 3);
  A << a, 0, c1, c2, a, 0, 0, c3, a;
  return choi_general(A);
}

Matrix cyclic_shift(Index d) {
  require_dim(d);
  Matrix S = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) S((j + 1) % d, j) = 1.0;
  return S;
}

CovariantMap tau(Index d, Index k) {
  require_dim(d, 2);
  if (k < 1 || k > d - 1) throw ValidationError("tau needs 1 <= k <= d - 1");
  const Matrix S = cyclic_shift(d);
  Matrix A = static_cast<double>(d - k - 1) * Matrix::Identity(d, d);
  Matrix P = Matrix::Identity(d, d);
  for (Index j = 1; j <= k; ++j) {
    P = S * P;
    A += P;
  }
  return choi_general(A);
}

CovariantMap lambda(Index d) {
  require_dim(d, 2);
  const double f = 1.0 / static_cast<double>(d - 1), g = 1.0 / std::sqrt(static_cast<double>(d - 1));
  Matrix A = Matrix::Zero(d, d);
  A.topLeftCorner(d - 1, d - 1).setConstant(f);
  A(d - 1, d - 1) = 1.0;
  Matrix C = diag_part(A), B = diag_part(A);
  C(d - 1, d - 2) = C(d - 2, d - 1) = g;
  for (Index j = 0; j + 2 < d; ++j) B(d - 1, j) = B(j, d - 1) = g;
  return CovariantMap{InvariantClass::LDOI, MatrixTriple{A, B, C}};
}

CovariantMap schur(const Matrix& S) {
  require_square(S, "S");
  require_dim(S.rows());
  return cduc_pair(diag_part(S), S);
}

CovariantMap depolarizing(Index d) {
  require_dim(d);
  return classical(Matrix::Ones(d, d));
}

CovariantMap dephasing(Index d) {
  require_dim(d);
  return classical(Matrix::Identity(d, d));
}

CovariantMap classical(const Matrix& A) {
  require_square(A, "A");
  require_dim(A.rows());
  const Matrix D = diag_part(A);
  return CovariantMap{InvariantClass::LDUI, MatrixTriple{A, D, D}};
}

CovariantMap uc(double a, double b, Index d) {
  require_dim(d);
  const Matrix I = Matrix::Identity(d, d), J = Matrix::Ones(d, d);
  return duc_pair(b * I + a * J, a * I + b * J);
}

CovariantMap cuc(double a, double b, Index d) {
  require_dim(d);
  const Matrix I = Matrix::Identity(d, d), J = Matrix::Ones(d, d);
  return cduc_pair(b * I + a * J, a * I + b * J);
}

CovariantMap diag_preserving(const Matrix& X, const Matrix& Y) {
  require_square(X, "X");
  require_square(Y, "Y");
  require_dim(X.rows());
  if (X.rows() != Y.rows()) throw ValidationError("X and Y must have equal size");
  const Index d = X.rows();
  const Matrix I = Matrix::Identity(d, d);
  return CovariantMap{InvariantClass::LDOI, MatrixTriple{I, tilde(X) + I, tilde(Y) + I}};
}

CovariantMap identity_map(Index d) {
  require_dim(d);
  return cduc_pair(Matrix::Identity(d, d), Matrix::Ones(d, d));
}

CovariantMap transposition(Index d) {
  require_dim(d);
  return duc_pair(Matrix::Identity(d, d), Matrix::Ones(d, d));
}

Matrix stormer_A(double mu) {
  Matrix A(3, 3);
  const double s = 4.0 * mu * mu, t = 2.0 * mu;
  A << t, s, 1, 1, t, s, s, 1, t;
  return A;
}

StormerBundle stormer(double mu) {
  if (!std::isfinite(mu)) throw ValidationError("mu must be finite");
  const Matrix A = stormer_A(mu);
  const Matrix B = Matrix::Constant(3, 3, 2.0 * mu);
  return StormerBundle{MatrixTriple{A, B, diag_part(A)}, choi_cho(1.0, mu, 0.0)};
}

ProjectorKind projector_kind_from_string(const std::string& s) {
  if (s == "symmetric_Ps" || s == "Ps") return ProjectorKind::symmetric_Ps;
  if (s == "antisymmetric_Pa" || s == "Pa") return ProjectorKind::antisymmetric_Pa;
  if (s == "flip_F" || s == "F") return ProjectorKind::flip_F;
  if (s == "maxent_Pomega" || s == "Pomega") return ProjectorKind::maxent_Pomega;
  if (s == "equal_Peq" || s == "Peq") return ProjectorKind::equal_Peq;
  throw ValidationError("unknown projector kind '" + s + "'");
}

std::string to_string(ProjectorKind k) {
  switch (k) {
    case ProjectorKind::symmetric_Ps:
      return "symmetric_Ps";
    case ProjectorKind::antisymmetric_Pa:
      return "antisymmetric_Pa";
    case ProjectorKind::flip_F:
      return "flip_F";
    case ProjectorKind::maxent_Pomega:
      return "maxent_Pomega";
    case ProjectorKind::equal_Peq:
      return "equal_Peq";
  }
  return "flip_F";
}

BipartiteMatrix projector(ProjectorKind kind, Index d) {
  require_dim(d, 2);
  const Index n = d * d;
  Matrix F = Matrix::Zero(n, n);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) F(b * d + a, a * d + b) = 1.0;
  const Matrix I = Matrix::Identity(n, n);
  switch (kind) {
    case ProjectorKind::flip_F:
      return F;
    case ProjectorKind::symmetric_Ps:
      return (I + F) / 2.0;
    case ProjectorKind::antisymmetric_Pa:
      return (I - F) / 2.0;
    case ProjectorKind::equal_Peq: {
      Matrix P = Matrix::Zero(n, n);
      for (Index i = 0; i < d; ++i) P(i * d + i, i * d + i) = 1.0;
      return P;
    }
    case ProjectorKind::maxent_Pomega: {
      Vector psi = Vector::Zero(n);
      for (Index i = 0; i < d; ++i) psi(i * d + i) = 1.0;
      return psi * psi.adjoint() / static_cast<double>(d);
    }
  }
  return F;
}

std::vector<std::string> family_names() {
  return {"diagonal",  "werner",     "isotropic",   "dicke",        "pt_invariant", "a_equals_j",
          "canonical_npt", "edge_3x3", "unit_rank_ldui", "nontcp_fixture", "choi_general", "choi_cho",
          "choi_kye",  "tau",        "lambda",      "schur",        "depolarizing", "dephasing",
          "classical", "uc",         "cuc",         "diag_preserving", "identity",  "transposition",
          "stormer",   "projector"};
}

}  // namespace ldoi::gallery
