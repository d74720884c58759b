#ifndef LDOI_GALLERY_HPP
#define LDOI_GALLERY_HPP

#include <string>
#include <vector>

#include "ldoi/maps.hpp"
#include "ldoi/triple.hpp"

namespace ldoi::gallery {

struct ClassedTriple {
  InvariantClass cls;
  MatrixTriple triple;
};

// Bipartite matrix families.
ClassedTriple diagonal(const Matrix& A);
ClassedTriple werner(double a, double b, Index d);
ClassedTriple isotropic(double a, double b, Index d);
ClassedTriple dicke(const Matrix& Y);
enum class PtSide { B, B_transpose };
ClassedTriple pt_invariant(const Matrix& A, const Matrix& B, PtSide side);
ClassedTriple a_equals_j(const Matrix& B, const Matrix& C);
ClassedTriple canonical_npt(double a, double b, double c, Index d);
ClassedTriple edge_3x3(double b, double theta, const Vector& eta, const Vector& zeta, const Vector& xi,
                       const Tolerance& tol = {});
ClassedTriple unit_rank_ldui(Index d, Index i, Index j, cplx alpha, cplx beta, cplx gamma, cplx delta);
// PPT triple that is not TCP; both pairs (A, B) and (A, C) are PCP.
ClassedTriple nontcp_fixture();

// Linear map families.
CovariantMap choi_general(const Matrix& A);
CovariantMap choi_cho(double a, double b, double c);
CovariantMap choi_kye(double a, double c1, double c2, double c3);
// Cyclic shift with S_ij = 1 iff i = j + 1 (mod d).
Matrix cyclic_shift(Index d);
CovariantMap tau(Index d, Index k);
CovariantMap lambda(Index d);
CovariantMap schur(const Matrix& S);
CovariantMap depolarizing(Index d);
CovariantMap dephasing(Index d);
CovariantMap classical(const Matrix& A);
CovariantMap uc(double a, double b, Index d);
CovariantMap cuc(double a, double b, Index d);
CovariantMap diag_preserving(const Matrix& X, const Matrix& Y);
CovariantMap identity_map(Index d);
CovariantMap transposition(Index d);

struct StormerBundle {
  MatrixTriple state;       // (A(mu), B(mu), diag A(mu))
  CovariantMap witness_map;  // choi_cho(1, mu, 0)
};
Matrix stormer_A(double mu);
StormerBundle stormer(double mu);

enum class ProjectorKind { symmetric_Ps, antisymmetric_Pa, flip_F, maxent_Pomega, equal_Peq };
ProjectorKind projector_kind_from_string(const std::string& s);
std::string to_string(ProjectorKind k);
BipartiteMatrix projector(ProjectorKind kind, Index d);

std::vector<std::string> family_names();

}  // namespace ldoi::gallery

#endif
