#ifndef LDOI_MAPS_HPP
#define LDOI_MAPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldoi/cones.hpp"
#include "ldoi/triple.hpp"

namespace ldoi {

// Map classes share the invariant-class tag of their Choi matrices:
// DUC <-> LDUI, CDUC <-> CLDUI, DOC <-> LDOI.
std::string map_class_name(InvariantClass c);
InvariantClass map_class_from_name(const std::string& s);

struct CovariantMap {
  InvariantClass cls = InvariantClass::LDOI;
  MatrixTriple triple;

  Index dim() const { return triple.dim(); }
};

// Promotes the triple to the class and validates it.
CovariantMap make_map(InvariantClass c, const MatrixTriple& t, const Tolerance& tol = {});

struct KrausSet {
  std::vector<Matrix> left;   // P_i
  std::vector<Matrix> right;  // Q_i; the map is Z -> sum_i P_i Z Q_i^*
  std::size_t size() const { return left.size(); }
};

Matrix apply(const CovariantMap& m, const Matrix& Z);
BipartiteMatrix choi(const CovariantMap& m);
// Tags the tightest class: LDUI if B = diag A, CLDUI if C = diag A, else LDOI.
CovariantMap from_choi(const BipartiteMatrix& x, const Tolerance& tol = {});

enum class EbStatus { certified, refuted, inconclusive };
std::string to_string(EbStatus s);

struct MapProperties {
  bool herm_preserving = false;
  bool cp = false;
  bool ccp = false;
  bool unital = false;
  bool trace_preserving = false;
  bool channel = false;
  EbStatus eb = EbStatus::inconclusive;
};
MapProperties map_properties(const CovariantMap& m, const Tolerance& tol = {});

// (A^*, conj B, C^*); for Hermiticity-preserving maps this is (A^T, B^T, C).
CovariantMap adjoint(const CovariantMap& m);
enum class TransposeSide { pre, post };
CovariantMap transpose_compose(const CovariantMap& m, TransposeSide side);

// Tr(A D^T) + Tr(B~ E~) + Tr(C~ F~) = Tr[X(t1) X(t2)].
cplx pairing(const MatrixTriple& t1, const MatrixTriple& t2);

// Failure certifies that the map is not positive.
CertificateReport positivity_necessary(const MatrixTriple& t, const Tolerance& tol = {});
CriterionResult decomposable_sufficient(const MatrixTriple& t, const Tolerance& tol = {});

struct FalsifierResult {
  bool found = false;
  Vector v, w;
  cplx value = 0.0;  // pairing with the extremal TCP triple of (v, w)
  std::int64_t tried = 0;
};
FalsifierResult positivity_falsifier(const MatrixTriple& t, std::int64_t samples, std::uint64_t seed,
                                     const Tolerance& tol = {});

// Triple algebra of composition: the result describes m1 after m2.
MatrixTriple compose_triples(const MatrixTriple& t1, const MatrixTriple& t2);
InvariantClass composed_class(InvariantClass c1, InvariantClass c2);
CovariantMap compose(const CovariantMap& m1, const CovariantMap& m2);
MatrixPair compose1(const MatrixPair& p1, const MatrixPair& p2);
MatrixPair compose2(const MatrixPair& p1, const MatrixPair& p2);
// Triple of [Phi ⊗ id](X(t)).
MatrixTriple partial_action(const CovariantMap& m, const MatrixTriple& t);

Matrix apply_kraus(const KrausSet& k, const Matrix& Z);
// Minimal factorisation of an arbitrary Choi matrix, J = sum_i |vec P_i><vec Q_i|.
KrausSet kraus_from_choi(const BipartiteMatrix& J, const Tolerance& tol = {});
KrausSet kraus_extract(const CovariantMap& m, const Tolerance& tol = {});
// Row-major vectorisation used by the Choi correspondence.
Vector vec(const Matrix& P);
Matrix unvec(const Vector& v, Index d);

bool covariance_span_test(const KrausSet& k, InvariantClass c, const Tolerance& tol = {});

}  // namespace ldoi

#endif
