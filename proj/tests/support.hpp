#ifndef LDOI_TESTS_SUPPORT_HPP
#define LDOI_TESTS_SUPPORT_HPP

// Random generators and dense reference implementations shared by the tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ldoi/cones.hpp"
#include "ldoi/maps.hpp"
#include "ldoi/triple.hpp"

namespace ldoi::testing {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return gauss_(gen_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  cplx cnormal() { return {normal(), normal()}; }

  Matrix matrix(Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }
  Matrix real_matrix(Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }
  Vector vector(Index n) { return matrix(n, 1).col(0); }

  // Arbitrary triple with consistent diagonals.
  MatrixTriple triple(Index d) {
    MatrixTriple t(matrix(d, d), matrix(d, d), matrix(d, d));
    t.B.diagonal() = t.A.diagonal();
    t.C.diagonal() = t.A.diagonal();
    return t;
  }
  // Triple whose built matrix is Hermitian: A real, B and C Hermitian.
  MatrixTriple hermitian_triple(Index d) {
    MatrixTriple t = triple(d);
    t.A = t.A.real().cast<cplx>();
    t.B = hermitian_part(t.B);
    t.C = hermitian_part(t.C);
    t.B.diagonal() = t.A.diagonal();
    t.C.diagonal() = t.A.diagonal();
    return t;
  }
  // In the given class: the ignored slot equals diag A.
  MatrixTriple triple_in(InvariantClass c, Index d) { return promote(c, triple(d)); }

  TcpWitness witness(Index d, Index width) { return {matrix(d, width), matrix(d, width)}; }

  // Haar-distributed unitary from the QR of a Gaussian matrix.
  Matrix unitary(Index n) {
    Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < n; ++k) q.col(k) *= phase_of(r(k, k));
    return q;
  }

private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

inline Index fused(Index i1, Index i2, Index d) { return i1 * d + i2; }

// Element of the bipartite matrix by its four legs: X(i1 i2, j1 j2).
struct Legs {
  Index i1, i2, j1, j2;
};

// Builds the d^2 x d^2 matrix Y with Y(rule(legs)) = X(legs).
template <typename Rule>
BipartiteMatrix shuffle(const BipartiteMatrix& X, Index d, Rule rule) {
  BipartiteMatrix Y = BipartiteMatrix::Zero(d * d, d * d);
  for (Index i1 = 0; i1 < d; ++i1)
    for (Index i2 = 0; i2 < d; ++i2)
      for (Index j1 = 0; j1 < d; ++j1)
        for (Index j2 = 0; j2 < d; ++j2) {
          const Legs l = rule(Legs{i1, i2, j1, j2});
          Y(fused(l.i1, l.i2, d), fused(l.j1, l.j2, d)) = X(fused(i1, i2, d), fused(j1, j2, d));
        }
  return Y;
}

inline BipartiteMatrix partial_transpose_dense(const BipartiteMatrix& X, Index d) {
  return shuffle(X, d, [](Legs l) { return Legs{l.i1, l.j2, l.j1, l.i2}; });
}

inline BipartiteMatrix realign_dense(const BipartiteMatrix& X, Index d) {
  return shuffle(X, d, [](Legs l) { return Legs{l.i1, l.j1, l.i2, l.j2}; });
}

inline double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

// Dense matrix of the linear map on row-major vec: vec(Phi(Z)) = L vec(Z).
inline Matrix dense_superoperator(const CovariantMap& m) {
  const Index d = m.dim();
  Matrix L(d * d, d * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      Matrix E = Matrix::Zero(d, d);
      E(a, b) = 1.0;
      L.col(a * d + b) = ldoi::vec(ldoi::apply(m, E));
    }
  return L;
}

// Choi matrix J = sum_ij Phi(E_ij) ⊗ E_ij of a superoperator given densely.
inline BipartiteMatrix choi_from_superoperator(const Matrix& L, Index d) {
  BipartiteMatrix J = BipartiteMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const Matrix out = unvec(L.col(i * d + j), d);
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) J(fused(a, i, d), fused(b, j, d)) = out(a, b);
    }
  return J;
}

// Dense separable matrix sum_k |v_k ⊗ w_k><v_k ⊗ w_k| from witness columns.
inline BipartiteMatrix dense_from_witness(const TcpWitness& w) {
  const Index d = w.V.rows();
  BipartiteMatrix X = BipartiteMatrix::Zero(d * d, d * d);
  for (Index k = 0; k < w.width(); ++k) {
    X += [&] {
      Vector psi(d * d);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) psi(fused(i, j, d)) = w.V(i, k) * w.W(j, k);
      return Matrix(psi * psi.adjoint());
    }();
  }
  return X;
}

}  // namespace ldoi::testing

#endif
