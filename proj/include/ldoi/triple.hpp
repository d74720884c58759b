#ifndef LDOI_TRIPLE_HPP
#define LDOI_TRIPLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ldoi/matcore.hpp"

namespace ldoi {

// Bipartite d^2 x d^2 matrices use the fused index i = i1 * d + i2.
using BipartiteMatrix = Matrix;

enum class InvariantClass { LDUI, CLDUI, LDOI };

std::string to_string(InvariantClass c);
InvariantClass class_from_string(const std::string& s);

struct MatrixTriple {
  Matrix A, B, C;

  MatrixTriple() = default;
  MatrixTriple(Matrix a, Matrix b, Matrix c) : A(std::move(a)), B(std::move(b)), C(std::move(c)) {}

  Index dim() const { return A.rows(); }
  static MatrixTriple zero(Index d);
};

struct MatrixPair {
  Matrix A, B;
  Index dim() const { return A.rows(); }
};

// Shapes, finiteness and diag(A) = diag(B) = diag(C).
void validate(const MatrixTriple& t, const Tolerance& tol = {});
void validate(const MatrixPair& p, const Tolerance& tol = {});

// Places the pair into the slot of the class and fills the other one with diag A.
// LDUI pairs (A, C) land in (A, diag A, C); CLDUI pairs (A, B) in (A, B, diag A).
MatrixTriple embed(InvariantClass c, const MatrixPair& p);
// Replaces the slot the class ignores by diag A.
MatrixTriple promote(InvariantClass c, const MatrixTriple& t);

MatrixTriple operator+(const MatrixTriple& x, const MatrixTriple& y);
MatrixTriple operator-(const MatrixTriple& x, const MatrixTriple& y);
MatrixTriple operator*(cplx s, const MatrixTriple& t);
double max_abs_diff(const MatrixTriple& x, const MatrixTriple& y);

Index bipartite_dim(const BipartiteMatrix& x);

BipartiteMatrix build(InvariantClass c, const MatrixTriple& t);
MatrixTriple extract_triple(const BipartiteMatrix& x);
BipartiteMatrix project(const BipartiteMatrix& x, InvariantClass c);

enum class AverageMode { exact_sign, mc_phase };
BipartiteMatrix average_oracle(const BipartiteMatrix& x, InvariantClass c, AverageMode mode,
                               std::int64_t samples = 0, std::uint64_t seed = 0);

bool is_invariant(const BipartiteMatrix& x, InvariantClass c, const Tolerance& tol = {});

struct Block {
  std::vector<std::pair<Index, Index>> labels;  // (i1, i2) of each basis vector
  Matrix m;
};
std::vector<Block> block_decomposition(const MatrixTriple& t, InvariantClass c);

Index rank_of(const MatrixTriple& t, InvariantClass c, const Tolerance& tol = {});
std::vector<cplx> spectrum(const MatrixTriple& t, InvariantClass c);
// Smallest eigenvalue of the Hermitian part of build(c, t), computed blockwise.
double min_eigenvalue(const MatrixTriple& t, InvariantClass c);

enum class LegPermutation { FXF, transpose, diag_swap, realign, gamma, gamma_left, F_left, F_right };
std::string to_string(LegPermutation p);
LegPermutation leg_permutation_from_string(const std::string& s);
MatrixTriple leg_permutation(const MatrixTriple& t, LegPermutation which);

MatrixTriple direct_sum(const MatrixTriple& t1, const MatrixTriple& t2);
MatrixTriple principal_subtriple(const MatrixTriple& t, const std::vector<Index>& I);

struct ConditionalExpectations {
  Matrix a_row, a_col;
  cplx trace;
  MatrixTriple id_diag;
  MatrixTriple id_trace_row;  // [id ⊗ trace] with trace(Z) = Tr(Z) I / d
  MatrixTriple id_trace_col;  // [trace ⊗ id]
};
ConditionalExpectations conditional_expectations(const MatrixTriple& t);

struct SymmetryFlags {
  bool self_adjoint, symmetric, bose_symmetric;
};
SymmetryFlags symmetry_flags(const MatrixTriple& t, const Tolerance& tol = {});

// Greedy nearest-pair matching after lexicographic sort; returns the largest matched distance.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace ldoi

#endif
