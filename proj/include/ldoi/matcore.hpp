#ifndef LDOI_MATCORE_HPP
#define LDOI_MATCORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ldoi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Bad input: wrong shapes, broken invariants, violated preconditions.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numerical routine did not produce a usable answer.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-9;

  // Admissible error for a quantity of magnitude `scale`.
  double bound(double scale) const { return abs_eps + rel_eps * scale; }

  // Reads LDOI_TOL as "abs" or "abs,rel"; falls back to the defaults.
  static Tolerance from_env();
};

void require_square(const Matrix& m, const char* what);
void require_finite(const Matrix& m, const char* what);

double max_abs(const Matrix& m);
Matrix hermitian_part(const Matrix& m);
bool is_hermitian(const Matrix& m, const Tolerance& tol = {});

// Eigenvalues of the Hermitian part, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);
double min_hermitian_eigenvalue(const Matrix& m);

bool is_psd(const Matrix& m, const Tolerance& tol = {});
bool is_ewp(const Matrix& m, const Tolerance& tol = {});

Matrix comparison_matrix(const Matrix& m);
bool is_diagonally_dominant(const Matrix& m, const Tolerance& tol = {});

enum class Norm { entrywise_one, trace, frobenius };
double matrix_norm(const Matrix& m, Norm kind);

struct PhaseSplit {
  Matrix abs;
  Matrix phase;
};
// phase(0) = 1, so Abs ⊙ Phase = M holds for every entry.
PhaseSplit phase_split(const Matrix& m);
cplx phase_of(cplx z);

// Zero diagonal, off-diagonal kept.
Matrix tilde(const Matrix& m);
// Diagonal matrix carrying the diagonal of m.
Matrix diag_part(const Matrix& m);
Matrix hadamard(const Matrix& a, const Matrix& b);

// Numerical rank with cutoff max(abs_eps, rel_eps * sigma_max).
Index numerical_rank(const Matrix& m, const Tolerance& tol = {});

}  // namespace ldoi

#endif
