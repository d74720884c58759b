#include "ldoi/matcore.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace ldoi {

Tolerance Tolerance::from_env() {
  Tolerance tol;
  const char* env = std::getenv("LDOI_TOL");
  if (env == nullptr || *env == '\0') return tol;
  std::string s(env);
  char* end = nullptr;
  double a = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || !(a >= 0.0) || !std::isfinite(a))
    throw ValidationError("LDOI_TOL must be 'abs' or 'abs,rel' with non-negative numbers");
  tol.abs_eps = a;
  if (*end == ',') {
    const char* rest = end + 1;
    double r = std::strtod(rest, &end);
    if (end == rest || !(r >= 0.0) || !std::isfinite(r))
      throw ValidationError("LDOI_TOL relative part must be a non-negative number");
    tol.rel_eps = r;
  }
  if (*end != '\0') throw ValidationError("trailing characters in LDOI_TOL");
  return tol;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + " has non-finite entries");
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  require_square(m, "matrix");
  return max_abs(m - m.adjoint()) <= tol.bound(max_abs(m));
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  require_square(m, "matrix");
  if (m.rows() == 0) return RealVector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

double min_hermitian_eigenvalue(const Matrix& m) {
  RealVector ev = hermitian_eigenvalues(m);
  return ev.size() ? ev(0) : 0.0;
}

bool is_psd(const Matrix& m, const Tolerance& tol) {
  require_square(m, "matrix");
  if (m.rows() == 0) return true;
  Matrix h = hermitian_part(m);
  if (max_abs(h - m) > tol.bound(max_abs(m))) return false;
  RealVector ev = hermitian_eigenvalues(h);
  double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol.bound(radius);
}

bool is_ewp(const Matrix& m, const Tolerance& tol) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      if (std::abs(z.imag()) > tol.abs_eps || z.real() < -tol.abs_eps) return false;
    }
  return true;
}

Matrix comparison_matrix(const Matrix& m) {
  require_square(m, "matrix");
  Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out(i, j) = (i == j) ? std::abs(m(i, j)) : -std::abs(m(i, j));
  return out;
}

bool is_diagonally_dominant(const Matrix& m, const Tolerance& tol) {
  require_square(m, "matrix");
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      row += std::abs(m(i, j));
      col += std::abs(m(j, i));
    }
    const double dii = m(i, i).real();
    if (dii < row - tol.abs_eps || dii < col - tol.abs_eps) return false;
  }
  return true;
}

double matrix_norm(const Matrix& m, Norm kind) {
  switch (kind) {
    case Norm::entrywise_one:
      return m.cwiseAbs().sum();
    case Norm::frobenius:
      return m.norm();
    case Norm::trace: {
      if (m.size() == 0) return 0.0;
      Eigen::JacobiSVD<Matrix> svd(m);
      return svd.singularValues().sum();
    }
  }
  return 0.0;
}

cplx phase_of(cplx z) {
  const double r = std::abs(z);
  return r == 0.0 ? cplx(1.0, 0.0) : z / r;
}

PhaseSplit phase_split(const Matrix& m) {
  PhaseSplit out{Matrix(m.rows(), m.cols()), Matrix(m.rows(), m.cols())};
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      out.abs(i, j) = std::abs(m(i, j));
      out.phase(i, j) = phase_of(m(i, j));
    }
  return out;
}

Matrix tilde(const Matrix& m) {
  require_square(m, "matrix");
  Matrix out = m;
  out.diagonal().setZero();
  return out;
}

Matrix diag_part(const Matrix& m) {
  require_square(m, "matrix");
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  out.diagonal() = m.diagonal();
  return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("Hadamard product needs equal shapes");
  return a.cwiseProduct(b);
}

Index numerical_rank(const Matrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double cut = std::max(tol.abs_eps, tol.rel_eps * s(0));
  Index r = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > cut) ++r;
  return r;
}

}  // namespace ldoi
