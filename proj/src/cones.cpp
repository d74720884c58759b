#include "ldoi/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ldoi {

namespace {

// Allowance for a product of two entries of magnitude `s`.
double product_allowance(const Tolerance& tol, double s) {
  return tol.abs_eps * std::max(1.0, s) + tol.rel_eps * s * s;
}

void check_witness_shape(const TcpWitness& w) {
  if (w.V.rows() != w.W.rows() || w.V.cols() != w.W.cols())
    throw ValidationError("witness matrices V and W must have equal shapes");
}

void add_psd_item(CertificateReport& r, const std::string& name, const Matrix& m, const Tolerance& tol) {
  const double defect = max_abs(m - m.adjoint());
  const double herm_allow = tol.bound(max_abs(m));
  if (defect > herm_allow) {
    r.add(name, -defect, herm_allow);
    return;
  }
  RealVector ev = hermitian_eigenvalues(m);
  if (ev.size() == 0) {
    r.add(name, 0.0, 0.0);
    return;
  }
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  r.add(name, ev(0), tol.bound(radius));
}

void add_hermitian_item(CertificateReport& r, const std::string& name, const Matrix& m, const Tolerance& tol) {
  r.add(name, -max_abs(m - m.adjoint()), tol.bound(max_abs(m)));
}

void add_ewp_item(CertificateReport& r, const Matrix& a, const Tolerance& tol) {
  double min_re = std::numeric_limits<double>::infinity();
  double max_im = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      min_re = std::min(min_re, a(i, j).real());
      max_im = std::max(max_im, std::abs(a(i, j).imag()));
    }
  if (a.size() == 0) min_re = 0.0;
  if (max_im > tol.abs_eps)
    r.add("A_ewp", -max_im, tol.abs_eps);
  else
    r.add("A_ewp", min_re, tol.abs_eps);
}

// min over i != j of Re A_ij Re A_ji - |M_ij|^2
void add_minor_item(CertificateReport& r, const std::string& name, const Matrix& a, const Matrix& m,
                    const Tolerance& tol) {
  const Index d = a.rows();
  double margin = 0.0;
  bool any = false;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double v = a(i, j).real() * a(j, i).real() - std::norm(m(i, j));
      margin = any ? std::min(margin, v) : v;
      any = true;
    }
  const double s = std::max(max_abs(a), max_abs(m));
  r.add(name, margin, product_allowance(tol, s));
}

double norm_gap(const Matrix& m) { return matrix_norm(m, Norm::entrywise_one) - matrix_norm(m, Norm::trace); }

double realignment_margin(const MatrixTriple& t) {
  const Index d = t.dim();
  double off = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) off += std::max(std::abs(t.B(i, j)), std::abs(t.C(i, j)));
  return norm_gap(t.A) - 2.0 * off;
}

bool close(const Matrix& x, const Matrix& y, const Tolerance& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return max_abs(x - y) <= tol.bound(std::max(max_abs(x), max_abs(y)));
}

Vector unit_root_vector(Index d, Index m) {
  Vector u(d);
  for (Index i = 0; i < d; ++i)
    u(i) = std::polar(1.0, std::numbers::pi * static_cast<double>(m * i) / static_cast<double>(d));
  return u;
}

Matrix real_part_matrix(const Matrix& a) { return a.real().cast<cplx>(); }

// Explicit PCP witness for (A, B) with B diagonally dominant and A_ij A_ji >= |B_ij|^2.
std::optional<TcpWitness> dominant_decomposition(const Matrix& a_in, const Matrix& b, const Tolerance& tol) {
  const Index d = a_in.rows();
  const RealMatrix a = a_in.real();
  const double s = std::max(max_abs(a_in), max_abs(b));
  const double allow = tol.bound(s);
  std::vector<Vector> vs, ws;
  RealMatrix piece = RealMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const double beta = std::abs(b(i, j));
      if (beta == 0.0) continue;
      if (a(i, j) <= 0.0 || a(j, i) <= 0.0) {
        if (beta > allow) return std::nullopt;
        continue;
      }
      const double rho = std::sqrt(a(i, j) / a(j, i));
      const cplx phi = b(i, j) / beta;
      Vector v = Vector::Zero(d), w = Vector::Zero(d);
      v(i) = std::sqrt(rho);
      v(j) = 1.0;
      w(i) = std::sqrt(beta / rho);
      w(j) = std::sqrt(beta) * std::conj(phi);
      vs.push_back(v);
      ws.push_back(w);
      piece(i, j) = beta * rho;
      piece(j, i) = beta / rho;
      piece(i, i) += beta;
      piece(j, j) += beta;
    }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double rem = a(i, j) - piece(i, j);
      if (rem < -allow) return std::nullopt;
      if (rem <= 0.0) continue;
      Vector v = Vector::Zero(d), w = Vector::Zero(d);
      v(i) = std::sqrt(rem);
      w(j) = 1.0;
      vs.push_back(v);
      ws.push_back(w);
    }
  TcpWitness out{Matrix::Zero(d, std::max<Index>(1, static_cast<Index>(vs.size()))),
                 Matrix::Zero(d, std::max<Index>(1, static_cast<Index>(vs.size())))};
  for (std::size_t k = 0; k < vs.size(); ++k) {
    out.V.col(static_cast<Index>(k)) = vs[k];
    out.W.col(static_cast<Index>(k)) = ws[k];
  }
  return out;
}

// Connected components of the graph with edges |B_ij| > 0.
std::vector<std::vector<Index>> components(const Matrix& b) {
  const Index d = b.rows();
  std::vector<int> seen(static_cast<std::size_t>(d), 0);
  std::vector<std::vector<Index>> out;
  for (Index s = 0; s < d; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Index> comp{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (Index j = 0; j < d; ++j)
        if (!seen[static_cast<std::size_t>(j)] && std::abs(b(comp[k], j)) > 0.0) {
          seen[static_cast<std::size_t>(j)] = 1;
          comp.push_back(j);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// Positive x with M(B) x >= 0 on each component: the bottom eigenvector of the comparison matrix.
std::optional<RealVector> comparison_scaling(const Matrix& b) {
  const Index d = b.rows();
  RealVector x = RealVector::Ones(d);
  const RealMatrix m = comparison_matrix(b).real();
  for (const auto& comp : components(b)) {
    if (comp.size() < 2) continue;
    const Index n = static_cast<Index>(comp.size());
    RealMatrix sub(n, n);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q) sub(p, q) = m(comp[p], comp[q]);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sub);
    if (es.info() != Eigen::Success) return std::nullopt;
    RealVector u = es.eigenvectors().col(0).cwiseAbs();
    const double top = u.maxCoeff();
    if (!(top > 0.0) || u.minCoeff() <= 1e-12 * top) return std::nullopt;
    u /= top;
    for (Index p = 0; p < n; ++p) x(comp[p]) = u(p);
  }
  return x;
}

PcpResult inconclusive(std::string why) { return PcpResult{false, std::move(why), std::nullopt}; }

PcpResult certified(std::string why, TcpWitness w) { return PcpResult{true, std::move(why), std::move(w)}; }

// Shared preconditions of every PCP construction: A in EWP, B PSD, A_ij A_ji >= |B_ij|^2.
std::optional<std::string> pcp_precondition_failure(const MatrixPair& p, const Tolerance& tol) {
  MatrixTriple t{p.A, p.B, diag_part(p.A)};
  CertificateReport r = ppt_test(t, tol);
  if (!r.passed()) return std::string("pair (A, B) is not PSD");
  return std::nullopt;
}

TcpWitness scale_rows(const TcpWitness& w, const RealVector& f) {
  TcpWitness out = w;
  for (Index i = 0; i < w.V.rows(); ++i) {
    out.V.row(i) *= f(i);
    out.W.row(i) *= f(i);
  }
  return out;
}

std::optional<TcpWitness> peel_with(const MatrixPair& p, const Vector& z, const Tolerance& tol) {
  const Index d = p.dim();
  const double tmax = p.A.real().minCoeff();
  if (!(tmax > 0.0)) return std::nullopt;
  const Matrix J = Matrix::Ones(d, d);
  const Matrix zz = z * z.adjoint();
  constexpr int steps = 64;
  auto attempt = [&](double t_) { return pcp_sufficient(MatrixPair{p.A - t_ * J, p.B - t_ * zz}, tol); };
  int first = -1, last = -1;
  for (int k = 1; k <= steps; ++k) {
    const bool ok = attempt(tmax * k / steps).certified;
    if (ok && first < 0) first = k;
    if (ok) last = k;
    if (!ok && first >= 0) break;
  }
  if (first < 0) return std::nullopt;
  const double t_ = tmax * 0.5 * (first + last) / steps;
  PcpResult rem = attempt(t_);
  if (!rem.certified) rem = attempt(tmax * first / steps);
  if (!rem.certified || !rem.witness) return std::nullopt;
  TcpWitness head{Vector::Constant(d, std::sqrt(t_)), z};
  return combine_witnesses({1.0, 1.0}, {head, *rem.witness});
}

}  // namespace

std::string to_string(TestStatus s) {
  switch (s) {
    case TestStatus::pass:
      return "pass";
    case TestStatus::fail:
      return "fail";
    case TestStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

bool CertificateReport::passed() const {
  return std::none_of(items.begin(), items.end(), [](const TestItem& it) { return it.status == TestStatus::fail; });
}

const TestItem* CertificateReport::find(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

void CertificateReport::add(std::string name, double margin, double allowance) {
  if (!std::isfinite(margin)) throw NumericError("non-finite margin for " + name);
  items.push_back(TestItem{std::move(name), margin >= -allowance ? TestStatus::pass : TestStatus::fail, margin});
}

void CertificateReport::add_na(std::string name) {
  items.push_back(TestItem{std::move(name), TestStatus::not_applicable, 0.0});
}

Matrix tcp_A(const TcpWitness& w) {
  check_witness_shape(w);
  Matrix v2 = w.V.cwiseAbs2().cast<cplx>();
  Matrix w2 = w.W.cwiseAbs2().cast<cplx>();
  return v2 * w2.adjoint();
}

Matrix tcp_B(const TcpWitness& w) {
  check_witness_shape(w);
  Matrix x = w.V.cwiseProduct(w.W);
  return x * x.adjoint();
}

Matrix tcp_C(const TcpWitness& w) {
  check_witness_shape(w);
  Matrix x = w.V.cwiseProduct(w.W.conjugate());
  return x * x.adjoint();
}

MatrixTriple triple_of(const TcpWitness& w) { return MatrixTriple{tcp_A(w), tcp_B(w), tcp_C(w)}; }

CertificateReport psd_test(const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  CertificateReport r;
  add_ewp_item(r, t.A, tol);
  add_psd_item(r, "B_psd", t.B, tol);
  add_hermitian_item(r, "C_hermitian", t.C, tol);
  add_minor_item(r, "AC_minors", t.A, t.C, tol);
  return r;
}

CertificateReport ppt_test(const MatrixTriple& t, const Tolerance& tol) {
  CertificateReport r = psd_test(t, tol);
  add_psd_item(r, "C_psd", t.C, tol);
  add_hermitian_item(r, "B_hermitian", t.B, tol);
  add_minor_item(r, "AB_minors", t.A, t.B, tol);
  return r;
}

CertificateReport realignment_test(const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  CertificateReport r;
  r.add("realignment", realignment_margin(t), tol.bound(matrix_norm(t.A, Norm::entrywise_one)));
  return r;
}

bool quantum_state_test(const MatrixTriple& t, const Tolerance& tol) {
  if (!psd_test(t, tol).passed()) return false;
  return std::abs(t.A.sum() - 1.0) <= tol.bound(1.0);
}

CertificateReport tcp_necessary_battery(const MatrixTriple& t, const Tolerance& tol) {
  validate(t, tol);
  CertificateReport r;
  add_ewp_item(r, t.A, tol);
  add_psd_item(r, "B_psd", t.B, tol);
  add_psd_item(r, "C_psd", t.C, tol);
  add_minor_item(r, "B_minors", t.A, t.B, tol);
  add_minor_item(r, "C_minors", t.A, t.C, tol);
  const double s = matrix_norm(t.A, Norm::entrywise_one);
  r.add("B_norm_gap", norm_gap(t.A) - norm_gap(t.B), tol.bound(s));
  r.add("C_norm_gap", norm_gap(t.A) - norm_gap(t.C), tol.bound(s));
  r.add("combined_gap", realignment_margin(t), tol.bound(s));
  return r;
}

bool verify_tcp_witness(const MatrixTriple& t, const TcpWitness& w, const Tolerance& tol) {
  check_witness_shape(w);
  if (w.V.rows() != t.dim() || w.width() < 1) return false;
  const MatrixTriple r = triple_of(w);
  return close(r.A, t.A, tol) && close(r.B, t.B, tol) && close(r.C, t.C, tol);
}

bool verify_pcp_witness(const MatrixPair& p, const TcpWitness& w, const Tolerance& tol) {
  check_witness_shape(w);
  if (w.V.rows() != p.dim() || w.width() < 1) return false;
  return close(tcp_A(w), p.A, tol) && close(tcp_B(w), p.B, tol);
}

PcpResult pcp_sufficient(const MatrixPair& p, const Tolerance& tol) {
  validate(p, tol);
  if (auto why = pcp_precondition_failure(p, tol)) return inconclusive(*why);
  const Matrix a = real_part_matrix(p.A);
  const Matrix b = hermitian_part(p.B);
  if (is_diagonally_dominant(b, tol)) {
    auto w = dominant_decomposition(a, b, tol);
    if (w && verify_pcp_witness(p, *w, tol)) return certified("diagonally dominant B", *w);
    return inconclusive("diagonally dominant B but the explicit decomposition did not verify");
  }
  if (!is_psd(comparison_matrix(b), tol)) return inconclusive("comparison matrix of B is not PSD");
  auto x = comparison_scaling(b);
  if (!x) return inconclusive("no positive scaling for the comparison matrix");
  const Matrix D = x->cast<cplx>().asDiagonal();
  const Matrix as = D * a * D, bs = D * b * D;
  if (!is_diagonally_dominant(bs, tol)) return inconclusive("scaled B is not diagonally dominant");
  auto w = dominant_decomposition(as, bs, tol);
  if (!w) return inconclusive("scaled decomposition failed");
  const TcpWitness unscaled = scale_rows(*w, x->cwiseSqrt().cwiseInverse());
  if (!verify_pcp_witness(p, unscaled, tol)) return inconclusive("scaled decomposition did not verify");
  return certified("PSD comparison matrix", unscaled);
}

PcpResult pcp_construct(const MatrixPair& p, const Tolerance& tol) {
  PcpResult first = pcp_sufficient(p, tol);
  if (first.certified) return first;
  if (auto why = pcp_precondition_failure(p, tol)) return inconclusive(*why);
  const Index d = p.dim();
  if (close(p.A, Matrix::Ones(d, d), tol)) {
    try {
      PairWithWitness pw = a_equals_j_pcp(p.B, tol);
      if (verify_pcp_witness(p, pw.witness, tol)) return certified("A = J with correlation B", pw.witness);
    } catch (const ValidationError&) {
    }
  }
  std::vector<Vector> candidates;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(p.B));
    if (es.info() == Eigen::Success && d > 0) {
      Vector top = es.eigenvectors().col(d - 1);
      Vector z(d);
      for (Index i = 0; i < d; ++i) z(i) = phase_of(top(i));
      candidates.push_back(z);
    }
    candidates.push_back(Vector::Ones(d));
  }
  for (const Vector& z : candidates) {
    auto w = peel_with(p, z, tol);
    if (w && verify_pcp_witness(p, *w, tol)) return certified("rank-one peel then " + first.reason, *w);
  }
  return inconclusive(first.reason);
}

TripleWithWitness tcp_from_pcp_phasefix(const MatrixPair& p, const TcpWitness& w, PhaseFixVariant variant,
                                        const Tolerance& tol) {
  if (!verify_pcp_witness(p, w, tol)) throw ValidationError("witness does not verify for the pair (A, B)");
  const PhaseSplit pv = phase_split(w.V), pw = phase_split(w.W);
  TcpWitness out;
  MatrixTriple t;
  if (variant == PhaseFixVariant::B) {
    out = TcpWitness{w.V.cwiseProduct(pw.phase), pw.abs};
    t = MatrixTriple{p.A, p.B, p.B};
  } else {
    out = TcpWitness{pv.abs, w.W.cwiseProduct(pv.phase)};
    t = MatrixTriple{p.A, p.B, p.B.transpose()};
  }
  return TripleWithWitness{t, out};
}

TcpWitness dephase_c(const TcpWitness& w) {
  check_witness_shape(w);
  const Index d = w.V.rows(), n = w.width();
  TcpWitness out{Matrix(d, n * d), Matrix(d, n * d)};
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index k = 0; k < n; ++k)
    for (Index m = 0; m < d; ++m) {
      const Vector u = unit_root_vector(d, m);
      out.V.col(k * d + m) = s * w.V.col(k).cwiseProduct(u);
      out.W.col(k * d + m) = w.W.col(k).cwiseProduct(u.conjugate());
    }
  return out;
}

TcpWitness dephase_b_from_pair(const TcpWitness& w) {
  const TcpWitness c = conjugate_w(w);
  const Index d = c.V.rows(), n = c.width();
  TcpWitness out{Matrix(d, n * d), Matrix(d, n * d)};
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index k = 0; k < n; ++k)
    for (Index m = 0; m < d; ++m) {
      const Vector u = unit_root_vector(d, m);
      out.V.col(k * d + m) = s * c.V.col(k).cwiseProduct(u);
      out.W.col(k * d + m) = c.W.col(k).cwiseProduct(u);
    }
  return out;
}

TcpWitness conjugate_w(const TcpWitness& w) {
  check_witness_shape(w);
  return TcpWitness{w.V, w.W.conjugate()};
}

TripleWithWitness extremal_tcp_ray(const Vector& v, const Vector& w) {
  if (v.size() != w.size()) throw ValidationError("v and w must have the same length");
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0 || w.cwiseAbs().maxCoeff() == 0.0)
    throw ValidationError("extremal ray needs non-zero vectors");
  TcpWitness tw{v, w};
  return TripleWithWitness{triple_of(tw), tw};
}

PairWithWitness a_equals_j_pcp(const Matrix& B, const Tolerance& tol) {
  require_square(B, "B");
  require_finite(B, "B");
  const Index d = B.rows();
  if (d == 0) throw ValidationError("B must be non-empty");
  if (!is_hermitian(B, tol)) throw ValidationError("B is not Hermitian");
  for (Index i = 0; i < d; ++i)
    if (std::abs(B(i, i) - 1.0) > tol.bound(1.0)) throw ValidationError("B does not have unit diagonal");
  if (!is_psd(B, tol)) throw ValidationError("B is not PSD");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(B));
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on B");
  const RealVector& lam = es.eigenvalues();
  const double cut = std::max(tol.abs_eps, tol.rel_eps * lam(d - 1));
  std::vector<Index> keep;
  for (Index k = d - 1; k >= 0; --k)
    if (lam(k) > cut) keep.push_back(k);
  if (keep.empty()) throw NumericError("B has no positive eigenvalue");
  const Index r = static_cast<Index>(keep.size());
  Matrix W(d, r);
  for (Index q = 0; q < r; ++q) W.col(q) = es.eigenvectors().col(keep[q]) * std::sqrt(lam(keep[q]));
  TcpWitness tw{Matrix::Ones(d, r), W};
  return PairWithWitness{MatrixPair{Matrix::Ones(d, d), B}, tw};
}

TripleWithWitness a_equals_j_rank_one_tcp(const Vector& b, const Vector& c, const Tolerance& tol) {
  if (b.size() != c.size() || b.size() == 0) throw ValidationError("b and c must be non-empty and equally long");
  for (Index i = 0; i < b.size(); ++i)
    if (std::abs(std::abs(b(i)) - 1.0) > tol.bound(1.0) || std::abs(std::abs(c(i)) - 1.0) > tol.bound(1.0))
      throw ValidationError("b and c must be unimodular");
  const Index d = b.size();
  Vector v(d), w(d);
  for (Index i = 0; i < d; ++i) {
    v(i) = std::sqrt(b(i) * c(i));
    w(i) = b(i) / v(i);
  }
  TcpWitness tw{v, w};
  MatrixTriple t{Matrix::Ones(d, d), b * b.adjoint(), c * c.adjoint()};
  return TripleWithWitness{t, tw};
}

CriterionResult gurvits_ball_test(const MatrixTriple& t, const Tolerance& tol) {
  if (!psd_test(t, tol).passed()) return CriterionResult{false, 0.0, "not PSD"};
  const Index d = t.dim();
  const double total = t.A.real().sum();
  if (d == 1) return CriterionResult{true, total, "d = 1"};
  const double lhs = t.A.cwiseAbs2().sum() + tilde(t.B).cwiseAbs2().sum() + tilde(t.C).cwiseAbs2().sum();
  const double rhs = total * total / static_cast<double>(d * d - 1);
  const double margin = rhs - lhs;
  if (margin >= -tol.bound(rhs)) return CriterionResult{true, margin, "inside the separable ball"};
  return CriterionResult{false, margin, "outside the separable ball"};
}

MatrixTriple dplusone_shift(const MatrixTriple& t, Side side) {
  const Index d = t.dim();
  const Matrix ones = Matrix::Ones(d, d);
  if (side == Side::row) {
    const Vector r = t.A.rowwise().sum();
    Matrix D = r.asDiagonal();
    return MatrixTriple{r.asDiagonal() * ones, D, D};
  }
  const Vector c = t.A.colwise().sum().transpose();
  Matrix D = c.asDiagonal();
  return MatrixTriple{ones * c.asDiagonal(), D, D};
}

CriterionResult dplusone_test(const MatrixTriple& t, Side side, const Tolerance& tol) {
  if (!psd_test(t, tol).passed()) return CriterionResult{false, 0.0, "not PSD"};
  const double f = static_cast<double>(t.dim() + 1);
  const MatrixTriple shifted = cplx(f) * t - dplusone_shift(t, side);
  CertificateReport r = psd_test(shifted, tol);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& it : r.items) margin = std::min(margin, it.margin);
  if (!std::isfinite(margin)) margin = 0.0;
  if (r.passed()) return CriterionResult{true, margin, "shifted triple is PSD"};
  return CriterionResult{false, margin, "shifted triple is not PSD"};
}

TripleWithWitness cp_to_tcp(const Matrix& A, const Matrix& N, const Tolerance& tol) {
  require_square(A, "A");
  if (N.rows() != A.rows() || N.cols() < 1) throw ValidationError("N must have as many rows as A");
  if (!is_ewp(N, tol)) throw ValidationError("N has negative or complex entries");
  if (!close(A, N * N.transpose(), tol)) throw ValidationError("A differs from N N^T");
  // Entrywise square roots: |V_ik|^2 |W_jk|^2 = N_ik N_jk and V ⊙ W = N.
  const Matrix R = N.real().cwiseMax(0.0).cwiseSqrt().cast<cplx>();
  return TripleWithWitness{MatrixTriple{A, A, A}, TcpWitness{R, R}};
}

MatrixTriple extremal_psd_ray(InvariantClass c, PsdRayKind kind, const PsdRayParams& params) {
  const Index d = params.d;
  if (d < 1) throw ValidationError("dimension must be positive");
  auto in_range = [d](Index k) { return k >= 0 && k < d; };
  MatrixTriple t = MatrixTriple::zero(d);
  switch (kind) {
    case PsdRayKind::unit_ii:
      if (!in_range(params.i)) throw ValidationError("index out of range");
      t.A(params.i, params.i) = t.B(params.i, params.i) = t.C(params.i, params.i) = 1.0;
      return t;
    case PsdRayKind::pair: {
      if (c == InvariantClass::CLDUI) throw ValidationError("pair rays do not exist in CLDUI");
      const Index i = params.i, j = params.j;
      if (!in_range(i) || !in_range(j) || i == j) throw ValidationError("pair needs distinct in-range indices");
      if (params.x.size() != 2) throw ValidationError("pair ray needs a 2-vector");
      const cplx x1 = params.x(0), x2 = params.x(1);
      t.A(i, j) = std::norm(x1);
      t.A(j, i) = std::norm(x2);
      t.C(i, j) = x1 * std::conj(x2);
      t.C(j, i) = x2 * std::conj(x1);
      return t;
    }
    case PsdRayKind::diag_vector: {
      if (c == InvariantClass::LDUI) throw ValidationError("diagonal-vector rays do not exist in LDUI");
      if (params.x.size() != d) throw ValidationError("diagonal-vector ray needs a d-vector");
      const Vector x = params.x;
      t.B = x * x.adjoint();
      for (Index i = 0; i < d; ++i) t.A(i, i) = t.C(i, i) = std::norm(x(i));
      return t;
    }
    case PsdRayKind::product_ij: {
      const Index i = params.i, j = params.j;
      if (!in_range(i) || !in_range(j) || i == j) throw ValidationError("product ray needs distinct in-range indices");
      t.A(i, j) = 1.0;
      return t;
    }
  }
  throw ValidationError("unknown ray kind");
}

TcpWitness combine_witnesses(const std::vector<double>& weights, const std::vector<TcpWitness>& ws) {
  if (weights.size() != ws.size() || ws.empty()) throw ValidationError("weights and witnesses must match");
  const Index d = ws.front().V.rows();
  Index total = 0;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    check_witness_shape(ws[k]);
    if (ws[k].V.rows() != d) throw ValidationError("witnesses must share the row dimension");
    if (!(weights[k] >= 0.0)) throw ValidationError("weights must be non-negative");
    total += ws[k].width();
  }
  TcpWitness out{Matrix(d, total), Matrix(d, total)};
  Index at = 0;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const Index n = ws[k].width();
    out.V.middleCols(at, n) = std::sqrt(weights[k]) * ws[k].V;
    out.W.middleCols(at, n) = ws[k].W;
    at += n;
  }
  return out;
}

TcpWitness direct_sum(const TcpWitness& w1, const TcpWitness& w2) {
  check_witness_shape(w1);
  check_witness_shape(w2);
  const Index d1 = w1.V.rows(), d2 = w2.V.rows(), n1 = w1.width(), n2 = w2.width();
  TcpWitness out{Matrix::Zero(d1 + d2, n1 + n2), Matrix::Zero(d1 + d2, n1 + n2)};
  out.V.topLeftCorner(d1, n1) = w1.V;
  out.W.topLeftCorner(d1, n1) = w1.W;
  out.V.bottomRightCorner(d2, n2) = w2.V;
  out.W.bottomRightCorner(d2, n2) = w2.W;
  return out;
}

TcpWitness restrict_rows(const TcpWitness& w, const std::vector<Index>& I) {
  check_witness_shape(w);
  TcpWitness out{Matrix(static_cast<Index>(I.size()), w.width()), Matrix(static_cast<Index>(I.size()), w.width())};
  for (std::size_t r = 0; r < I.size(); ++r) {
    if (I[r] < 0 || I[r] >= w.V.rows()) throw ValidationError("row index out of range");
    out.V.row(static_cast<Index>(r)) = w.V.row(I[r]);
    out.W.row(static_cast<Index>(r)) = w.W.row(I[r]);
  }
  return out;
}

std::optional<TcpCertificate> certify_tcp(const MatrixTriple& t, const Tolerance& tol) {
  if (!psd_test(t, tol).passed()) return std::nullopt;
  const Index d = t.dim();
  auto accept = [&](const std::string& method, const TcpWitness& w) -> std::optional<TcpCertificate> {
    if (!verify_tcp_witness(t, w, tol)) return std::nullopt;
    const MatrixTriple r = triple_of(w);
    return TcpCertificate{method, w, -max_abs_diff(r, t)};
  };
  const Matrix dA = diag_part(t.A);
  if (close(t.B, t.C, tol)) {
    PcpResult p = pcp_construct(MatrixPair{t.A, t.B}, tol);
    if (p.certified) {
      auto tw = tcp_from_pcp_phasefix(MatrixPair{t.A, t.B}, *p.witness, PhaseFixVariant::B, tol);
      if (auto c = accept("pcp_phasefix_B", tw.witness)) return c;
    }
  }
  if (close(t.C, t.B.transpose(), tol)) {
    PcpResult p = pcp_construct(MatrixPair{t.A, t.B}, tol);
    if (p.certified) {
      auto tw = tcp_from_pcp_phasefix(MatrixPair{t.A, t.B}, *p.witness, PhaseFixVariant::B_transpose, tol);
      if (auto c = accept("pcp_phasefix_Bt", tw.witness)) return c;
    }
  }
  if (close(t.C, dA, tol)) {
    PcpResult p = pcp_construct(MatrixPair{t.A, t.B}, tol);
    if (p.certified)
      if (auto c = accept("pcp_dephase_c", dephase_c(*p.witness))) return c;
  }
  if (close(t.B, dA, tol)) {
    PcpResult p = pcp_construct(MatrixPair{t.A, t.C}, tol);
    if (p.certified)
      if (auto c = accept("pcp_dephase_b", dephase_b_from_pair(*p.witness))) return c;
  }
  if (d > 0 && close(t.A, Matrix::Ones(d, d), tol)) {
    const Vector b = t.B.col(0), c = t.C.col(0);
    if (close(t.B, b * b.adjoint(), tol) && close(t.C, c * c.adjoint(), tol)) {
      try {
        auto tw = a_equals_j_rank_one_tcp(b, c, tol);
        if (auto cert = accept("a_equals_j_rank_one", tw.witness)) return cert;
      } catch (const ValidationError&) {
      }
    }
  }
  CriterionResult g = gurvits_ball_test(t, tol);
  if (g.certified) return TcpCertificate{"gurvits_ball", std::nullopt, g.margin};
  CriterionResult r = dplusone_test(t, Side::row, tol);
  if (r.certified) return TcpCertificate{"dplusone_row", std::nullopt, r.margin};
  CriterionResult c = dplusone_test(t, Side::col, tol);
  if (c.certified) return TcpCertificate{"dplusone_col", std::nullopt, c.margin};
  return std::nullopt;
}

}  // namespace ldoi
