#include "ldoi/triple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace ldoi {

std::string to_string(InvariantClass c) {
  switch (c) {
    case InvariantClass::LDUI: return "LDUI";
    case InvariantClass::CLDUI: return "CLDUI";
    case InvariantClass::LDOI: return "LDOI";
  }
  return "?";
}

InvariantClass class_from_string(const std::string& s) {
  if (s == "LDUI") return InvariantClass::LDUI;
  if (s == "CLDUI") return InvariantClass::CLDUI;
  if (s == "LDOI") return InvariantClass::LDOI;
  throw ValidationError("unknown invariant class '" + s + "' (expected LDUI, CLDUI or LDOI)");
}

MatrixTriple MatrixTriple::zero(Index d) {
  return {Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
}

void validate(const MatrixTriple& t, const Tolerance& tol) {
  const Index d = t.A.rows();
  auto shape = [d](const Matrix& m, const char* name) {
    if (m.rows() != d || m.cols() != d) {
      std::ostringstream os;
      os << "triple component " << name << " is " << m.rows() << "x" << m.cols() << ", expected "
         << d << "x" << d;
      throw ValidationError(os.str());
    }
  };
  shape(t.A, "A");
  shape(t.B, "B");
  shape(t.C, "C");
  require_finite(t.A, "A");
  require_finite(t.B, "B");
  require_finite(t.C, "C");
  const double scale = std::max({max_abs(t.A.diagonal()), max_abs(t.B.diagonal()), max_abs(t.C.diagonal())});
  const double gap = std::max(max_abs(t.A.diagonal() - t.B.diagonal()), max_abs(t.A.diagonal() - t.C.diagonal()));
  if (gap > tol.bound(scale)) throw ValidationError("triple diagonals differ: diag A, diag B, diag C must agree");
}

void validate(const MatrixPair& p, const Tolerance& tol) {
  validate(MatrixTriple(p.A, p.B, diag_part(p.A)), tol);
}

MatrixTriple embed(InvariantClass c, const MatrixPair& p) {
  switch (c) {
    case InvariantClass::LDUI: return {p.A, diag_part(p.A), p.B};
    case InvariantClass::CLDUI: return {p.A, p.B, diag_part(p.A)};
    case InvariantClass::LDOI: break;
  }
  throw ValidationError("a pair embeds only into LDUI or CLDUI");
}

MatrixTriple promote(InvariantClass c, const MatrixTriple& t) {
  switch (c) {
    case InvariantClass::LDUI: return {t.A, diag_part(t.A), t.C};
    case InvariantClass::CLDUI: return {t.A, t.B, diag_part(t.A)};
    case InvariantClass::LDOI: return t;
  }
  return t;
}

MatrixTriple operator+(const MatrixTriple& x, const MatrixTriple& y) {
  return {x.A + y.A, x.B + y.B, x.C + y.C};
}
MatrixTriple operator-(const MatrixTriple& x, const MatrixTriple& y) {
  return {x.A - y.A, x.B - y.B, x.C - y.C};
}
MatrixTriple operator*(cplx s, const MatrixTriple& t) { return {s * t.A, s * t.B, s * t.C}; }

double max_abs_diff(const MatrixTriple& x, const MatrixTriple& y) {
  if (x.dim() != y.dim()) return std::numeric_limits<double>::infinity();
  return std::max({max_abs(x.A - y.A), max_abs(x.B - y.B), max_abs(x.C - y.C)});
}

Index bipartite_dim(const BipartiteMatrix& x) {
  require_square(x, "bipartite matrix");
  const Index n = x.rows();
  Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d < 1 || d * d != n) {
    std::ostringstream os;
    os << "bipartite matrix size " << n << " is not a perfect square";
    throw ValidationError(os.str());
  }
  return d;
}

BipartiteMatrix build(InvariantClass c, const MatrixTriple& t) {
  validate(t);
  const MatrixTriple p = promote(c, t);
  const Index d = p.dim();
  BipartiteMatrix x = BipartiteMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      x(i * d + j, i * d + j) = p.A(i, j);
      if (i == j) continue;
      x(i * d + i, j * d + j) = p.B(i, j);
      x(i * d + j, j * d + i) = p.C(i, j);
    }
  return x;
}

MatrixTriple extract_triple(const BipartiteMatrix& x) {
  const Index d = bipartite_dim(x);
  MatrixTriple t = MatrixTriple::zero(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      t.A(i, j) = x(i * d + j, i * d + j);
      t.B(i, j) = x(i * d + i, j * d + j);
      t.C(i, j) = x(i * d + j, j * d + i);
    }
  return t;
}

BipartiteMatrix project(const BipartiteMatrix& x, InvariantClass c) {
  return build(c, extract_triple(x));
}

namespace {

// Phase picked up by the fused index a = (a1, a2) under the local group element u.
// Conjugation multiplies entry (a, b) by phi(a) * conj(phi(b)).
Vector leg_phases(const Vector& u, Index d, InvariantClass c) {
  Vector phi(d * d);
  for (Index a1 = 0; a1 < d; ++a1)
    for (Index a2 = 0; a2 < d; ++a2) {
      const cplx second = (c == InvariantClass::CLDUI) ? std::conj(u(a2)) : u(a2);
      phi(a1 * d + a2) = u(a1) * second;
    }
  return phi;
}

void accumulate(BipartiteMatrix& acc, const BipartiteMatrix& x, const Vector& phi) {
  acc += (phi * phi.adjoint()).cwiseProduct(x);
}

}  // namespace

BipartiteMatrix average_oracle(const BipartiteMatrix& x, InvariantClass c, AverageMode mode,
                               std::int64_t samples, std::uint64_t seed) {
  const Index d = bipartite_dim(x);
  BipartiteMatrix acc = BipartiteMatrix::Zero(x.rows(), x.cols());
  if (mode == AverageMode::exact_sign) {
    if (c == InvariantClass::LDOI) {
      if (d > 12) throw ValidationError("exact sign average supports d <= 12");
      const std::uint64_t total = std::uint64_t{1} << d;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        Vector u(d);
        for (Index k = 0; k < d; ++k) u(k) = ((mask >> k) & 1U) ? -1.0 : 1.0;
        accumulate(acc, x, leg_phases(u, d, c));
      }
      return acc / static_cast<double>(total);
    }
    // Per-leg exponents lie in [-2, 2], so fifth roots of unity suffice.
    if (d > 7) throw ValidationError("exact phase average supports d <= 7");
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    std::uint64_t count = 0;
    while (true) {
      Vector u(d);
      for (Index i = 0; i < d; ++i) u(i) = std::pow(w, k[static_cast<std::size_t>(i)]);
      accumulate(acc, x, leg_phases(u, d, c));
      ++count;
      Index pos = 0;
      while (pos < d && ++k[static_cast<std::size_t>(pos)] == 5) k[static_cast<std::size_t>(pos++)] = 0;
      if (pos == d) break;
    }
    return acc / static_cast<double>(count);
  }
  if (samples < 1) throw ValidationError("mc_phase needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution coin(0.5);
  for (std::int64_t s = 0; s < samples; ++s) {
    Vector u(d);
    for (Index i = 0; i < d; ++i)
      u(i) = (c == InvariantClass::LDOI) ? cplx(coin(rng) ? -1.0 : 1.0) : std::polar(1.0, angle(rng));
    accumulate(acc, x, leg_phases(u, d, c));
  }
  return acc / static_cast<double>(samples);
}

bool is_invariant(const BipartiteMatrix& x, InvariantClass c, const Tolerance& tol) {
  return max_abs(x - project(x, c)) <= tol.bound(max_abs(x));
}

std::vector<Block> block_decomposition(const MatrixTriple& t, InvariantClass c) {
  validate(t);
  const MatrixTriple p = promote(c, t);
  const Index d = p.dim();
  std::vector<Block> blocks;
  auto pair_blocks = [&] {
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j) {
        Matrix m(2, 2);
        m << p.A(i, j), p.C(i, j), p.C(j, i), p.A(j, i);
        blocks.push_back({{{i, j}, {j, i}}, m});
      }
  };
  auto b_block = [&] {
    Block b{{}, p.B};
    for (Index i = 0; i < d; ++i) b.labels.push_back({i, i});
    blocks.push_back(std::move(b));
  };
  switch (c) {
    case InvariantClass::LDOI:
      b_block();
      pair_blocks();
      break;
    case InvariantClass::LDUI:
      for (Index i = 0; i < d; ++i) blocks.push_back({{{i, i}}, Matrix::Constant(1, 1, p.A(i, i))});
      pair_blocks();
      break;
    case InvariantClass::CLDUI:
      b_block();
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          if (i != j) blocks.push_back({{{i, j}}, Matrix::Constant(1, 1, p.A(i, j))});
      break;
  }
  return blocks;
}

Index rank_of(const MatrixTriple& t, InvariantClass c, const Tolerance& tol) {
  const auto blocks = block_decomposition(t, c);
  std::vector<RealVector> svals;
  double smax = 0.0;
  for (const auto& b : blocks) {
    Eigen::JacobiSVD<Matrix> svd(b.m);
    svals.push_back(svd.singularValues());
    if (svals.back().size()) smax = std::max(smax, svals.back()(0));
  }
  const double cut = std::max(tol.abs_eps, tol.rel_eps * smax);
  Index r = 0;
  for (const auto& s : svals)
    for (Index k = 0; k < s.size(); ++k)
      if (s(k) > cut) ++r;
  return r;
}

std::vector<cplx> spectrum(const MatrixTriple& t, InvariantClass c) {
  std::vector<cplx> out;
  for (const auto& b : block_decomposition(t, c)) {
    Eigen::ComplexEigenSolver<Matrix> es(b.m, false);
    if (es.info() != Eigen::Success) throw NumericError("block eigensolver did not converge");
    for (Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k));
  }
  return out;
}

double min_eigenvalue(const MatrixTriple& t, InvariantClass c) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : block_decomposition(t, c)) lo = std::min(lo, min_hermitian_eigenvalue(b.m));
  return lo;
}

std::string to_string(LegPermutation p) {
  switch (p) {
    case LegPermutation::FXF: return "FXF";
    case LegPermutation::transpose: return "transpose";
    case LegPermutation::diag_swap: return "diag_swap";
    case LegPermutation::realign: return "realign";
    case LegPermutation::gamma: return "gamma";
    case LegPermutation::gamma_left: return "gamma_left";
    case LegPermutation::F_left: return "F_left";
    case LegPermutation::F_right: return "F_right";
  }
  return "?";
}

LegPermutation leg_permutation_from_string(const std::string& s) {
  for (auto p : {LegPermutation::FXF, LegPermutation::transpose, LegPermutation::diag_swap,
                 LegPermutation::realign, LegPermutation::gamma, LegPermutation::gamma_left,
                 LegPermutation::F_left, LegPermutation::F_right})
    if (to_string(p) == s) return p;
  throw ValidationError("unknown leg permutation '" + s + "'");
}

MatrixTriple leg_permutation(const MatrixTriple& t, LegPermutation which) {
  validate(t);
  const Matrix &A = t.A, &B = t.B, &C = t.C;
  switch (which) {
    case LegPermutation::FXF: return {A.transpose(), B, C.transpose()};
    case LegPermutation::transpose: return {A, B.transpose(), C.transpose()};
    case LegPermutation::diag_swap: return {A.transpose(), B.transpose(), C};
    case LegPermutation::realign: return {B, A, C};
    case LegPermutation::gamma: return {A, C, B};
    case LegPermutation::gamma_left: return {A, C.transpose(), B.transpose()};
    case LegPermutation::F_left: return {C.transpose(), B, A.transpose()};
    case LegPermutation::F_right: return {C, B, A};
  }
  return t;
}

namespace {
Matrix block_diag(const Matrix& x, const Matrix& y) {
  Matrix out = Matrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
  out.topLeftCorner(x.rows(), x.cols()) = x;
  out.bottomRightCorner(y.rows(), y.cols()) = y;
  return out;
}
}  // namespace

MatrixTriple direct_sum(const MatrixTriple& t1, const MatrixTriple& t2) {
  if (t1.dim() > 0) validate(t1);
  if (t2.dim() > 0) validate(t2);
  return {block_diag(t1.A, t2.A), block_diag(t1.B, t2.B), block_diag(t1.C, t2.C)};
}

MatrixTriple principal_subtriple(const MatrixTriple& t, const std::vector<Index>& I) {
  validate(t);
  if (I.empty()) throw ValidationError("principal subtriple needs a non-empty index set");
  const Index d = t.dim();
  for (Index i : I)
    if (i < 0 || i >= d) throw ValidationError("principal subtriple index out of range");
  const Index n = static_cast<Index>(I.size());
  MatrixTriple out = MatrixTriple::zero(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      out.A(a, b) = t.A(I[a], I[b]);
      out.B(a, b) = t.B(I[a], I[b]);
      out.C(a, b) = t.C(I[a], I[b]);
    }
  return out;
}

ConditionalExpectations conditional_expectations(const MatrixTriple& t) {
  validate(t);
  const Index d = t.dim();
  const Vector r = t.A.rowwise().sum();
  const Vector c = t.A.colwise().sum().transpose();
  ConditionalExpectations out;
  out.a_row = r.asDiagonal();
  out.a_col = c.asDiagonal();
  out.trace = t.A.sum();
  out.id_diag = {t.A, diag_part(t.A), diag_part(t.A)};
  const Matrix J = Matrix::Ones(d, d);
  const double inv = 1.0 / static_cast<double>(d);
  out.id_trace_row = {inv * (out.a_row * J), inv * out.a_row, inv * out.a_row};
  out.id_trace_col = {inv * (J * out.a_col), inv * out.a_col, inv * out.a_col};
  return out;
}

SymmetryFlags symmetry_flags(const MatrixTriple& t, const Tolerance& tol) {
  validate(t);
  const double scale = std::max({max_abs(t.A), max_abs(t.B), max_abs(t.C)});
  const double eps = tol.bound(scale);
  const bool a_real = t.A.imag().cwiseAbs().maxCoeff() <= eps;
  const bool self_adjoint = a_real && max_abs(t.B - t.B.adjoint()) <= eps && max_abs(t.C - t.C.adjoint()) <= eps;
  const bool a_sym = max_abs(t.A - t.A.transpose()) <= eps;
  const bool c_sym = max_abs(t.C - t.C.transpose()) <= eps;
  const bool bose = a_sym && c_sym && max_abs(t.A - t.C) <= eps;
  return {self_adjoint, a_sym && c_sym, bose};
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto lex = [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cplx& x : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && std::abs(x - b[k]) < bd) {
        bd = std::abs(x - b[k]);
        best = k;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

}  // namespace ldoi
