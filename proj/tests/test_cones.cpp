#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldoi/cones.hpp"
#include "ldoi/gallery.hpp"
#include "support.hpp"

using namespace ldoi;
using ldoi::testing::dense_from_witness;
using ldoi::testing::partial_transpose_dense;
using ldoi::testing::realign_dense;
using ldoi::testing::Rng;
using ldoi::testing::trace_norm;

namespace {

// Random PSD LDOI triple: the projection of a Wishart matrix.
MatrixTriple random_psd_triple(Rng& rng, Index d, Index rank) {
  Matrix g = rng.matrix(d * d, rank);
  return extract_triple(project(g * g.adjoint(), InvariantClass::LDOI));
}

bool dense_ppt(const MatrixTriple& t) {
  const BipartiteMatrix x = build(InvariantClass::LDOI, t);
  return is_psd(x) && is_psd(partial_transpose_dense(x, t.dim()));
}

bool has_item(const CertificateReport& r, const std::string& name, TestStatus s) {
  const TestItem* it = r.find(name);
  return it != nullptr && it->status == s;
}

}  // namespace

TEST_CASE("witness identities match the twirled separable matrix") {
  Rng rng(1);
  for (Index d = 2; d <= 4; ++d)
    for (Index n = 1; n <= 4; ++n) {
      TcpWitness w = rng.witness(d, n);
      MatrixTriple dense = extract_triple(project(dense_from_witness(w), InvariantClass::LDOI));
      CHECK(max_abs_diff(triple_of(w), dense) < 1e-10);
      CHECK(verify_tcp_witness(dense, w));
    }
}

TEST_CASE("psd_test agrees with the dense eigenvalue check") {
  Rng rng(2);
  int pos = 0, neg = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 2 + trial % 3;
    MatrixTriple t = rng.hermitian_triple(d);
    // Shift the diagonal so both outcomes occur.
    const double shift = rng.uniform(0.0, 6.0);
    t.A += shift * Matrix::Identity(d, d);
    t.B.diagonal() = t.A.diagonal();
    t.C.diagonal() = t.A.diagonal();
    t.A = t.A.cwiseAbs().cast<cplx>();
    t.B.diagonal() = t.A.diagonal();
    t.C.diagonal() = t.A.diagonal();
    const bool dense = is_psd(build(InvariantClass::LDOI, t));
    CHECK(psd_test(t).passed() == dense);
    (dense ? pos : neg)++;
  }
  CHECK(pos > 0);
  CHECK(neg > 0);
  MatrixTriple bad = rng.hermitian_triple(3);
  bad.A(0, 1) = -1.0;
  CHECK(has_item(psd_test(bad), "A_ewp", TestStatus::fail));
}

TEST_CASE("ppt_test agrees with the dense partial transpose") {
  Rng rng(3);
  int pos = 0, neg = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 2 + trial % 3;
    MatrixTriple t = random_psd_triple(rng, d, 1 + trial % 5);
    const bool dense = dense_ppt(t);
    CHECK(ppt_test(t).passed() == dense);
    (dense ? pos : neg)++;
  }
  CHECK(pos > 0);
  CHECK(neg > 0);
}

TEST_CASE("realignment_test agrees with the dense trace-norm inequality") {
  Rng rng(4);
  int pos = 0, neg = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Index d = 2 + trial % 3;
    MatrixTriple t = random_psd_triple(rng, d, 1 + trial % 8);
    const BipartiteMatrix x = build(InvariantClass::LDOI, t);
    const double gap = x.trace().real() - trace_norm(realign_dense(x, d));
    if (std::abs(gap) < 1e-8) continue;
    CHECK(realignment_test(t).passed() == (gap > 0.0));
    (gap > 0.0 ? pos : neg)++;
  }
  CHECK(pos > 0);
  CHECK(neg > 0);
}

TEST_CASE("witness triples pass every necessary test") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 4;
    TcpWitness w = rng.witness(d, 1 + trial % 6);
    MatrixTriple t = triple_of(w);
    CHECK(ppt_test(t).passed());
    CHECK(realignment_test(t).passed());
    CertificateReport b = tcp_necessary_battery(t);
    CHECK(b.passed());
    CHECK(b.items.size() == 8);
    CHECK(quantum_state_test((1.0 / t.A.sum()) * t));
  }
}

TEST_CASE("quantum state test needs unit trace") {
  Rng rng(6);
  MatrixTriple t = triple_of(rng.witness(3, 2));
  CHECK_FALSE(quantum_state_test(2.0 / t.A.sum() * t));
}

TEST_CASE("witness verification rejects wrong witnesses") {
  Rng rng(7);
  TcpWitness w = rng.witness(3, 2);
  MatrixTriple t = triple_of(w);
  TcpWitness other = rng.witness(3, 2);
  CHECK_FALSE(verify_tcp_witness(t, other));
  CHECK(verify_pcp_witness(MatrixPair{t.A, t.B}, w));
  CHECK(verify_pcp_witness(MatrixPair{t.A, t.C}, conjugate_w(w)));
  CHECK_FALSE(verify_tcp_witness(t, rng.witness(4, 2)));
}

TEST_CASE("pcp_sufficient on diagonally dominant pairs") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 4;
    Matrix B = hermitian_part(rng.matrix(d, d));
    for (Index i = 0; i < d; ++i) B(i, i) = B.row(i).cwiseAbs().sum() + rng.uniform(0.0, 1.0);
    Matrix A = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        A(i, j) = i == j ? B(i, i) : cplx(std::abs(B(i, j)) * rng.uniform(0.5, 2.0));
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j) {
        const double need = std::norm(B(i, j)) / A(i, j).real();
        A(j, i) = std::max(A(j, i).real(), need) + rng.uniform(0.0, 0.3);
      }
    MatrixPair p{A, B};
    PcpResult r = pcp_sufficient(p);
    REQUIRE(r.certified);
    CHECK(verify_pcp_witness(p, *r.witness));
  }
}

TEST_CASE("pcp_sufficient through a PSD comparison matrix") {
  // B is not diagonally dominant but M(B) is PSD.
  Matrix B(3, 3);
  B << 1.0, -0.6, -0.6, -0.6, 1.0, -0.6, -0.6, -0.6, 2.0;
  CHECK_FALSE(is_diagonally_dominant(B));
  REQUIRE(is_psd(comparison_matrix(B)));
  Matrix A = Matrix::Ones(3, 3);
  A.diagonal() = B.diagonal();
  PcpResult r = pcp_sufficient(MatrixPair{A, B});
  REQUIRE(r.certified);
  CHECK(verify_pcp_witness(MatrixPair{A, B}, *r.witness));
}

TEST_CASE("pcp_sufficient is inconclusive or refuses outside its reach") {
  Matrix B = Matrix::Ones(3, 3);
  Matrix A = Matrix::Ones(3, 3);
  B(0, 1) = B(1, 0) = 0.2;
  A(0, 1) = 0.01;
  CHECK_FALSE(pcp_sufficient(MatrixPair{A, B}).certified);
}

TEST_CASE("pcp_construct handles A = J with a correlation matrix") {
  Rng rng(9);
  const Index d = 4;
  Matrix g = rng.matrix(d, 2);
  Matrix B = g * g.adjoint();
  RealVector s = B.diagonal().real().cwiseSqrt().cwiseInverse();
  B = s.cast<cplx>().asDiagonal() * B * s.cast<cplx>().asDiagonal();
  MatrixPair p{Matrix::Ones(d, d), B};
  PcpResult r = pcp_construct(p);
  REQUIRE(r.certified);
  CHECK(verify_pcp_witness(p, *r.witness));
  PairWithWitness pw = a_equals_j_pcp(B);
  CHECK(verify_pcp_witness(pw.pair, pw.witness));
  CHECK_THROWS_AS(a_equals_j_pcp(2.0 * B), ValidationError);
}

TEST_CASE("pcp_construct peels a rank-one term") {
  const Index d = 4;
  // Rank-one all-ones term plus a diagonally dominant remainder.
  Matrix Br = Matrix::Identity(d, d) * 2.0;
  Matrix Ar = Matrix::Identity(d, d) * 2.0 + Matrix::Ones(d, d) - Matrix::Identity(d, d);
  Matrix B = Br + 3.0 * Matrix::Ones(d, d);
  Matrix A = Ar + 3.0 * Matrix::Ones(d, d);
  A.diagonal() = B.diagonal();
  MatrixPair p{A, B};
  PcpResult r = pcp_construct(p);
  REQUIRE(r.certified);
  CHECK(verify_pcp_witness(p, *r.witness));
}

TEST_CASE("phase-fix lifts a PCP witness to the symmetric triples") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 3;
    TcpWitness w = rng.witness(d, 3);
    MatrixPair p{tcp_A(w), tcp_B(w)};
    TripleWithWitness b = tcp_from_pcp_phasefix(p, w, PhaseFixVariant::B);
    CHECK(max_abs(b.triple.C - p.B) == 0.0);
    CHECK(verify_tcp_witness(b.triple, b.witness));
    TripleWithWitness bt = tcp_from_pcp_phasefix(p, w, PhaseFixVariant::B_transpose);
    CHECK(max_abs(bt.triple.C - p.B.transpose()) == 0.0);
    CHECK(verify_tcp_witness(bt.triple, bt.witness));
  }
  TcpWitness w = rng.witness(3, 2);
  CHECK_THROWS_AS(tcp_from_pcp_phasefix(MatrixPair{Matrix::Ones(3, 3), Matrix::Identity(3, 3)}, w,
                                        PhaseFixVariant::B),
                  ValidationError);
}

TEST_CASE("dephasing lifts into CLDUI and LDUI") {
  Rng rng(12);
  for (Index d = 2; d <= 5; ++d) {
    TcpWitness w = rng.witness(d, 2);
    MatrixTriple t = triple_of(w);
    TcpWitness c = dephase_c(w);
    CHECK(verify_tcp_witness(MatrixTriple(t.A, t.B, diag_part(t.A)), c));
    TcpWitness u = dephase_b_from_pair(conjugate_w(w));
    CHECK(verify_tcp_witness(MatrixTriple(t.A, diag_part(t.A), t.C), u));
    CHECK(max_abs_diff(triple_of(conjugate_w(w)), MatrixTriple(t.A, t.C, t.B)) < 1e-12);
  }
}

TEST_CASE("extremal rays") {
  Rng rng(13);
  Vector v = rng.vector(3), w = rng.vector(3);
  TripleWithWitness r = extremal_tcp_ray(v, w);
  CHECK(verify_tcp_witness(r.triple, r.witness));
  CHECK(numerical_rank(build(InvariantClass::LDOI, r.triple)) >= 1);
  CHECK_THROWS_AS(extremal_tcp_ray(v, Vector::Zero(3)), ValidationError);

  PsdRayParams pr;
  pr.d = 3;
  pr.i = 0;
  pr.j = 2;
  pr.x = rng.vector(2);
  MatrixTriple pair = extremal_psd_ray(InvariantClass::LDUI, PsdRayKind::pair, pr);
  CHECK(psd_test(pair).passed());
  CHECK(rank_of(pair, InvariantClass::LDOI) == 1);
  CHECK_THROWS_AS(extremal_psd_ray(InvariantClass::CLDUI, PsdRayKind::pair, pr), ValidationError);

  pr.x = rng.vector(3);
  MatrixTriple dv = extremal_psd_ray(InvariantClass::CLDUI, PsdRayKind::diag_vector, pr);
  CHECK(psd_test(dv).passed());
  CHECK(rank_of(dv, InvariantClass::LDOI) == 1);
  CHECK_THROWS_AS(extremal_psd_ray(InvariantClass::LDUI, PsdRayKind::diag_vector, pr), ValidationError);

  MatrixTriple unit = extremal_psd_ray(InvariantClass::LDOI, PsdRayKind::unit_ii, pr);
  CHECK(rank_of(unit, InvariantClass::LDOI) == 1);
  MatrixTriple prod = extremal_psd_ray(InvariantClass::LDOI, PsdRayKind::product_ij, pr);
  CHECK(rank_of(prod, InvariantClass::LDOI) == 1);
  CHECK(ppt_test(prod).passed());
}

TEST_CASE("A = J with rank-one B and C") {
  Rng rng(14);
  const Index d = 4;
  Vector b(d), c(d);
  for (Index i = 0; i < d; ++i) {
    b(i) = std::polar(1.0, rng.uniform(0.0, 6.0));
    c(i) = std::polar(1.0, rng.uniform(0.0, 6.0));
  }
  TripleWithWitness r = a_equals_j_rank_one_tcp(b, c);
  CHECK(verify_tcp_witness(r.triple, r.witness));
  CHECK_THROWS_AS(a_equals_j_rank_one_tcp(2.0 * b, c), ValidationError);
  auto cert = certify_tcp(r.triple);
  REQUIRE(cert.has_value());
  CHECK(cert->witness.has_value());
}

TEST_CASE("Gurvits ball and the shifted criteria") {
  const Index d = 3;
  const Matrix I = Matrix::Identity(d, d);
  MatrixTriple maxmix(Matrix::Ones(d, d), I, I);
  CHECK(gurvits_ball_test(maxmix).certified);
  MatrixTriple edge(Matrix::Ones(d, d), Matrix::Ones(d, d), I);
  CHECK_FALSE(gurvits_ball_test(edge).certified);
  MatrixTriple one(Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1));
  CHECK(gurvits_ball_test(one).certified);

  Rng rng(15);
  MatrixTriple t = rng.hermitian_triple(d);
  ConditionalExpectations ce = conditional_expectations(t);
  const double dd = static_cast<double>(d);
  CHECK(max_abs_diff(dplusone_shift(t, Side::row), dd * ce.id_trace_row) < 1e-12);
  CHECK(max_abs_diff(dplusone_shift(t, Side::col), dd * ce.id_trace_col) < 1e-12);
  CHECK(dplusone_test(maxmix, Side::row).certified);
  CHECK(dplusone_test(maxmix, Side::col).certified);
}

TEST_CASE("cp_to_tcp uses entrywise square roots") {
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 4;
    Matrix N = rng.real_matrix(d, 3).cwiseAbs().cast<cplx>();
    TripleWithWitness r = cp_to_tcp(N * N.transpose(), N);
    CHECK(verify_tcp_witness(r.triple, r.witness));
  }
  Matrix N = -Matrix::Ones(2, 2);
  CHECK_THROWS_AS(cp_to_tcp(N * N.transpose(), N), ValidationError);
}

TEST_CASE("witness combinators") {
  Rng rng(17);
  TcpWitness w1 = rng.witness(3, 2), w2 = rng.witness(3, 1);
  TcpWitness c = combine_witnesses({0.25, 2.0}, {w1, w2});
  MatrixTriple expected = 0.25 * triple_of(w1) + 2.0 * triple_of(w2);
  CHECK(verify_tcp_witness(expected, c));
  CHECK_THROWS_AS(combine_witnesses({-1.0}, {w1}), ValidationError);

  TcpWitness s = direct_sum(w1, rng.witness(2, 2));
  CHECK(s.V.rows() == 5);
  CHECK(max_abs_diff(principal_subtriple(triple_of(s), {0, 1, 2}), triple_of(w1)) < 1e-12);

  TcpWitness r = restrict_rows(w1, {2, 0});
  CHECK(max_abs_diff(triple_of(r), principal_subtriple(triple_of(w1), {2, 0})) < 1e-12);
}

TEST_CASE("certify_tcp on the Werner endpoints") {
  for (Index d = 2; d <= 4; ++d) {
    const double a = 1.0, dd = static_cast<double>(d);
    for (double b : {-a / dd, a}) {
      auto w = gallery::werner(a, b, d);
      auto cert = certify_tcp(w.triple);
      REQUIRE(cert.has_value());
      REQUIRE(cert->witness.has_value());
      CHECK(verify_tcp_witness(w.triple, *cert->witness));
    }
  }
}

TEST_CASE("certify_tcp refuses non-PSD input") {
  MatrixTriple t(Matrix::Ones(2, 2), -2.0 * Matrix::Ones(2, 2), Matrix::Ones(2, 2));
  t.B.diagonal() = t.A.diagonal();
  CHECK_FALSE(certify_tcp(t).has_value());
}
