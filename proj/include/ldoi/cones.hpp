#ifndef LDOI_CONES_HPP
#define LDOI_CONES_HPP

#include <optional>
#include <string>
#include <vector>

#include "ldoi/triple.hpp"

namespace ldoi {

struct TcpWitness {
  Matrix V, W;  // d x d', any width d' >= 1
  Index width() const { return V.cols(); }
};

enum class TestStatus { pass, fail, not_applicable };
std::string to_string(TestStatus s);

struct TestItem {
  std::string name;
  TestStatus status;
  double margin;  // signed: negative means violated
};

struct CertificateReport {
  std::vector<TestItem> items;

  bool passed() const;  // no item failed
  const TestItem* find(const std::string& name) const;
  void add(std::string name, double margin, double allowance);
  void add_na(std::string name);
};

// Entrywise identities behind the TCP/PCP definitions.
Matrix tcp_A(const TcpWitness& w);
Matrix tcp_B(const TcpWitness& w);
Matrix tcp_C(const TcpWitness& w);
MatrixTriple triple_of(const TcpWitness& w);

CertificateReport psd_test(const MatrixTriple& t, const Tolerance& tol = {});
CertificateReport ppt_test(const MatrixTriple& t, const Tolerance& tol = {});
CertificateReport realignment_test(const MatrixTriple& t, const Tolerance& tol = {});
bool quantum_state_test(const MatrixTriple& t, const Tolerance& tol = {});
CertificateReport tcp_necessary_battery(const MatrixTriple& t, const Tolerance& tol = {});

bool verify_tcp_witness(const MatrixTriple& t, const TcpWitness& w, const Tolerance& tol = {});
bool verify_pcp_witness(const MatrixPair& p, const TcpWitness& w, const Tolerance& tol = {});

struct PcpResult {
  bool certified = false;
  std::string reason;
  std::optional<TcpWitness> witness;  // set whenever certified
};

// Diagonal dominance or PSD comparison matrix; the witness is built explicitly.
PcpResult pcp_sufficient(const MatrixPair& p, const Tolerance& tol = {});
// pcp_sufficient, then the A = J factorization, then a rank-one peel followed by pcp_sufficient.
PcpResult pcp_construct(const MatrixPair& p, const Tolerance& tol = {});

enum class PhaseFixVariant { B, B_transpose };
struct TripleWithWitness {
  MatrixTriple triple;
  TcpWitness witness;
};
TripleWithWitness tcp_from_pcp_phasefix(const MatrixPair& p, const TcpWitness& w, PhaseFixVariant variant,
                                        const Tolerance& tol = {});

// Witness for (A, B, diag A) from a PCP witness of (A, B); the C off-diagonal is averaged away.
TcpWitness dephase_c(const TcpWitness& w);
// Witness for (A, diag A, C) from a PCP witness of (A, C).
TcpWitness dephase_b_from_pair(const TcpWitness& w);
// Swaps the roles of B and C: witness of (A, C, B).
TcpWitness conjugate_w(const TcpWitness& w);

TripleWithWitness extremal_tcp_ray(const Vector& v, const Vector& w);

struct PairWithWitness {
  MatrixPair pair;
  TcpWitness witness;
};
PairWithWitness a_equals_j_pcp(const Matrix& B, const Tolerance& tol = {});
TripleWithWitness a_equals_j_rank_one_tcp(const Vector& b, const Vector& c, const Tolerance& tol = {});

struct CriterionResult {
  bool certified = false;
  double margin = 0.0;
  std::string reason;
};
CriterionResult gurvits_ball_test(const MatrixTriple& t, const Tolerance& tol = {});
enum class Side { row, col };
CriterionResult dplusone_test(const MatrixTriple& t, Side side, const Tolerance& tol = {});
// The triple subtracted by the (d+1) criterion: I-slot of the partial trace.
MatrixTriple dplusone_shift(const MatrixTriple& t, Side side);

TripleWithWitness cp_to_tcp(const Matrix& A, const Matrix& N, const Tolerance& tol = {});

enum class PsdRayKind { unit_ii, pair, diag_vector, product_ij };
struct PsdRayParams {
  Index d = 0;
  Index i = 0, j = 0;
  Vector x;  // pair: 2-vector; diag_vector: d-vector
};
MatrixTriple extremal_psd_ray(InvariantClass c, PsdRayKind kind, const PsdRayParams& params);

// Column concatenation of scaled witnesses: a witness of sum_k weights[k] * t_k.
TcpWitness combine_witnesses(const std::vector<double>& weights, const std::vector<TcpWitness>& ws);
TcpWitness direct_sum(const TcpWitness& w1, const TcpWitness& w2);
TcpWitness restrict_rows(const TcpWitness& w, const std::vector<Index>& I);

struct TcpCertificate {
  std::string method;
  std::optional<TcpWitness> witness;  // empty only for criterion-based certificates
  double margin = 0.0;
};
// Runs the constructive certificates, then the ball and (d+1) criteria.
std::optional<TcpCertificate> certify_tcp(const MatrixTriple& t, const Tolerance& tol = {});

}  // namespace ldoi

#endif
