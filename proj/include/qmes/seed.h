#ifndef QMES_SEED_H_
#define QMES_SEED_H_

#include <optional>
#include <string>
#include <vector>

#include "qmes/pauli.h"

namespace qmes {

/// Seed amplitudes (a, b, c) of
///   a(|000>+|111>+|222>) + b(|012>+|201>+|120>) + c(|021>+|210>+|102>).
struct SeedParams {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};

  /// Unit 2-norm, first nonzero entry real positive. Throws on (0,0,0).
  SeedParams canonical() const;
  bool is_canonical(double tol = 1e-12) const;
  double norm() const;

  /// Parameters of the seed after exchanging parties 1 and 2 (b <-> c);
  /// cyclic party shifts leave the seed unchanged.
  SeedParams transposed() const { return {a, c, b}; }
};

bool same_seed(const SeedParams& x, const SeedParams& y, double tol = 1e-9);

struct GenericityCondition {
  std::string name;
  /// |polynomial| divided by ||(a,b,c)||^degree.
  double scaled_value = 0.0;
};

struct GenericityReport {
  bool generic = false;
  std::vector<GenericityCondition> conditions;  // all 22, fixed order
  std::vector<GenericityCondition> violations;  // those below the margin
  double margin = 0.0;                          // smallest scaled value
};

inline constexpr double kDefaultGenericMargin = 1e-6;

Ket27 build_seed(const SeedParams& p);

/// Evaluates the 22 exclusion polynomials; generic iff all scaled values
/// are at least delta.
GenericityReport check_generic(const SeedParams& p, double delta = kDefaultGenericMargin);

/// ||(A (x) B (x) C) psi - psi|| / ||psi||.
double symmetry_residual(const Mat3& a, const Mat3& b, const Mat3& c, const SeedParams& p);

/// Max over k of the S_k^{(x)3} symmetry residual. Throws std::runtime_error
/// above 1e-8.
double verify_symmetries(const SeedParams& p);

/// The nine bipartite vectors (parties 2 and 3, index 3j+k) orthogonal to
/// every party-1 slice of the seed.
std::array<Eigen::Matrix<Complex, 9, 1>, 9> phi_states(const SeedParams& p);

/// Contractions <phi_i|_{23} (I (x) B (x) C)|psi>, one 3-vector per i.
std::array<Eigen::Vector3cd, 9> phi_contractions(const Mat3& b, const Mat3& c,
                                                 const SeedParams& p);

/// Max over i of the contraction norm with B, C rescaled to Frobenius norm
/// sqrt(3) and psi, phi_i normalized. Zero is necessary for (B, C) to be
/// the last two factors of a symmetry.
double projection_residual(const Mat3& b, const Mat3& c, const SeedParams& p);

struct AppendixMatrices {
  std::array<Mat3, 3> m;
};

/// M_i = [[a,c,b],[b,a,c],[c,b,a]] (.) [[B_i0,B_i2,B_i1],[B_i2,B_i1,B_i0],[B_i1,B_i0,B_i2]].
AppendixMatrices build_appendix_Mi(const Mat3& b, const SeedParams& p);

/// Closed-form adjugate of M_i in terms of row i of B.
Mat3 appendix_adjugate(const Mat3& b, int row, const SeedParams& p);

enum class CandidateKind { kMonomial, kDense };

struct AppendixCandidate {
  CandidateKind kind = CandidateKind::kMonomial;
  Mat3 matrix;
  /// (i, j, k, l, m) for dense candidates; permutation and phase exponents
  /// (sigma0, sigma1, sigma2, e0, e1, e2) flattened for monomials.
  std::vector<int> parameters;
};

/// Scales to Frobenius norm sqrt(3) and fixes the global phase so the first
/// entry with magnitude above 1e-9 is real positive.
Mat3 projective_normalize(const Mat3& m);

/// Generalized permutation matrices with cube-root-of-unity entries,
/// reduced projectively (54 classes out of 6 x 27).
std::vector<AppendixCandidate> monomial_candidates();

/// The 162 dense candidates with B_00 = 1.
std::vector<AppendixCandidate> dense_candidates();

/// Returns k if m is proportional to S_k (to 1e-9), else nullopt.
std::optional<PauliIndex> match_pauli(const Mat3& m, double tol = 1e-9);

struct AuditSurvivor {
  int b_index = 0;
  int c_index = 0;
  CandidateKind b_kind = CandidateKind::kMonomial;
  CandidateKind c_kind = CandidateKind::kMonomial;
  double residual = 0.0;
  std::optional<PauliIndex> pauli;  // set when B ~ C ~ S_k
  double full_symmetry_residual = 0.0;  // with A = B, up to global phase
};

struct AuditReport {
  int candidate_count = 0;
  long pair_count = 0;
  std::vector<AuditSurvivor> survivors;
  /// Survivors that are not a (S_k, S_k) pair.
  std::vector<AuditSurvivor> surplus;
  /// Smallest projection residual among rejected pairs.
  double rejection_margin = 0.0;
  bool ok = false;  // exactly the nine (S_k, S_k) pairs survive
};

/// Runs every (B, C) pair drawn from the monomial and dense candidate sets
/// through projection_residual. Throws DomainError for non-generic seeds.
AuditReport symmetry_audit(const SeedParams& p, double survivor_tol = 1e-9);

}  // namespace qmes

#endif  // QMES_SEED_H_
