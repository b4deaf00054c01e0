#ifndef QMES_ORACLE_H_
#define QMES_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "qmes/sep.h"

namespace qmes {

// Independent checks for the engines. Nothing here goes through the 27x27
// operator path or Eigen's decompositions used by sep_feasible: the SEP
// oracle works on tensor Pauli coordinates with hand-written elimination.

struct OracleBudget {
  int starts = 10000;
  int iterations = 1000;
  std::uint64_t rng_seed = 1;
};

enum class OracleOutcome { kFeasible, kInfeasible, kInconclusive };

const char* to_string(OracleOutcome o);

struct OracleVerdict {
  OracleOutcome outcome = OracleOutcome::kInconclusive;
  bool feasible = false;
  /// Frobenius residual of the best point found (basis enumeration or
  /// projected gradient, whichever is smaller).
  double best_residual = 0.0;
  double enumeration_residual = 0.0;
  double gradient_residual = 0.0;
  int sample_count = 0;
  int bases_solved = 0;
  std::optional<ProbabilityVector> witness;
};

/// Decides sum_k p_k (S_k^dag)^{(x)3} H S_k^{(x)3} = G over the simplex two
/// ways: least squares on every support subset of {p_k}, and accelerated
/// projected gradient from random simplex points. Disagreement yields
/// kInconclusive.
OracleVerdict brute_force_sep(const GramTriple& g, const GramTriple& h, const OracleBudget& budget = {});

struct SymmetryBudget {
  int starts = 200;
  int iterations = 300;
  std::uint64_t rng_seed = 1;
};

struct LocalSymmetry {
  Mat3 a, b, c;  // each normalized to Frobenius norm sqrt(3), phase-fixed
  double residual = 0.0;
  std::optional<PauliIndex> pauli;  // set when a ~ b ~ c ~ S_k
  int hits = 1;
};

struct SymmetrySearchReport {
  std::vector<LocalSymmetry> clusters;
  int converged = 0;
  int failed = 0;
  bool matches_pauli_group = false;  // exactly the nine Pauli clusters
};

/// Levenberg-Marquardt on ||(A (x) B (x) C) psi - psi|| / ||psi|| from a
/// starting triple. Returns the refined triple with its residual.
LocalSymmetry refine_symmetry(const SeedParams& seed, const Mat3& a, const Mat3& b, const Mat3& c,
                              int iterations);

SymmetrySearchReport numeric_symmetry_search(const SeedParams& seed, const SymmetryBudget& budget = {});

}  // namespace qmes

#endif  // QMES_ORACLE_H_
