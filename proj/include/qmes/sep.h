#ifndef QMES_SEP_H_
#define QMES_SEP_H_

#include <optional>
#include <string>
#include <vector>

#include "qmes/state.h"

namespace qmes {

/// A probability vector over Z3^2 in canonical order.
using ProbabilityVector = Weights9;
/// eta_l = sum_k p_k e^{i phi_{lk}}, canonical order.
using EtaVector = Coords;

/// Initial G and final H of a candidate transformation, both
/// trace-normalized. Raw factors are kept when known.
struct SepInstance {
  SeedParams seed;
  GramTriple initial;
  GramTriple target;
  std::optional<GenericState> initial_state;
  std::optional<GenericState> target_state;
};

/// Throws SeedMismatch if the seeds differ.
SepInstance make_instance(const GenericState& from, const GenericState& to);
SepInstance make_instance(const SeedParams& seed, const GramTriple& from, const GramTriple& to);

struct SepVertex {
  ProbabilityVector p;
  double residual = 0.0;
  /// The induced initial state is LU-equivalent to the target.
  bool trivial = false;
};

struct SepFeasibility {
  bool feasible = false;
  std::optional<ProbabilityVector> witness;
  double residual = 0.0;  // least-squares residual of the affine system
  int affine_dim = -1;    // dimension of the feasible polytope, -1 if empty
  int nullity = 0;        // dimension of the unconstrained affine solution set
  std::vector<SepVertex> vertices;
  bool unique = false;
  bool nontrivial = false;
};

Mat3 depolarize(const Mat3& h, const ProbabilityVector& p);

EtaVector eta_from_p(const ProbabilityVector& p);

/// Uniform weight over the listed group elements.
ProbabilityVector uniform_on(const std::vector<PauliIndex>& ks);
ProbabilityVector uniform_p();
ProbabilityVector point_mass(PauliIndex k = {});

/// Coordinatewise depolarization of all three parties.
GramTriple induced_initial(const GramTriple& h, const ProbabilityVector& p);

struct EtaCheck {
  bool ok = true;
  std::vector<std::string> violations;
  double max_violation = 0.0;
};

/// Triple condition eta_l eta_m eta_n = eta_{l+m+n} on the joint support of
/// (h1, h2, h3), and the pairwise condition eta_l eta_m = eta_{l+m} on every
/// pair of parties.
EtaCheck check_eta_conditions(const std::array<Coords, 3>& h, const EtaVector& eta,
                              double tol = 1e-9);

/// || sum_k p_k (S_k^dag)^{(x)3} H S_k^{(x)3} - G ||_F on 27x27 operators.
double transformation_residual(const GramTriple& g, const GramTriple& h,
                               const ProbabilityVector& p);

SepFeasibility sep_feasible(const SepInstance& inst);

/// Result of searching for an LU-inequivalent SEP predecessor of H.
struct ReachSearch {
  bool found = false;
  ProbabilityVector p;      // the witness that produced the predecessor
  GramTriple predecessor;   // G = induced_initial(H, p)
  SepFeasibility feasibility;
};

/// Tries the predecessors induced by the uniform distribution and by the
/// uniform distributions on {0, +-w} for the four pairs w.
ReachSearch sep_reach_search(const SeedParams& seed, const GramTriple& h);

/// The candidate distributions used by sep_reach_search, uniform first.
std::vector<ProbabilityVector> predecessor_candidates();

}  // namespace qmes

#endif  // QMES_SEP_H_
