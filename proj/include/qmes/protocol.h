#ifndef QMES_PROTOCOL_H_
#define QMES_PROTOCOL_H_

#include <optional>
#include <string>
#include <vector>

#include "qmes/classify.h"
#include "qmes/sep.h"

namespace qmes {

/// One product Kraus operator f[0] (x) f[1] (x) f[2].
struct KrausElement {
  std::array<Mat3, 3> factors;
  std::string label;
};

Op27 kraus_operator(const KrausElement& e);
Ket27 apply(const KrausElement& e, const Ket27& v);

struct KrausSet {
  std::vector<KrausElement> elements;
  /// Rescalings applied to target factors so the map is trace preserving.
  std::vector<std::string> rescale_log;
};

/// A SEP map together with the states it connects.
struct SepMap {
  KrausSet kraus;
  GenericState initial;
  GenericState target;
  bool trivial = false;  // initial and target LU-equivalent
};

/// M_k = (1/3)(h1 (x) h2 (x) u) S_k^{(x)3} from the seed, with party perm[r]
/// playing role r. Role 2 must have a Gram factor proportional to the
/// identity; h1, h2 are rescaled to tr(h^dag h) = 3. Overlapping supports
/// are not rejected here: the completeness residual exposes them.
SepMap sep_map_case_i(const GenericState& target, const Permutation& perm = {0, 1, 2});
SepMap sep_map_case_i(const Mat3& h1, const Mat3& h2, const SeedParams& seed);

/// M_k = (1/sqrt 3)(h1 S_k g^-1) (x) c_k (x) c'_k over k in {0, +-w}, where
/// g = g^1_w is the span factor of (1/3) sum_k S_k^dag H1 S_k and the other
/// two parties get the corrections b S_k b^-1.
SepMap sep_map_case_ii(const GenericState& target, PauliIndex w, const Permutation& perm = {0, 1, 2});

struct LoccStage {
  int party = 0;  // the measuring party
  /// Per outcome: factors[party] is the POVM element, the others are the
  /// correction unitaries applied after the outcome is broadcast.
  std::vector<KrausElement> outcomes;
};

struct LoccProtocol {
  std::string construction;
  GenericState initial;
  GenericState target;
  std::vector<LoccStage> stages;
  std::vector<std::string> log;
  bool trivial = false;
};

/// One-round protocol reaching target from an LU-inequivalent state, or the
/// degenerate nine-outcome protocol from the seed when two parties are
/// proportional to unitaries. Throws DomainError if target is not
/// LOCC-reachable (or match does not fit it).
LoccProtocol locc_protocol_reach(const GenericState& target,
                                 std::optional<LoccMatch> match = std::nullopt,
                                 const ClassifierOptions& opt = {});

/// Two stages from the seed for h1 (x) h2_w (x) u with h1 supported off
/// {+-w}: party perm[1] first prepares h2_w, then party perm[0] applies h1.
LoccProtocol locc_protocol_two_stage(const GenericState& target, PauliIndex w,
                                     const Permutation& perm = {0, 1, 2});

struct ConvertStep {
  LoccProtocol protocol;
  GenericState target;
  double epsilon = 0.0;
  ProbabilityVector p;
  /// The source factor already lay in span{I, S_w, S_-w}; the target was
  /// obtained with p uniform on {0, +-w} and a perturbation off the span.
  bool uniform_path = false;
};

inline constexpr double kPositivityMargin = 1e-6;
inline constexpr double kMinEpsilon = 1e-8;

/// One LOCC step away from a convertible source. epsilon < 0 selects it
/// automatically by halving from 1/2 until the trace-normalized target
/// factor has smallest eigenvalue at least kPositivityMargin.
ConvertStep locc_convert_step(const GenericState& source,
                              std::optional<LoccMatch> match = std::nullopt, double epsilon = -1.0,
                              const ClassifierOptions& opt = {});

/// ||sum M^dag M - I||_F on the full space.
double validate_povm(const KrausSet& k);
/// Completeness of the measuring party's POVM plus the worst unitarity
/// defect of the corrections.
double validate_povm(const LoccStage& s);
double validate_protocol(const LoccProtocol& p);

struct Branch {
  std::vector<int> outcomes;
  std::string label;
  double probability = 0.0;
  Ket27 output;
  double distance = 0.0;  // ray distance to the target
  bool matches = false;
  bool zero_probability = false;
};

struct BranchReport {
  std::vector<Branch> branches;
  double total_probability = 0.0;
  bool all_match = false;  // every branch with nonzero probability matches
  double max_distance = 0.0;
};

BranchReport simulate_branches(const LoccProtocol& p, const Ket27& input);
BranchReport simulate_branches(const LoccProtocol& p);
BranchReport simulate_branches(const KrausSet& k, const Ket27& input, const Ket27& target);

/// Rescales m so that tr(m^dag m) = 3.
Mat3 unit_scaled(const Mat3& m);

}  // namespace qmes

#endif  // QMES_PROTOCOL_H_
