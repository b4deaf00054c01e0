#ifndef QMES_CLASSIFY_H_
#define QMES_CLASSIFY_H_

#include <optional>
#include <string>
#include <vector>

#include "qmes/state.h"

namespace qmes {

/// Bit j is set when the pair {+-kPairRepresentatives[j]} is in the support.
using PairSet = unsigned;

struct SupportPattern {
  std::array<PairSet, 3> pairs{};
  std::vector<std::string> warnings;

  bool identity(int party) const { return pairs[party] == 0; }
  /// Support of the party lies inside {+-w} (w == 0 means empty support).
  bool confined(int party, PauliIndex w) const;
  /// Nonzero indices of the party's support, canonical order.
  std::vector<PauliIndex> indices(int party) const;
};

/// Index j of the pair {+-k}; -1 for k == 0.
int pair_of(PauliIndex k);
PairSet pair_bit(PauliIndex k);
int pair_count(PairSet s);

struct ClassifierOptions {
  /// Support threshold relative to the largest coordinate (1/3 for a
  /// trace-normalized positive operator).
  double tau = 1e-9;
  bool cyclic_only = false;
};

SupportPattern support_pattern(const GramTriple& h, const ClassifierOptions& opt = {});

using Permutation = std::array<int, 3>;

/// Permutations consulted for "up to permutations of the parties".
std::vector<Permutation> permutations(const ClassifierOptions& opt);

struct SepReachCase {
  std::string tag = "i";  // "i" or "ii"
  Permutation perm{0, 1, 2};
  /// For case (ii): roles perm[1], perm[2] are confined to {+-w}.
  PauliIndex w;
};

/// Role convention for a match under perm: role r is played by party perm[r].
/// Case (i): role 2 proportional to identity, roles 0 and 1 with disjoint
/// supports, not both trivial. Case (ii): roles 1 and 2 confined to a common
/// {+-w}, w != 0, role 0 not confined. Every matching case is reported once
/// per distinct (tag, parties, w).
std::vector<SepReachCase> sep_reach_cases(const SupportPattern& s, const ClassifierOptions& opt = {});
bool is_sep_reachable(const GramTriple& h, const ClassifierOptions& opt = {});

struct Lemma3Match {
  Permutation perm{0, 1, 2};
};
std::optional<Lemma3Match> lemma3_match(const SupportPattern& s, const ClassifierOptions& opt = {});
bool is_lemma3_family(const GramTriple& h, const ClassifierOptions& opt = {});

/// Roles 1 and 2 confined to a common {+-w} and role 0 not, with w == 0
/// standing for two parties proportional to the identity.
struct LoccMatch {
  Permutation perm{0, 1, 2};
  PauliIndex w;
};
std::optional<LoccMatch> locc_reach_match(const SupportPattern& s, const ClassifierOptions& opt = {});
bool is_locc_reachable(const GramTriple& h, const ClassifierOptions& opt = {});

/// Roles 1 and 2 confined to a common {+-w} (w == 0 admitted); role 0 free.
/// Prefers a w for which role 0 is not confined.
std::optional<LoccMatch> locc_convert_match(const SupportPattern& s, const ClassifierOptions& opt = {});
bool is_locc_convertible(const GramTriple& g, const ClassifierOptions& opt = {});

struct Classification {
  bool sep_reachable = false;
  std::vector<SepReachCase> cases;
  bool locc_reachable = false;
  std::optional<LoccMatch> locc_reach;
  bool lemma3 = false;
  bool sep_only = false;
  bool locc_convertible = false;
  std::optional<LoccMatch> locc_convert;
  bool in_mes = false;
  bool isolated = false;
  SupportPattern support;
  std::vector<std::string> warnings;

  /// Checks the implication lattice; returns the violated implications.
  std::vector<std::string> lattice_violations() const;
};

Classification classify(const GramTriple& h, const ClassifierOptions& opt = {});
Classification classify(const GenericState& s, const ClassifierOptions& opt = {});

}  // namespace qmes

#endif  // QMES_CLASSIFY_H_
