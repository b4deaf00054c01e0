#include "qmes/classify.h"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qmes {

int pair_of(PauliIndex k) {
  for (int j = 0; j < 4; ++j) {
    if (k == kPairRepresentatives[j] || k == -kPairRepresentatives[j]) return j;
  }
  return -1;
}

PairSet pair_bit(PauliIndex k) {
  const int j = pair_of(k);
  return j < 0 ? 0u : (1u << j);
}

int pair_count(PairSet s) { return std::popcount(s); }

bool SupportPattern::confined(int party, PauliIndex w) const {
  return (pairs[party] & ~pair_bit(w)) == 0;
}

std::vector<PauliIndex> SupportPattern::indices(int party) const {
  std::vector<PauliIndex> out;
  for (int p = 1; p < 9; ++p) {
    if (pairs[party] & pair_bit(kPauliOrder[p])) out.push_back(kPauliOrder[p]);
  }
  return out;
}

SupportPattern support_pattern(const GramTriple& h, const ClassifierOptions& opt) {
  SupportPattern out;
  for (int i = 0; i < 3; ++i) {
    const double cut = opt.tau * h.coords[i].cwiseAbs().maxCoeff();
    for (int j = 0; j < 4; ++j) {
      const PauliIndex w = kPairRepresentatives[j];
      const double x = std::abs(h.coords[i](w.position()));
      const double y = std::abs(h.coords[i]((-w).position()));
      const double hi = std::max(x, y), lo = std::min(x, y);
      std::ostringstream where;
      where << "party " << i << " pair +-" << w;
      if (hi > cut && lo > cut) {
        out.pairs[i] |= 1u << j;
      } else if (hi > cut) {
        if (lo > cut / 10) {
          out.pairs[i] |= 1u << j;
          out.warnings.push_back(where.str() + ": only one of the pair exceeds the threshold; kept");
        } else {
          out.warnings.push_back(where.str() + ": only one of the pair exceeds the threshold; dropped");
        }
      }
      if (hi <= cut && hi > cut / 10) {
        out.warnings.push_back(where.str() + ": near-boundary coordinate treated as zero");
      } else if (hi > cut && lo > cut / 10 && lo <= cut) {
        out.warnings.push_back(where.str() + ": near-boundary coordinate");
      }
    }
  }
  return out;
}

std::vector<Permutation> permutations(const ClassifierOptions& opt) {
  const auto& all = all_permutations();
  return {all.begin(), all.begin() + (opt.cyclic_only ? 3 : 6)};
}

std::vector<SepReachCase> sep_reach_cases(const SupportPattern& s, const ClassifierOptions& opt) {
  std::vector<SepReachCase> out;
  auto seen = [&](const std::string& tag, int party, PauliIndex w) {
    return std::any_of(out.begin(), out.end(), [&](const SepReachCase& c) {
      const int key = tag == "i" ? c.perm[2] : c.perm[0];
      return c.tag == tag && key == party && c.w == w;
    });
  };
  for (const Permutation& pm : permutations(opt)) {
    const int r0 = pm[0], r1 = pm[1], r2 = pm[2];
    if (s.identity(r2) && (s.pairs[r0] & s.pairs[r1]) == 0 &&
        !(s.identity(r0) && s.identity(r1)) && !seen("i", r2, {})) {
      out.push_back({"i", pm, {}});
    }
    // With roles 1 and 2 both trivial every w qualifies; one entry suffices.
    const bool both_identity = s.identity(r1) && s.identity(r2);
    for (PauliIndex w : kPairRepresentatives) {
      if (!s.confined(r1, w) || !s.confined(r2, w) || s.confined(r0, w)) continue;
      if (seen("ii", r0, w)) continue;
      out.push_back({"ii", pm, w});
      if (both_identity) break;
    }
  }
  return out;
}

bool is_sep_reachable(const GramTriple& h, const ClassifierOptions& opt) {
  return !sep_reach_cases(support_pattern(h, opt), opt).empty();
}

std::optional<Lemma3Match> lemma3_match(const SupportPattern& s, const ClassifierOptions& opt) {
  for (const Permutation& pm : permutations(opt)) {
    if (s.identity(pm[2]) && pair_count(s.pairs[pm[0]]) == 2 && pair_count(s.pairs[pm[1]]) == 2 &&
        (s.pairs[pm[0]] | s.pairs[pm[1]]) == 0xFu) {
      return Lemma3Match{pm};
    }
  }
  return std::nullopt;
}

bool is_lemma3_family(const GramTriple& h, const ClassifierOptions& opt) {
  return lemma3_match(support_pattern(h, opt), opt).has_value();
}

std::optional<LoccMatch> locc_reach_match(const SupportPattern& s, const ClassifierOptions& opt) {
  const auto perms = permutations(opt);
  for (const Permutation& pm : perms) {
    if (s.identity(pm[1]) && s.identity(pm[2]) && !s.identity(pm[0])) return LoccMatch{pm, {}};
  }
  for (const Permutation& pm : perms) {
    for (PauliIndex w : kPairRepresentatives) {
      if (s.confined(pm[1], w) && s.confined(pm[2], w) && !s.confined(pm[0], w)) {
        return LoccMatch{pm, w};
      }
    }
  }
  return std::nullopt;
}

bool is_locc_reachable(const GramTriple& h, const ClassifierOptions& opt) {
  return locc_reach_match(support_pattern(h, opt), opt).has_value();
}

std::optional<LoccMatch> locc_convert_match(const SupportPattern& s, const ClassifierOptions& opt) {
  const auto perms = permutations(opt);
  std::optional<LoccMatch> fallback;
  for (const Permutation& pm : perms) {
    for (PauliIndex w : kPairRepresentatives) {
      if (!s.confined(pm[1], w) || !s.confined(pm[2], w)) continue;
      if (!s.confined(pm[0], w)) return LoccMatch{pm, w};
      if (!fallback) fallback = LoccMatch{pm, w};
    }
  }
  if (fallback) return fallback;
  for (const Permutation& pm : perms) {
    if (s.identity(pm[1]) && s.identity(pm[2])) return LoccMatch{pm, {}};
  }
  return std::nullopt;
}

bool is_locc_convertible(const GramTriple& g, const ClassifierOptions& opt) {
  return locc_convert_match(support_pattern(g, opt), opt).has_value();
}

std::vector<std::string> Classification::lattice_violations() const {
  std::vector<std::string> out;
  if (locc_reachable && !sep_reachable) out.push_back("locc_reachable without sep_reachable");
  if (sep_only && !(sep_reachable && !locc_reachable)) out.push_back("sep_only inconsistent");
  if (in_mes == locc_reachable) out.push_back("in_mes != !locc_reachable");
  if (isolated != (in_mes && !locc_convertible)) out.push_back("isolated != in_mes && !locc_convertible");
  if (sep_only != lemma3) out.push_back("sep_only differs from the tiling-family test");
  return out;
}

Classification classify(const GramTriple& h, const ClassifierOptions& opt) {
  Classification c;
  c.support = support_pattern(h, opt);
  c.warnings = c.support.warnings;
  c.cases = sep_reach_cases(c.support, opt);
  c.sep_reachable = !c.cases.empty();
  c.locc_reach = locc_reach_match(c.support, opt);
  c.locc_reachable = c.locc_reach.has_value();
  c.lemma3 = lemma3_match(c.support, opt).has_value();
  c.sep_only = c.sep_reachable && !c.locc_reachable;
  c.locc_convert = locc_convert_match(c.support, opt);
  c.locc_convertible = c.locc_convert.has_value();
  c.in_mes = !c.locc_reachable;
  c.isolated = c.in_mes && !c.locc_convertible;
  return c;
}

Classification classify(const GenericState& s, const ClassifierOptions& opt) {
  return classify(gram(s), opt);
}

}  // namespace qmes
