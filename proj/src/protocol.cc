#include "qmes/protocol.h"

#include <cmath>
#include <sstream>

namespace qmes {

namespace {

constexpr double kUnitaryTol = 1e-8;

std::string outcome_label(PauliIndex k) {
  std::ostringstream os;
  os << "k=" << k;
  return os.str();
}

std::vector<PauliIndex> coset(PauliIndex w) { return {PauliIndex{}, w, -w}; }

std::vector<PauliIndex> whole_group() { return {kPauliOrder.begin(), kPauliOrder.end()}; }

bool is_unitary(const Mat3& u, double tol = kUnitaryTol) {
  return (u.adjoint() * u - Mat3::Identity()).norm() <= tol;
}

// Outcome k acts as sqrt(weight_k) b S_k a^-1 on the measuring party and as
// b S_k a^-1 on the others, taking the product state with factors a to the
// one with factors b in every branch.
LoccStage make_stage(int party, const std::array<Mat3, 3>& a, const std::array<Mat3, 3>& b,
                     const std::vector<PauliIndex>& ks, const std::vector<double>& weights) {
  LoccStage st;
  st.party = party;
  std::array<Mat3, 3> inv;
  for (int i = 0; i < 3; ++i) inv[i] = a[i].inverse();
  for (size_t j = 0; j < ks.size(); ++j) {
    KrausElement e;
    e.label = outcome_label(ks[j]);
    for (int i = 0; i < 3; ++i) e.factors[i] = b[i] * pauli(ks[j]) * inv[i];
    e.factors[party] *= std::sqrt(weights[j]);
    st.outcomes.push_back(std::move(e));
  }
  return st;
}

std::array<Mat3, 3> identities() { return {Mat3::Identity(), Mat3::Identity(), Mat3::Identity()}; }

void log_rescale(std::vector<std::string>& log, int party, const Mat3& before, const Mat3& after) {
  const double s = after.norm() / before.norm();
  if (std::abs(s - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "party " << party << " factor rescaled by " << s;
    log.push_back(os.str());
  }
}

// Rescales role factors to tr(h^dag h) = 3 and requires unitarity where asked.
std::array<Mat3, 3> rescaled_target(const GenericState& t, const Permutation& perm,
                                    const std::array<bool, 3>& rescale,
                                    const std::array<bool, 3>& must_be_unitary,
                                    std::vector<std::string>& log) {
  std::array<Mat3, 3> b = t.g;
  for (int r = 0; r < 3; ++r) {
    const int party = perm[r];
    if (!rescale[r]) continue;
    b[party] = unit_scaled(t.g[party]);
    log_rescale(log, party, t.g[party], b[party]);
    if (must_be_unitary[r] && !is_unitary(b[party])) {
      throw DomainError("party " + std::to_string(party) +
                        " factor is not proportional to a unitary");
    }
  }
  return b;
}

void require_span(const GenericState& t, int party, PauliIndex w) {
  const Mat3 gram_op = t.g[party].adjoint() * t.g[party];
  if (!in_span(pauli_coords(gram_op), w)) {
    std::ostringstream os;
    os << "party " << party << " Gram factor is not in span{I, S_w, S_-w} for w = " << w;
    throw DomainError(os.str());
  }
}

KrausSet to_kraus(const LoccStage& st) {
  KrausSet k;
  k.elements = st.outcomes;
  return k;
}

void simulate_stages(const LoccProtocol& p, size_t stage, const Ket27& v, Branch current,
                     const Ket27& target, double norm2, BranchReport& out) {
  if (stage == p.stages.size()) {
    current.output = v;
    current.probability = v.squaredNorm() / norm2;
    current.zero_probability = current.probability < 1e-14;
    current.distance = current.zero_probability ? 0.0 : ray_distance(target, v);
    current.matches = !current.zero_probability && current.distance <= tolerances().branch_match;
    out.branches.push_back(std::move(current));
    return;
  }
  const LoccStage& st = p.stages[stage];
  for (size_t j = 0; j < st.outcomes.size(); ++j) {
    Branch next = current;
    next.outcomes.push_back(static_cast<int>(j));
    next.label += (next.label.empty() ? "" : " ") + st.outcomes[j].label;
    simulate_stages(p, stage + 1, apply(st.outcomes[j], v), next, target, norm2, out);
  }
}

void finish(BranchReport& r) {
  r.all_match = true;
  for (const Branch& b : r.branches) {
    r.total_probability += b.probability;
    if (b.zero_probability) continue;
    r.max_distance = std::max(r.max_distance, b.distance);
    if (!b.matches) r.all_match = false;
  }
}

}  // namespace

Mat3 unit_scaled(const Mat3& m) {
  const double t = (m.adjoint() * m).trace().real();
  if (!(t > 0.0)) throw DomainError("cannot rescale a zero factor");
  return m * std::sqrt(3.0 / t);
}

Op27 kraus_operator(const KrausElement& e) { return kron3(e.factors[0], e.factors[1], e.factors[2]); }

Ket27 apply(const KrausElement& e, const Ket27& v) {
  return apply3(e.factors[0], e.factors[1], e.factors[2], v);
}

SepMap sep_map_case_i(const GenericState& target, const Permutation& perm) {
  SepMap m;
  m.target = target;
  m.target.g = rescaled_target(target, perm, {true, true, true}, {false, false, true},
                               m.kraus.rescale_log);
  m.initial = GenericState{target.seed, identities()};
  for (PauliIndex k : kPauliOrder) {
    KrausElement e;
    e.label = outcome_label(k);
    for (int i = 0; i < 3; ++i) e.factors[i] = m.target.g[i] * pauli(k);
    e.factors[perm[0]] /= 3.0;
    m.kraus.elements.push_back(std::move(e));
  }
  m.trivial = lu_equivalent(m.initial, m.target);
  return m;
}

SepMap sep_map_case_i(const Mat3& h1, const Mat3& h2, const SeedParams& seed) {
  return sep_map_case_i(GenericState{seed, {h1, h2, Mat3::Identity()}});
}

SepMap sep_map_case_ii(const GenericState& target, PauliIndex w, const Permutation& perm) {
  if (w.is_zero()) throw DomainError("case (ii) map needs w != 0");
  require_span(target, perm[1], w);
  require_span(target, perm[2], w);
  const int r0 = perm[0];
  const Mat3 h1_gram = target.g[r0].adjoint() * target.g[r0];
  const Mat3 g1 = span_factor(depolarize(h1_gram, uniform_on(coset(w))), w);
  SepMap m;
  m.target = target;
  m.initial = target;
  m.initial.g[r0] = g1;
  m.kraus = to_kraus(make_stage(r0, m.initial.g, m.target.g, coset(w), {1 / 3.0, 1 / 3.0, 1 / 3.0}));
  m.trivial = lu_equivalent(m.initial, m.target);
  return m;
}

LoccProtocol locc_protocol_reach(const GenericState& target, std::optional<LoccMatch> match,
                                 const ClassifierOptions& opt) {
  const SupportPattern s = support_pattern(gram(target), opt);
  if (!match) match = locc_reach_match(s, opt);
  if (!match) throw DomainError("target is not LOCC-reachable from an LU-inequivalent state");
  const Permutation& perm = match->perm;
  const PauliIndex w = match->w;
  if (!s.confined(perm[1], w) || !s.confined(perm[2], w) || s.confined(perm[0], w)) {
    throw DomainError("requested match does not fit the target support");
  }

  LoccProtocol p;
  if (w.is_zero()) {
    p.construction = "reach-from-seed";
    p.target = target;
    p.target.g = rescaled_target(target, perm, {true, true, true}, {false, true, true}, p.log);
    p.initial = GenericState{target.seed, identities()};
    p.stages.push_back(make_stage(perm[0], p.initial.g, p.target.g, whole_group(),
                                  std::vector<double>(9, 1.0 / 9.0)));
  } else {
    const SepMap m = sep_map_case_ii(target, w, perm);
    p.construction = "reach-one-round";
    p.initial = m.initial;
    p.target = m.target;
    p.stages.push_back(LoccStage{perm[0], m.kraus.elements});
  }
  p.trivial = lu_equivalent(p.initial, p.target);
  return p;
}

LoccProtocol locc_protocol_two_stage(const GenericState& target, PauliIndex w, const Permutation& perm) {
  if (w.is_zero()) throw DomainError("two-stage protocol needs w != 0");
  require_span(target, perm[1], w);
  const Coords c0 = pauli_coords(target.g[perm[0]].adjoint() * target.g[perm[0]]);
  const double scale = c0.cwiseAbs().maxCoeff();
  if (std::abs(c0(w.position())) > tolerances().zero * scale ||
      std::abs(c0((-w).position())) > tolerances().zero * scale) {
    throw DomainError("first factor overlaps {+-w}; use the one-round protocol");
  }
  LoccProtocol p;
  p.construction = "reach-two-stage";
  p.target = target;
  p.target.g = rescaled_target(target, perm, {true, true, true}, {false, false, true}, p.log);
  p.initial = GenericState{target.seed, identities()};
  std::array<Mat3, 3> mid = identities();
  mid[perm[1]] = p.target.g[perm[1]];
  p.stages.push_back(make_stage(perm[1], p.initial.g, mid, whole_group(), std::vector<double>(9, 1.0 / 9.0)));
  p.stages.push_back(make_stage(perm[0], mid, p.target.g, coset(w), {1 / 3.0, 1 / 3.0, 1 / 3.0}));
  p.trivial = lu_equivalent(p.initial, p.target);
  return p;
}

ConvertStep locc_convert_step(const GenericState& source, std::optional<LoccMatch> match,
                              double epsilon, const ClassifierOptions& opt) {
  const SupportPattern s = support_pattern(gram(source), opt);
  if (!match) match = locc_convert_match(s, opt);
  if (!match) throw DomainError("source is not LOCC-convertible");
  const Permutation perm = match->perm;
  PauliIndex w = match->w;
  if (!s.confined(perm[1], w) || !s.confined(perm[2], w)) {
    throw DomainError("requested match does not fit the source support");
  }
  if (w.is_zero()) {
    w = kPairRepresentatives[0];
    for (PauliIndex cand : kPairRepresentatives) {
      if (!s.confined(perm[0], cand)) {
        w = cand;
        break;
      }
    }
  }
  const int r0 = perm[0];
  const Mat3 g1 = source.g[r0].adjoint() * source.g[r0];
  const Coords c = pauli_coords(g1);
  auto margin = [](const Mat3& h) { return min_eigenvalue(h) / h.trace().real(); };

  ConvertStep step;
  step.p = ProbabilityVector::Zero();
  Mat3 h1;
  if (!s.confined(r0, w)) {
    auto build = [&](double eps) {
      Coords hc = c;
      for (int u = 1; u < 9; ++u) {
        if (pair_of(kPauliOrder[u]) != pair_of(w)) hc(u) /= 1.0 - eps;
      }
      const Mat3 h = from_coords(hc);
      return Mat3(0.5 * (h + h.adjoint()));
    };
    if (epsilon >= 0.0) {
      if (epsilon >= 1.0) throw DomainError("epsilon must lie in [0, 1)");
      h1 = build(epsilon);
      if (margin(h1) < kPositivityMargin) throw DomainError("epsilon too large: target not positive");
    } else {
      epsilon = 0.5;
      h1 = build(epsilon);
      while (margin(h1) < kPositivityMargin) {
        epsilon /= 2;
        if (epsilon < kMinEpsilon) throw DomainError("no admissible epsilon above 1e-8");
        h1 = build(epsilon);
      }
    }
    step.p(0) = 1.0 - 2.0 * epsilon / 3.0;
    step.p(w.position()) = step.p((-w).position()) = epsilon / 3.0;
  } else {
    // Uniform weights on {0, +-w} wipe out everything off the span, so any
    // positive perturbation there is a valid target.
    step.uniform_path = true;
    epsilon = 1.0;
    PauliIndex u;
    for (PauliIndex k : kPauliOrder) {
      if (pair_of(k) >= 0 && pair_of(k) != pair_of(w)) {
        u = k;
        break;
      }
    }
    const Mat3 su = pauli(u);
    h1 = g1 + (min_eigenvalue(g1) / 4.0) * Mat3(su + su.adjoint());
    for (PauliIndex k : coset(w)) step.p(k.position()) = 1.0 / 3.0;
    if (margin(h1) < kPositivityMargin) throw DomainError("source too close to singular for a convert step");
  }
  step.epsilon = epsilon;
  step.target = source;
  step.target.g[r0] = positive_factor(h1);

  LoccProtocol& p = step.protocol;
  p.construction = step.uniform_path ? "convert-uniform" : "convert-epsilon";
  p.initial = source;
  p.target = step.target;
  std::vector<double> weights;
  for (PauliIndex k : coset(w)) weights.push_back(step.p(k.position()));
  p.stages.push_back(make_stage(r0, p.initial.g, p.target.g, coset(w), weights));
  p.trivial = lu_equivalent(p.initial, p.target);
  return step;
}

double validate_povm(const KrausSet& k) {
  Op27 sum = -Op27::Identity();
  for (const KrausElement& e : k.elements) {
    sum += kron3(e.factors[0].adjoint() * e.factors[0], e.factors[1].adjoint() * e.factors[1],
                 e.factors[2].adjoint() * e.factors[2]);
  }
  return sum.norm();
}

double validate_povm(const LoccStage& s) {
  Mat3 sum = -Mat3::Identity();
  double unitary_defect = 0.0;
  for (const KrausElement& e : s.outcomes) {
    sum += e.factors[s.party].adjoint() * e.factors[s.party];
    for (int i = 0; i < 3; ++i) {
      if (i == s.party) continue;
      unitary_defect = std::max(
          unitary_defect, (e.factors[i].adjoint() * e.factors[i] - Mat3::Identity()).norm());
    }
  }
  return sum.norm() + unitary_defect;
}

double validate_protocol(const LoccProtocol& p) {
  double worst = 0.0;
  for (const LoccStage& s : p.stages) worst = std::max(worst, validate_povm(s));
  return worst;
}

BranchReport simulate_branches(const LoccProtocol& p, const Ket27& input) {
  BranchReport r;
  simulate_stages(p, 0, input, Branch{}, assemble(p.target), input.squaredNorm(), r);
  finish(r);
  return r;
}

BranchReport simulate_branches(const LoccProtocol& p) { return simulate_branches(p, assemble(p.initial)); }

BranchReport simulate_branches(const KrausSet& k, const Ket27& input, const Ket27& target) {
  BranchReport r;
  const double norm2 = input.squaredNorm();
  for (size_t j = 0; j < k.elements.size(); ++j) {
    Branch b;
    b.outcomes = {static_cast<int>(j)};
    b.label = k.elements[j].label;
    b.output = apply(k.elements[j], input);
    b.probability = b.output.squaredNorm() / norm2;
    b.zero_probability = b.probability < 1e-14;
    b.distance = b.zero_probability ? 0.0 : ray_distance(target, b.output);
    b.matches = !b.zero_probability && b.distance <= tolerances().branch_match;
    r.branches.push_back(std::move(b));
  }
  finish(r);
  return r;
}

}  // namespace qmes
