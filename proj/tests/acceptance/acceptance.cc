// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every criterion draws from its own fixed RNG stream so they can be rerun
// in isolation (pass the criterion numbers as arguments).

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "qmes/generate.h"
#include "qmes/oracle.h"
#include "qmes/protocol.h"

namespace {

using namespace qmes;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome symmetry_suite() {
  Rng rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, verify_symmetries(random_generic_seed(rng)));
  const double dt = seconds_since(t0);
  return {worst <= 1e-10 && dt < 5.0, fmt("100 seeds, max residual %.2e (<= 1e-10), %.2f s (< 5 s)", worst, dt)};
}

Outcome appendix_audit() {
  Rng rng(102);
  const auto t0 = Clock::now();
  int ok = 0;
  double margin = 1.0;
  for (int i = 0; i < 20; ++i) {
    const AuditReport r = symmetry_audit(random_generic_seed(rng));
    bool all_pauli = r.survivors.size() == 9;
    for (const AuditSurvivor& s : r.survivors) all_pauli = all_pauli && s.pauli.has_value();
    ok += r.ok && all_pauli;
    margin = std::min(margin, r.rejection_margin);
  }
  const double dt = seconds_since(t0);
  return {ok == 20 && dt < 60.0,
          fmt("%d/20 seeds with exactly 9 Pauli survivors, min rejection margin %.2e, %.2f s (< 60 s)", ok, margin,
              dt)};
}

Outcome depolarization() {
  Rng rng(103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Mat3 m;
    std::normal_distribution<double> n;
    for (int e = 0; e < 9; ++e) m(e / 3, e % 3) = Complex(n(rng), n(rng));
    Mat3 h = m.adjoint() * m;
    h /= h.trace();
    worst = std::max(worst, (depolarize(h, uniform_p()) - Mat3::Identity() / 3.0).norm());
  }
  return {worst <= 1e-12, fmt("1000 factors, max ||D(H) - I/3||_F %.2e (<= 1e-12)", worst)};
}

// Structural verdict, engine search, and oracle over the same predecessor
// candidates must all agree on whether an LU-inequivalent predecessor exists.
Outcome reach_agreement() {
  Rng rng(104);
  OracleBudget budget;
  budget.starts = 20;
  budget.iterations = 1000;
  const auto t0 = Clock::now();
  int instances = 0, structural_vs_engine = 0, oracle_vs_engine = 0, decided = 0, inconclusive = 0;
  std::ostringstream per_class;
  for (StateKind kind : {StateKind::kCaseI, StateKind::kCaseII, StateKind::kLemma3, StateKind::kDense}) {
    int class_mismatch = 0;
    for (int i = 0; i < 200; ++i) {
      const GenericState s = generate_state(kind, rng);
      const GramTriple h = gram(s);
      const bool structural = is_sep_reachable(h);
      const bool engine = sep_reach_search(s.seed, h).found;

      bool oracle = false;
      for (const ProbabilityVector& p : predecessor_candidates()) {
        const GramTriple g = induced_initial(h, p);
        const OracleVerdict v = brute_force_sep(g, h, budget);
        if (v.outcome == OracleOutcome::kInconclusive) {
          ++inconclusive;
          continue;
        }
        ++decided;
        if (v.feasible != sep_feasible(make_instance(s.seed, g, h)).feasible) ++oracle_vs_engine;
        if (v.feasible && !lu_equivalent(s.seed, g, h)) oracle = true;
      }
      ++instances;
      if (structural != engine) ++structural_vs_engine, ++class_mismatch;
      if (oracle != engine) ++oracle_vs_engine, ++class_mismatch;
    }
    per_class << " " << to_string(kind) << "=" << class_mismatch;
  }
  const double dt = seconds_since(t0);
  const double rate = double(inconclusive) / double(decided + inconclusive);
  const bool pass = structural_vs_engine == 0 && oracle_vs_engine == 0 && rate < 0.01 && dt < 120.0;
  return {pass, fmt("%d instances, mismatches structural/engine %d oracle/engine %d (per class:%s), oracle "
                    "inconclusive %d of %d (%.2f%% < 1%%), %.1f s (< 120 s)",
                    instances, structural_vs_engine, oracle_vs_engine, per_class.str().c_str(), inconclusive,
                    decided + inconclusive, 100.0 * rate, dt)};
}

Outcome tiling_uniqueness() {
  Rng rng(105);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const GenericState target = generate_state(StateKind::kLemma3, rng);
    const SepFeasibility f = sep_feasible(make_instance(GenericState{target.seed}, target));
    const Classification c = classify(target);
    if (!f.feasible || !f.witness) continue;
    const double d = (*f.witness - uniform_p()).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
    ok += f.unique && f.affine_dim == 0 && d <= 1e-8 && c.sep_only && !c.locc_reachable;
  }
  return {ok == 50, fmt("%d/50 single-point polytopes at uniform p, max ||p - 1/9||_inf %.2e (<= 1e-8)", ok, worst)};
}

struct ProtocolTally {
  int total = 0, good = 0;
  double completeness = 0.0, probability = 0.0, distance = 0.0;

  void add(double comp, const BranchReport& r) {
    ++total;
    completeness = std::max(completeness, comp);
    probability = std::max(probability, std::abs(r.total_probability - 1.0));
    distance = std::max(distance, r.max_distance);
    good += comp <= 1e-10 && std::abs(r.total_probability - 1.0) <= 1e-10 && r.max_distance <= 1e-8 && r.all_match;
  }
  void add(const LoccProtocol& p) { add(validate_protocol(p), simulate_branches(p)); }
  void add(const SepMap& m) { add(validate_povm(m.kraus), simulate_branches(m.kraus, assemble(m.initial), assemble(m.target))); }
};

// Even i: an MES member inside span{I, S_w, S_-w} on every party (uniform
// weights). Odd i: one dense party, which forces the epsilon path.
GenericState convertible_source(Rng& rng, int i) {
  if (i % 2 == 0) return generate_state(StateKind::kConvertible, rng);
  const PairSet w = pair_bit(kPairRepresentatives[rng() % 4]);
  GenericState s;
  s.seed = random_generic_seed(rng);
  s.g = {random_factor(rng, 0xF), random_factor(rng, w), random_factor(rng, w)};
  return permute_parties(s, all_permutations()[rng() % 6]);
}

std::optional<SepReachCase> find_case(const Classification& c, const std::string& tag) {
  for (const SepReachCase& s : c.cases) {
    if (s.tag == tag) return s;
  }
  return std::nullopt;
}

Outcome protocol_validation() {
  Rng rng(106);
  std::vector<std::pair<std::string, ProtocolTally>> rows;
  auto run = [&](const std::string& name, const std::function<void(ProtocolTally&, int)>& one) {
    ProtocolTally t;
    for (int i = 0; i < 50; ++i) one(t, i);
    rows.emplace_back(name, t);
  };
  run("sep-case-i", [&](ProtocolTally& t, int) {
    const GenericState s = generate_state(StateKind::kCaseI, rng);
    t.add(sep_map_case_i(s, find_case(classify(s), "i")->perm));
  });
  run("sep-case-ii", [&](ProtocolTally& t, int) {
    const GenericState s = generate_state(StateKind::kCaseII, rng);
    const SepReachCase c = *find_case(classify(s), "ii");
    t.add(sep_map_case_ii(s, c.w, c.perm));
  });
  run("reach-one-round", [&](ProtocolTally& t, int) { t.add(locc_protocol_reach(generate_state(StateKind::kCaseII, rng))); });
  run("reach-from-seed", [&](ProtocolTally& t, int) {
    GenericState s;
    s.seed = random_generic_seed(rng);
    s.g = {random_factor(rng, 0xF), 1.5 * random_unitary(rng), random_unitary(rng)};
    t.add(locc_protocol_reach(permute_parties(s, all_permutations()[rng() % 6])));
  });
  run("reach-two-stage", [&](ProtocolTally& t, int) {
    const int j = int(rng() % 4);
    const PauliIndex w = kPairRepresentatives[j];
    const PairSet off = 0xFu & ~pair_bit(w);
    GenericState s;
    s.seed = random_generic_seed(rng);
    s.g = {random_factor(rng, off), random_factor(rng, pair_bit(w)), random_unitary(rng)};
    t.add(locc_protocol_two_stage(s, w));
  });
  run("convert-step", [&](ProtocolTally& t, int i) { t.add(locc_convert_step(convertible_source(rng, i)).protocol); });

  bool pass = true;
  std::ostringstream os;
  double comp = 0.0, prob = 0.0, dist = 0.0;
  for (const auto& [name, t] : rows) {
    pass = pass && t.good == t.total;
    os << " " << name << "=" << t.good << "/" << t.total;
    comp = std::max(comp, t.completeness);
    prob = std::max(prob, t.probability);
    dist = std::max(dist, t.distance);
  }
  return {pass, fmt("%s; max completeness %.2e (<= 1e-10), max |sum p - 1| %.2e (<= 1e-10), max branch distance "
                    "%.2e (<= 1e-8)",
                    os.str().c_str() + 1, comp, prob, dist)};
}

Outcome standard_form_suite() {
  Rng rng(107);
  int equal = 0, unequal = 0, idempotent = 0, invariant = 0;
  for (int i = 0; i < 100; ++i) {
    const GenericState s = generate_state(StateKind::kGeneric, rng);
    const StandardForm f = standard_form(s);

    GenericState dressed = s;
    const PauliIndex l = kPauliOrder[rng() % 9];
    for (Mat3& g : dressed.g) g = random_unitary(rng) * g * pauli(l);
    equal += lu_equivalent(s, dressed);

    bool sym = true;
    for (PauliIndex k : kPauliOrder) {
      GenericState c = s;
      for (Mat3& g : c.g) g = g * pauli(k);
      sym = sym && standard_form_distance(f, standard_form(c)) <= tolerances().standard_form;
    }
    invariant += sym;
    idempotent += standard_form_distance(f, standard_form(from_standard_form(f))) <= tolerances().standard_form;

    GenericState other = generate_state(StateKind::kGeneric, s.seed, rng);
    unequal += !lu_equivalent(s, other);
  }
  return {equal == 100 && unequal == 100 && idempotent == 100 && invariant == 100,
          fmt("dressed pairs equal %d/100, independent pairs unequal %d/100, idempotent %d/100, symmetry-invariant "
              "%d/100",
              equal, unequal, idempotent, invariant)};
}

Outcome convert_round_trip() {
  Rng rng(108);
  int ok = 0, uniform = 0;
  double min_margin = 1.0;
  for (int i = 0; i < 50; ++i) {
    const GenericState source = convertible_source(rng, i);
    const ConvertStep step = locc_convert_step(source);
    const GramTriple t = gram(step.target);
    double margin = 1.0;
    for (const Mat3& G : t.G) margin = std::min(margin, min_eigenvalue(G));
    min_margin = std::min(min_margin, margin);
    const BranchReport r = simulate_branches(step.protocol);
    const bool valid = validate_protocol(step.protocol) <= 1e-10 && r.all_match &&
                       std::abs(r.total_probability - 1.0) <= 1e-10;
    uniform += step.uniform_path;
    ok += margin >= kPositivityMargin && valid && classify(step.target).locc_reachable &&
          !lu_equivalent(source, step.target);
  }
  return {ok == 50, fmt("%d/50 sources stepped to a valid, reachable, LU-inequivalent target (%d via uniform "
                        "weights, the rest via epsilon); min target eigenvalue %.2e (>= 1e-6)",
                        ok, uniform, min_margin)};
}

Outcome classification_lattice() {
  Rng rng(109);
  const StateKind kinds[] = {StateKind::kSeed,   StateKind::kGeneric,     StateKind::kCaseI, StateKind::kCaseII,
                             StateKind::kLemma3, StateKind::kConvertible, StateKind::kDense};
  int violations = 0, unconstrained = 0, isolated = 0;
  for (int i = 0; i < 1000; ++i) {
    const StateKind kind = kinds[i % 7];
    const Classification c = classify(generate_state(kind, rng));
    violations += !c.lattice_violations().empty();
    if (kind == StateKind::kGeneric || kind == StateKind::kDense) {
      ++unconstrained;
      isolated += c.isolated && c.in_mes;
    }
  }
  return {violations == 0 && isolated == unconstrained,
          fmt("1000 states, %d with lattice violations, %d/%d unconstrained states isolated MES members", violations,
              isolated, unconstrained)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"symmetry suite", symmetry_suite},
      {"candidate audit", appendix_audit},
      {"depolarization identity", depolarization},
      {"reachability agreement", reach_agreement},
      {"tiling-family uniqueness", tiling_uniqueness},
      {"protocol validation", protocol_validation},
      {"standard form / LU", standard_form_suite},
      {"convert round trip", convert_round_trip},
      {"classification lattice", classification_lattice},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = int(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
