// Command-line front end: state files in, JSON reports out.
// Exit status: 0 success, 2 mathematical negative, 1 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qmes/classify.h"
#include "qmes/generate.h"
#include "qmes/json_io.h"
#include "qmes/oracle.h"
#include "qmes/protocol.h"
#include "qmes/sep.h"

namespace {

using qmes::Json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;

struct Globals {
  double tolerance = 1e-9;
  std::uint64_t rng_seed = 1;
  bool oracle = false;
  bool cyclic_only = false;
  bool compact = false;
};

Globals g_opts;

qmes::ClassifierOptions classifier_options() {
  qmes::ClassifierOptions o;
  o.tau = g_opts.tolerance;
  o.cyclic_only = g_opts.cyclic_only;
  return o;
}

void emit(const Json& j, const std::string& path = "") {
  const std::string text = g_opts.compact ? j.dump() : j.dump(2);
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw qmes::InputError(path + ": cannot write");
  out << text << "\n";
}

// Accepts a state file or a bare {"a","b","c"} seed object.
qmes::SeedParams read_seed(const std::string& path) {
  const Json j = qmes::read_json_file(path);
  if (j.is_object() && j.contains("seed")) return qmes::seed_from_json(j["seed"]);
  return qmes::seed_from_json(j, path);
}

int cmd_generate(const std::string& kind_name, const std::string& out) {
  const auto kind = qmes::parse_state_kind(kind_name);
  if (!kind) throw qmes::InputError("unknown kind '" + kind_name + "'");
  qmes::Rng rng(g_opts.rng_seed);
  const qmes::GenericState s = qmes::generate_state(*kind, rng);
  const Json meta{{"label", kind_name}, {"provenance", "qmes generate --rng-seed " + std::to_string(g_opts.rng_seed)}};
  emit(qmes::state_to_json(s, meta), out);
  return kOk;
}

int cmd_check_generic(const std::string& path, double margin) {
  const qmes::GenericityReport r = qmes::check_generic(read_seed(path).canonical(), margin);
  emit(qmes::to_json(r));
  return r.generic ? kOk : kNegative;
}

int cmd_standard_form(const std::string& path) {
  emit(qmes::to_json(qmes::standard_form(qmes::read_state_file(path))));
  return kOk;
}

int cmd_lu_equiv(const std::string& a, const std::string& b) {
  const qmes::GenericState sa = qmes::read_state_file(a), sb = qmes::read_state_file(b);
  const bool eq = qmes::lu_equivalent(sa, sb);
  const double d = qmes::standard_form_distance(qmes::standard_form(sa), qmes::standard_form(sb));
  emit(Json{{"lu_equivalent", eq}, {"distance", d}});
  return eq ? kOk : kNegative;
}

int cmd_sep_decide(const std::string& from, const std::string& to) {
  const qmes::SepInstance inst = qmes::make_instance(qmes::read_state_file(from), qmes::read_state_file(to));
  const qmes::SepFeasibility f = qmes::sep_feasible(inst);
  Json report = qmes::to_json(f);
  if (g_opts.oracle) {
    qmes::OracleBudget budget;
    budget.rng_seed = g_opts.rng_seed;
    const qmes::OracleVerdict v = qmes::brute_force_sep(inst.initial, inst.target, budget);
    report["oracle"] = {{"outcome", qmes::to_string(v.outcome)},
                        {"best_residual", v.best_residual},
                        {"sample_count", v.sample_count},
                        {"agrees", v.outcome == qmes::OracleOutcome::kInconclusive || v.feasible == f.feasible}};
  }
  emit(report);
  return f.feasible ? kOk : kNegative;
}

int cmd_classify(const std::vector<std::string>& paths) {
  Json all = Json::array();
  for (const std::string& p : paths) {
    Json c = qmes::to_json(qmes::classify(qmes::read_state_file(p), classifier_options()));
    if (paths.size() > 1) c["file"] = p;
    all.push_back(c);
  }
  emit(paths.size() == 1 ? all[0] : all);
  return kOk;
}

int cmd_synth(const std::string& target_path, const std::string& source_path, const std::string& out) {
  const qmes::GenericState target = qmes::read_state_file(target_path);
  const auto opt = classifier_options();
  const qmes::Classification c = qmes::classify(target, opt);
  std::optional<qmes::GenericState> source;
  if (!source_path.empty()) source = qmes::read_state_file(source_path);

  auto from_source_ok = [&](const qmes::GenericState& initial) {
    return !source || qmes::lu_equivalent(*source, initial);
  };
  if (c.locc_reachable) {
    const qmes::LoccProtocol p = qmes::locc_protocol_reach(target, c.locc_reach, opt);
    if (from_source_ok(p.initial)) {
      emit(qmes::to_json(p), out);
      return kOk;
    }
  }
  for (const qmes::SepReachCase& rc : c.cases) {
    const qmes::SepMap m = rc.tag == "i" ? qmes::sep_map_case_i(target, rc.perm)
                                         : qmes::sep_map_case_ii(target, rc.w, rc.perm);
    if (from_source_ok(m.initial)) {
      emit(qmes::to_json(m), out);
      return kOk;
    }
  }
  std::cerr << "no protocol construction applies"
            << (source ? " from the given source" : "; the target has no LU-inequivalent predecessor")
            << "\n";
  return kNegative;
}

int cmd_verify(const std::string& path) {
  const Json j = qmes::read_json_file(path);
  const std::string type = j.value("type", "locc");
  double completeness = 0.0;
  qmes::BranchReport r;
  if (type == "sep") {
    const qmes::SepMap m = qmes::sep_map_from_json(j);
    completeness = qmes::validate_povm(m.kraus);
    r = qmes::simulate_branches(m.kraus, qmes::assemble(m.initial), qmes::assemble(m.target));
  } else {
    const qmes::LoccProtocol p = qmes::protocol_from_json(j);
    completeness = qmes::validate_protocol(p);
    r = qmes::simulate_branches(p);
  }
  const bool ok = completeness <= qmes::tolerances().completeness && r.all_match &&
                  std::abs(r.total_probability - 1.0) <= 1e-10;
  Json rep = qmes::to_json(r);
  rep["completeness_residual"] = completeness;
  rep["valid"] = ok;
  emit(rep);
  return ok ? kOk : kNegative;
}

int cmd_audit(const std::string& path) {
  const qmes::AuditReport r = qmes::symmetry_audit(read_seed(path).canonical());
  Json rep = qmes::to_json(r);
  if (g_opts.oracle) {
    qmes::SymmetryBudget budget;
    budget.rng_seed = g_opts.rng_seed;
    const qmes::SymmetrySearchReport s = qmes::numeric_symmetry_search(read_seed(path).canonical(), budget);
    rep["numeric_search"] = {{"clusters", s.clusters.size()},
                             {"converged", s.converged},
                             {"failed", s.failed},
                             {"matches_pauli_group", s.matches_pauli_group}};
  }
  emit(rep);
  return r.ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic three-qutrit state transformations under SEP and LOCC"};
  app.require_subcommand(1);
  app.add_option("--tolerance", g_opts.tolerance, "zero/support tolerance (relative)")->check(CLI::PositiveNumber);
  app.add_option("--rng-seed", g_opts.rng_seed, "seed for random generation and oracles");
  app.add_flag("--oracle", g_opts.oracle, "cross-check with the brute-force oracles");
  app.add_flag("--cyclic-perms-only", g_opts.cyclic_only, "consider only cyclic party permutations");
  app.add_flag("--json", g_opts.compact, "compact single-line JSON output");

  std::string kind, out, path, path2, from, to, target, source;
  std::vector<std::string> paths;
  double margin = qmes::kDefaultGenericMargin;
  std::function<int()> run;

  auto* gen = app.add_subcommand("generate", "write a random state of the given kind");
  gen->add_option("--kind", kind, "seed|generic|case-i|case-ii|lemma3|convertible|dense")->required();
  gen->add_option("--out", out, "output file (default stdout)");
  gen->callback([&] { run = [&] { return cmd_generate(kind, out); }; });

  auto* gen_check = app.add_subcommand("check-generic", "evaluate the genericity conditions of a seed");
  gen_check->add_option("file", path, "state file or seed object")->required();
  gen_check->add_option("--margin", margin, "genericity margin");
  gen_check->callback([&] { run = [&] { return cmd_check_generic(path, margin); }; });

  auto* sf = app.add_subcommand("standard-form", "print the standard form of a state");
  sf->add_option("file", path)->required();
  sf->callback([&] { run = [&] { return cmd_standard_form(path); }; });

  auto* lu = app.add_subcommand("lu-equiv", "decide LU-equivalence of two states");
  lu->add_option("a", path)->required();
  lu->add_option("b", path2)->required();
  lu->callback([&] { run = [&] { return cmd_lu_equiv(path, path2); }; });

  auto* sep = app.add_subcommand("sep-decide", "decide SEP convertibility");
  sep->add_option("--from", from)->required();
  sep->add_option("--to", to)->required();
  sep->callback([&] { run = [&] { return cmd_sep_decide(from, to); }; });

  auto* cls = app.add_subcommand("classify", "classify one or more states");
  cls->add_option("files", paths)->required();
  cls->callback([&] { run = [&] { return cmd_classify(paths); }; });

  auto* syn = app.add_subcommand("synth-protocol", "construct a SEP map or LOCC protocol reaching a target");
  syn->add_option("--target", target)->required();
  syn->add_option("--source", source);
  syn->add_option("--out", out);
  syn->callback([&] { run = [&] { return cmd_synth(target, source, out); }; });

  auto* ver = app.add_subcommand("verify-protocol", "validate and simulate a protocol file");
  ver->add_option("file", path)->required();
  ver->callback([&] { run = [&] { return cmd_verify(path); }; });

  auto* aud = app.add_subcommand("symmetry-audit", "run the candidate enumeration for a seed");
  aud->add_option("file", path, "state file or seed object")->required();
  aud->callback([&] { run = [&] { return cmd_audit(path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  qmes::tolerances().zero = g_opts.tolerance;
  qmes::tolerances().standard_form = g_opts.tolerance;
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
