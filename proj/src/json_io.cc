#include "qmes/json_io.h"

#include <fstream>
#include <sstream>

namespace qmes {

namespace {

Json pauli_to_json(PauliIndex k) { return Json::array({k.k1, k.k2}); }

Json perm_to_json(const Permutation& p) { return Json::array({p[0], p[1], p[2]}); }

const Json& field_of(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(field + ": expected [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Mat3& m) {
  Json out = Json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.push_back(complex_to_json(m(r, c)));
  }
  return out;
}

Mat3 matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 9) throw InputError(field + ": expected 9 row-major [re, im] entries");
  Mat3 m;
  for (int e = 0; e < 9; ++e) m(e / 3, e % 3) = complex_from_json(j[e], field + "[" + std::to_string(e) + "]");
  if (!m.allFinite()) throw InputError(field + ": non-finite entry");
  return m;
}

Json coords_to_json(const Coords& c) {
  Json out = Json::array();
  for (int p = 0; p < 9; ++p) out.push_back(complex_to_json(c(p)));
  return out;
}

Json weights_to_json(const ProbabilityVector& p) {
  Json out = Json::array();
  for (int k = 0; k < 9; ++k) out.push_back(p(k));
  return out;
}

Json seed_to_json(const SeedParams& p) {
  return Json{{"a", complex_to_json(p.a)}, {"b", complex_to_json(p.b)}, {"c", complex_to_json(p.c)}};
}

SeedParams seed_from_json(const Json& j, const std::string& field) {
  SeedParams p;
  p.a = complex_from_json(field_of(j, "a", field), field + ".a");
  p.b = complex_from_json(field_of(j, "b", field), field + ".b");
  p.c = complex_from_json(field_of(j, "c", field), field + ".c");
  if (p.norm() == 0.0) throw InputError(field + ": seed parameters are all zero");
  return p;
}

Json state_to_json(const GenericState& s, const Json& metadata) {
  Json g = Json::array();
  for (const Mat3& m : s.g) g.push_back(matrix_to_json(m));
  return Json{{"schema_version", kSchemaVersion}, {"seed", seed_to_json(s.seed)}, {"g", g},
              {"metadata", metadata}};
}

GenericState state_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("state: expected a JSON object");
  const Json& version = field_of(j, "schema_version", "state");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    throw InputError("schema_version: expected \"1\"");
  }
  GenericState s;
  s.seed = seed_from_json(field_of(j, "seed", "state"));
  const Json& g = field_of(j, "g", "state");
  if (!g.is_array() || g.size() != 3) throw InputError("g: expected three 3x3 matrices");
  for (int i = 0; i < 3; ++i) {
    s.g[i] = matrix_from_json(g[i], "g[" + std::to_string(i) + "]");
    if (!is_invertible(s.g[i])) throw InputError("g[" + std::to_string(i) + "]: factor is not invertible");
  }
  return s;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

GenericState read_state_file(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

void write_state_file(const std::string& path, const GenericState& s, const Json& metadata) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << state_to_json(s, metadata).dump(2) << "\n";
}

Json to_json(const GenericityReport& r) {
  Json conds = Json::array(), viol = Json::array();
  for (const auto& c : r.conditions) conds.push_back({{"name", c.name}, {"scaled_value", c.scaled_value}});
  for (const auto& c : r.violations) viol.push_back({{"name", c.name}, {"scaled_value", c.scaled_value}});
  return Json{{"generic", r.generic}, {"margin", r.margin}, {"violations", viol}, {"conditions", conds}};
}

Json to_json(const StandardForm& f) {
  Json coords = Json::array();
  for (const Coords& c : f.coords) coords.push_back(coords_to_json(c));
  return Json{{"seed", seed_to_json(f.seed)}, {"gauge", pauli_to_json(f.gauge)}, {"coords", coords}};
}

Json to_json(const SepFeasibility& f) {
  Json verts = Json::array();
  for (const SepVertex& v : f.vertices) {
    verts.push_back({{"p", weights_to_json(v.p)}, {"residual", v.residual}, {"trivial", v.trivial}});
  }
  return Json{{"feasible", f.feasible},
              {"unique", f.unique},
              {"nontrivial", f.nontrivial},
              {"witness", f.witness ? weights_to_json(*f.witness) : Json(nullptr)},
              {"residual", f.residual},
              {"affine_dim", f.affine_dim},
              {"nullity", f.nullity},
              {"vertices", verts}};
}

Json to_json(const Classification& c) {
  Json cases = Json::array();
  for (const SepReachCase& s : c.cases) {
    Json e{{"case", s.tag}, {"permutation", perm_to_json(s.perm)}};
    if (s.tag == "ii") e["w"] = pauli_to_json(s.w);
    cases.push_back(e);
  }
  auto match = [](const std::optional<LoccMatch>& m) {
    return m ? Json{{"permutation", perm_to_json(m->perm)}, {"w", pauli_to_json(m->w)}} : Json(nullptr);
  };
  Json support = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json idx = Json::array();
    for (PauliIndex k : c.support.indices(i)) idx.push_back(pauli_to_json(k));
    support.push_back(idx);
  }
  return Json{{"sep_reachable", c.sep_reachable},
              {"case", cases},
              {"locc_reachable", c.locc_reachable},
              {"sep_only", c.sep_only},
              {"lemma3_family", c.lemma3},
              {"locc_convertible", c.locc_convertible},
              {"in_mes", c.in_mes},
              {"isolated", c.isolated},
              {"permutation", c.cases.empty() ? Json(nullptr) : perm_to_json(c.cases.front().perm)},
              {"locc_reach_witness", match(c.locc_reach)},
              {"locc_convert_witness", match(c.locc_convert)},
              {"support", support},
              {"warnings", c.warnings}};
}

Json to_json(const AuditReport& r) {
  auto survivor = [](const AuditSurvivor& s) {
    return Json{{"b_index", s.b_index},
                {"c_index", s.c_index},
                {"b_kind", s.b_kind == CandidateKind::kMonomial ? "monomial" : "dense"},
                {"c_kind", s.c_kind == CandidateKind::kMonomial ? "monomial" : "dense"},
                {"residual", s.residual},
                {"pauli", s.pauli ? pauli_to_json(*s.pauli) : Json(nullptr)},
                {"full_symmetry_residual", s.full_symmetry_residual}};
  };
  Json surv = Json::array(), extra = Json::array();
  for (const auto& s : r.survivors) surv.push_back(survivor(s));
  for (const auto& s : r.surplus) extra.push_back(survivor(s));
  return Json{{"ok", r.ok},
              {"candidate_count", r.candidate_count},
              {"pair_count", r.pair_count},
              {"survivor_count", r.survivors.size()},
              {"rejection_margin", r.rejection_margin},
              {"survivors", surv},
              {"surplus", extra}};
}

namespace {

Json element_to_json(const KrausElement& e) {
  Json f = Json::array();
  for (const Mat3& m : e.factors) f.push_back(matrix_to_json(m));
  return Json{{"label", e.label}, {"factors", f}};
}

KrausElement element_from_json(const Json& j, const std::string& where) {
  KrausElement e;
  const Json& label = field_of(j, "label", where);
  if (!label.is_string()) throw InputError(where + ".label: expected a string");
  e.label = label.get<std::string>();
  const Json& f = field_of(j, "factors", where);
  if (!f.is_array() || f.size() != 3) throw InputError(where + ".factors: expected three matrices");
  for (int i = 0; i < 3; ++i) {
    e.factors[i] = matrix_from_json(f[i], where + ".factors[" + std::to_string(i) + "]");
  }
  return e;
}

}  // namespace

Json to_json(const KrausSet& k) {
  Json els = Json::array();
  for (const KrausElement& e : k.elements) els.push_back(element_to_json(e));
  return Json{{"elements", els}, {"rescale_log", k.rescale_log}};
}

Json to_json(const LoccProtocol& p) {
  Json stages = Json::array();
  for (const LoccStage& s : p.stages) {
    Json outs = Json::array();
    for (const KrausElement& e : s.outcomes) outs.push_back(element_to_json(e));
    stages.push_back({{"party", s.party}, {"outcomes", outs}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"type", "locc"},
              {"construction", p.construction},
              {"trivial", p.trivial},
              {"initial", state_to_json(p.initial)},
              {"target", state_to_json(p.target)},
              {"stages", stages},
              {"log", p.log}};
}

LoccProtocol protocol_from_json(const Json& j) {
  LoccProtocol p;
  const Json& c = field_of(j, "construction", "protocol");
  if (!c.is_string()) throw InputError("construction: expected a string");
  p.construction = c.get<std::string>();
  p.initial = state_from_json(field_of(j, "initial", "protocol"));
  p.target = state_from_json(field_of(j, "target", "protocol"));
  if (!same_seed(p.initial.seed, p.target.seed)) throw InputError("initial and target use different seeds");
  const Json& stages = field_of(j, "stages", "protocol");
  if (!stages.is_array() || stages.empty()) throw InputError("stages: expected a nonempty array");
  for (size_t i = 0; i < stages.size(); ++i) {
    const std::string where = "stages[" + std::to_string(i) + "]";
    LoccStage st;
    const Json& party = field_of(stages[i], "party", where);
    if (!party.is_number_integer() || party.get<int>() < 0 || party.get<int>() > 2) {
      throw InputError(where + ".party: expected 0, 1 or 2");
    }
    st.party = party.get<int>();
    const Json& outs = field_of(stages[i], "outcomes", where);
    if (!outs.is_array() || outs.empty()) throw InputError(where + ".outcomes: expected a nonempty array");
    for (size_t k = 0; k < outs.size(); ++k) {
      st.outcomes.push_back(element_from_json(outs[k], where + ".outcomes[" + std::to_string(k) + "]"));
    }
    p.stages.push_back(std::move(st));
  }
  if (j.contains("log") && j["log"].is_array()) {
    for (const Json& l : j["log"]) {
      if (l.is_string()) p.log.push_back(l.get<std::string>());
    }
  }
  return p;
}

Json to_json(const SepMap& m) {
  return Json{{"schema_version", kSchemaVersion},
              {"type", "sep"},
              {"trivial", m.trivial},
              {"initial", state_to_json(m.initial)},
              {"target", state_to_json(m.target)},
              {"kraus", to_json(m.kraus)}};
}

SepMap sep_map_from_json(const Json& j) {
  SepMap m;
  m.initial = state_from_json(field_of(j, "initial", "map"));
  m.target = state_from_json(field_of(j, "target", "map"));
  const Json& els = field_of(field_of(j, "kraus", "map"), "elements", "kraus");
  if (!els.is_array() || els.empty()) throw InputError("kraus.elements: expected a nonempty array");
  for (size_t k = 0; k < els.size(); ++k) {
    m.kraus.elements.push_back(element_from_json(els[k], "kraus.elements[" + std::to_string(k) + "]"));
  }
  return m;
}

Json to_json(const BranchReport& r, bool include_vectors) {
  Json bs = Json::array();
  for (const Branch& b : r.branches) {
    Json e{{"outcomes", b.outcomes},
           {"label", b.label},
           {"probability", b.probability},
           {"distance", b.distance},
           {"matches", b.matches},
           {"zero_probability", b.zero_probability}};
    if (include_vectors) {
      Json v = Json::array();
      for (int i = 0; i < 27; ++i) v.push_back(complex_to_json(b.output(i)));
      e["output"] = v;
    }
    bs.push_back(e);
  }
  return Json{{"all_match", r.all_match},
              {"total_probability", r.total_probability},
              {"max_distance", r.max_distance},
              {"branches", bs}};
}

}  // namespace qmes
