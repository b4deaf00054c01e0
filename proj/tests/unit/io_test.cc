#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qmes/generate.h"
#include "qmes/json_io.h"

namespace qmes {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmes_io_test_" + name)).string();
}

TEST(Generate, KindNamesRoundTrip) {
  for (StateKind k : {StateKind::kSeed, StateKind::kGeneric, StateKind::kCaseI, StateKind::kCaseII,
                      StateKind::kLemma3, StateKind::kConvertible, StateKind::kDense}) {
    EXPECT_EQ(parse_state_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_state_kind("nope").has_value());
}

TEST(Generate, DeterministicUnderSeed) {
  Rng a(42), b(42);
  const GenericState x = generate_state(StateKind::kLemma3, a);
  const GenericState y = generate_state(StateKind::kLemma3, b);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(x.g[i], y.g[i]);
}

TEST(Generate, SeedKindHasIdentityFactors) {
  Rng rng(1);
  const GenericState s = generate_state(StateKind::kSeed, rng);
  for (const Mat3& g : s.g) EXPECT_EQ(g, Mat3::Identity());
  EXPECT_TRUE(check_generic(s.seed).generic);
  EXPECT_TRUE(classify(generate_state(StateKind::kLemma3, rng)).sep_only);
  EXPECT_TRUE(classify(generate_state(StateKind::kDense, rng)).isolated);
}

TEST(Generate, RandomUnitaryIsUnitary) {
  Rng rng(2);
  const Mat3 u = random_unitary(rng);
  EXPECT_LE((u.adjoint() * u - Mat3::Identity()).norm(), 1e-14);
}

TEST(JsonIo, StateRoundTripIsExact) {
  Rng rng(3);
  const GenericState s = generate_state(StateKind::kCaseII, rng);
  const std::string path = temp_path("state.json");
  write_state_file(path, s, Json{{"label", "case-ii"}});
  const GenericState back = read_state_file(path);
  EXPECT_EQ(back.seed.a, s.seed.a);
  EXPECT_EQ(back.seed.b, s.seed.b);
  EXPECT_EQ(back.seed.c, s.seed.c);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back.g[i], s.g[i]);
  std::remove(path.c_str());
}

TEST(JsonIo, SchemaErrorsNameTheField) {
  Rng rng(4);
  Json good = state_to_json(generate_state(StateKind::kDense, rng));

  Json bad_version = good;
  bad_version["schema_version"] = "2";
  EXPECT_THROW(state_from_json(bad_version), InputError);

  Json short_g = good;
  short_g["g"].erase(2);
  try {
    state_from_json(short_g);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("g"), std::string::npos);
  }

  Json singular = good;
  for (auto& entry : singular["g"][1]) entry = Json::array({0.0, 0.0});
  try {
    state_from_json(singular);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("g[1]"), std::string::npos);
  }

  const std::string path = temp_path("broken.json");
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(read_json_file(path), InputError);
  std::remove(path.c_str());
  EXPECT_THROW(read_state_file(temp_path("missing.json")), InputError);
}

TEST(JsonIo, ProtocolRoundTrip) {
  Rng rng(5);
  const LoccProtocol p = locc_protocol_reach(generate_state(StateKind::kCaseII, rng));
  const LoccProtocol back = protocol_from_json(to_json(p));
  EXPECT_EQ(back.construction, p.construction);
  ASSERT_EQ(back.stages.size(), p.stages.size());
  EXPECT_LE(validate_protocol(back), 1e-10);
  EXPECT_TRUE(simulate_branches(back).all_match);

  const GenericState t = generate_state(StateKind::kCaseI, rng);
  Permutation perm{0, 1, 2};
  for (const SepReachCase& rc : classify(t).cases) {
    if (rc.tag == "i") perm = rc.perm;
  }
  const SepMap m = sep_map_case_i(t, perm);
  const SepMap mb = sep_map_from_json(to_json(m));
  EXPECT_EQ(mb.kraus.elements.size(), m.kraus.elements.size());
  EXPECT_LE(validate_povm(mb.kraus), 1e-10);
}

TEST(JsonIo, ReportsCarryTheirKeyFields) {
  Rng rng(6);
  const GenericState s = generate_state(StateKind::kLemma3, rng);
  const Json c = to_json(classify(s));
  EXPECT_TRUE(c["sep_only"].get<bool>());
  const Json f = to_json(sep_feasible(make_instance(GenericState{s.seed}, s)));
  EXPECT_TRUE(f["feasible"].get<bool>());
  EXPECT_TRUE(f["unique"].get<bool>());
}

}  // namespace
}  // namespace qmes
