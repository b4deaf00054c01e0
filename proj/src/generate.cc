#include "qmes/generate.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmes {

namespace {

struct KindName {
  StateKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {StateKind::kSeed, "seed"},           {StateKind::kGeneric, "generic"},
    {StateKind::kCaseI, "case-i"},        {StateKind::kCaseII, "case-ii"},
    {StateKind::kLemma3, "lemma3"},       {StateKind::kConvertible, "convertible"},
    {StateKind::kDense, "dense"}};

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

const char* to_string(StateKind k) {
  for (const KindName& n : kKindNames) {
    if (n.kind == k) return n.name;
  }
  return "?";
}

std::optional<StateKind> parse_state_kind(const std::string& s) {
  for (const KindName& n : kKindNames) {
    if (s == n.name) return n.kind;
  }
  return std::nullopt;
}

SeedParams random_generic_seed(Rng& rng, double margin, int max_tries) {
  double last = 0.0;
  for (int t = 0; t < max_tries; ++t) {
    const SeedParams p = SeedParams{gaussian(rng), gaussian(rng), gaussian(rng)}.canonical();
    const GenericityReport r = check_generic(p, margin);
    if (r.generic) return p;
    last = r.margin;
  }
  std::ostringstream os;
  os << "no generic seed after " << max_tries << " draws (last margin " << last << ")";
  throw std::runtime_error(os.str());
}

Mat3 random_unitary(Rng& rng) {
  Mat3 z;
  for (int i = 0; i < 9; ++i) z(i / 3, i % 3) = gaussian(rng);
  Eigen::HouseholderQR<Mat3> qr(z);
  Mat3 q = qr.householderQ();
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat3 random_gram(Rng& rng, PairSet pairs) {
  Mat3 h = Mat3::Identity() / 3.0;
  std::vector<Complex> z;
  double total = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (!(pairs & (1u << j))) continue;
    z.push_back(std::polar(uniform(rng, 0.2, 1.0), uniform(rng, 0.0, 2.0 * std::numbers::pi)));
    total += 2.0 * std::abs(z.back());
  }
  if (z.empty()) return h;
  // ||z S + (z S)^dag|| <= 2|z|, so this keeps the smallest eigenvalue
  // at least (1 - f)/3.
  const double f = uniform(rng, 0.3, 0.9);
  const double s = f / (3.0 * total);
  size_t i = 0;
  for (int j = 0; j < 4; ++j) {
    if (!(pairs & (1u << j))) continue;
    const Mat3 term = s * z[i++] * pauli(kPairRepresentatives[j]);
    h += term + term.adjoint();
  }
  return h;
}

Mat3 random_factor(Rng& rng, PairSet pairs) {
  return uniform(rng, 0.5, 2.0) * random_unitary(rng) * positive_factor(random_gram(rng, pairs));
}

bool kind_holds(StateKind kind, const Classification& c) {
  switch (kind) {
    case StateKind::kSeed:
      return c.support.pairs == std::array<PairSet, 3>{0, 0, 0};
    case StateKind::kGeneric:
    case StateKind::kDense:
      return c.isolated;
    case StateKind::kCaseI:
      return std::any_of(c.cases.begin(), c.cases.end(), [](const SepReachCase& s) { return s.tag == "i"; });
    case StateKind::kCaseII:
      return c.locc_reachable &&
             std::any_of(c.cases.begin(), c.cases.end(), [](const SepReachCase& s) { return s.tag == "ii"; });
    case StateKind::kLemma3:
      return c.lemma3 && c.sep_only;
    case StateKind::kConvertible:
      return c.in_mes && c.locc_convertible;
  }
  return false;
}

GenericState generate_state(StateKind kind, Rng& rng) {
  return generate_state(kind, random_generic_seed(rng), rng);
}

GenericState generate_state(StateKind kind, const SeedParams& seed, Rng& rng) {
  GenericState s;
  s.seed = seed;
  if (kind == StateKind::kSeed) return s;
  if (kind == StateKind::kGeneric) {
    for (Mat3& g : s.g) {
      for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = gaussian(rng);
    }
  } else {
    std::array<int, 4> order = {0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    auto bits = [&](int from, int count) {
      PairSet out = 0;
      for (int j = from; j < from + count; ++j) out |= 1u << order[j];
      return out;
    };
    const PairSet w = bits(0, 1);
    std::array<PairSet, 3> roles{};
    switch (kind) {
      case StateKind::kCaseI: {
        const int n0 = std::uniform_int_distribution<int>(1, 3)(rng);
        const int n1 = std::uniform_int_distribution<int>(1, 4 - n0)(rng);
        roles = {bits(0, n0), bits(n0, n1), 0};
        break;
      }
      case StateKind::kCaseII: {
        // Role 0 keeps at least one pair other than w.
        PairSet r0 = bits(1, 1);
        for (int j = 0; j < 4; ++j) {
          if (std::bernoulli_distribution(0.5)(rng)) r0 |= 1u << j;
        }
        std::bernoulli_distribution keep(0.8);
        roles = {r0, keep(rng) ? w : 0u, keep(rng) ? w : 0u};
        if (roles[1] == 0 && roles[2] == 0) roles[1] = w;
        break;
      }
      case StateKind::kLemma3:
        roles = {bits(0, 2), bits(2, 2), 0};
        break;
      case StateKind::kConvertible:
        roles = {w, w, w};
        break;
      default:
        roles = {0xFu, 0xFu, 0xFu};
        break;
    }
    std::array<int, 3> parties = {0, 1, 2};
    std::shuffle(parties.begin(), parties.end(), rng);
    for (int r = 0; r < 3; ++r) s.g[parties[r]] = random_factor(rng, roles[r]);
  }
  if (!kind_holds(kind, classify(s))) {
    throw std::runtime_error(std::string("generated state failed the ") + to_string(kind) + " check");
  }
  return s;
}

}  // namespace qmes
