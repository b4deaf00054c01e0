#ifndef QMES_GENERATE_H_
#define QMES_GENERATE_H_

#include <optional>
#include <random>
#include <string>

#include "qmes/classify.h"

namespace qmes {

using Rng = std::mt19937_64;

enum class StateKind { kSeed, kGeneric, kCaseI, kCaseII, kLemma3, kConvertible, kDense };

const char* to_string(StateKind k);
std::optional<StateKind> parse_state_kind(const std::string& s);

/// Rejection-samples complex Gaussian seeds until check_generic passes.
/// Throws std::runtime_error after max_tries, quoting the last margin.
SeedParams random_generic_seed(Rng& rng, double margin = kDefaultGenericMargin, int max_tries = 10000);

/// Haar-random unitary (QR of a complex Gaussian matrix, phases fixed).
Mat3 random_unitary(Rng& rng);

/// Trace-normalized positive operator I/3 + sum_w (z_w S_w + h.c.) over the
/// listed pairs, with random z_w and smallest eigenvalue bounded away
/// from zero.
Mat3 random_gram(Rng& rng, PairSet pairs);

/// A local factor with the given Gram support, dressed by a random unitary
/// and a random positive scale.
Mat3 random_factor(Rng& rng, PairSet pairs);

/// A random state of the requested kind, re-checked with the classifier.
/// Throws std::runtime_error if the check fails.
GenericState generate_state(StateKind kind, Rng& rng);
GenericState generate_state(StateKind kind, const SeedParams& seed, Rng& rng);

/// Whether a classification is what the kind promises.
bool kind_holds(StateKind kind, const Classification& c);

}  // namespace qmes

#endif  // QMES_GENERATE_H_
