#ifndef QMES_STATE_H_
#define QMES_STATE_H_

#include <array>

#include "qmes/seed.h"

namespace qmes {

/// (g1 (x) g2 (x) g3)|psi(a,b,c)>.
struct GenericState {
  SeedParams seed;
  std::array<Mat3, 3> g = {Mat3::Identity(), Mat3::Identity(), Mat3::Identity()};
};

/// Trace-normalized Gram factors G_i = g_i^dag g_i / tr(g_i^dag g_i) with
/// their Pauli coordinates (coords[i](0) == 1/3).
struct GramTriple {
  std::array<Mat3, 3> G;
  std::array<Coords, 3> coords;
};

struct StandardForm {
  SeedParams seed;
  std::array<Coords, 3> coords;
  PauliIndex gauge;  // the symmetry conjugation that was applied
};

/// Throws DomainError on a singular factor.
Ket27 assemble(const GenericState& s);

GramTriple gram(const GenericState& s);

/// Trace-normalizes three positive operators. Throws DomainError if any is
/// not hermitian positive-definite.
GramTriple gram_from_operators(const std::array<Mat3, 3>& ops);

/// Product operator G1 (x) G2 (x) G3.
Op27 product_operator(const GramTriple& t);

/// Unique positive square root: g = g^dag > 0 with g^dag g = G.
Mat3 positive_factor(const Mat3& G);

/// True if every coordinate outside {0, +w, -w} is below tol (relative to
/// the largest coordinate).
bool in_span(const Coords& c, PauliIndex w, double tol = tolerances().zero);

/// m in span{I, S_w, S_-w} with m^dag m = M, built in the common eigenbasis
/// of S_w. Requires w != 0, M positive and supported on {0, +-w}.
Mat3 span_factor(const Mat3& M, PauliIndex w);

StandardForm standard_form(const GenericState& s);
StandardForm standard_form(const SeedParams& seed, const GramTriple& t);

/// Smallest max-abs coordinate difference over the nine symmetry
/// conjugations of b. Throws SeedMismatch if the seeds differ.
double standard_form_distance(const StandardForm& a, const StandardForm& b);

bool lu_equivalent(const GenericState& s1, const GenericState& s2);
bool lu_equivalent(const SeedParams& seed, const GramTriple& t1, const GramTriple& t2);

/// State with positive factors reconstructed from a standard form.
GenericState from_standard_form(const StandardForm& f);

/// Relabels parties: party j of the result is party perm[j] of s. Odd
/// permutations exchange b and c in the seed so the vector is permuted
/// exactly.
GenericState permute_parties(const GenericState& s, const std::array<int, 3>& perm);
Ket27 permute_ket(const Ket27& v, const std::array<int, 3>& perm);

/// 1 for even, -1 for odd permutations of {0,1,2}.
int permutation_sign(const std::array<int, 3>& perm);

/// All six permutations, identity first, then cyclic, then transpositions.
const std::array<std::array<int, 3>, 6>& all_permutations();

/// Distance of b from the ray through a after normalizing both:
/// min over phases of || a/|a| - e^{i t} b/|b| ||.
double ray_distance(const Ket27& a, const Ket27& b);

}  // namespace qmes

#endif  // QMES_STATE_H_
