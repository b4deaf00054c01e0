#include "qmes/state.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmes {

namespace {

// Window for the gauge-fixed phases: [-kArgShift, 2 pi / 3 - kArgShift).
// The shift keeps real positive coordinates away from the window edge.
constexpr double kArgShift = 1e-6;

bool in_phase_window(Complex z) {
  double t = std::arg(z) + kArgShift;
  if (t < 0) t += 2.0 * std::numbers::pi;
  return t < 2.0 * std::numbers::pi / 3.0;
}

// Lexicographic (Re, Im) comparison over the 24 non-identity coordinates,
// treating differences within tol as ties.
bool lex_less(const std::array<Coords, 3>& x, const std::array<Coords, 3>& y, double tol) {
  for (int i = 0; i < 3; ++i) {
    for (int p = 1; p < 9; ++p) {
      const double dr = x[i](p).real() - y[i](p).real();
      if (std::abs(dr) > tol) return dr < 0;
      const double di = x[i](p).imag() - y[i](p).imag();
      if (std::abs(di) > tol) return di < 0;
    }
  }
  return false;
}

}  // namespace

Ket27 assemble(const GenericState& s) {
  for (const Mat3& f : s.g) {
    if (!is_invertible(f)) throw DomainError("local factor is not invertible");
  }
  return apply3(s.g[0], s.g[1], s.g[2], build_seed(s.seed));
}

GramTriple gram(const GenericState& s) {
  std::array<Mat3, 3> ops;
  for (int i = 0; i < 3; ++i) ops[i] = s.g[i].adjoint() * s.g[i];
  return gram_from_operators(ops);
}

GramTriple gram_from_operators(const std::array<Mat3, 3>& ops) {
  GramTriple t;
  for (int i = 0; i < 3; ++i) {
    const Mat3 herm = 0.5 * (ops[i] + ops[i].adjoint());
    if (!is_hermitian(ops[i], 1e-8) || !(min_eigenvalue(herm) > 0.0)) {
      throw DomainError("Gram factor is not hermitian positive-definite");
    }
    t.G[i] = herm / herm.trace().real();
    t.coords[i] = pauli_coords(t.G[i]);
  }
  return t;
}

Op27 product_operator(const GramTriple& t) { return kron3(t.G[0], t.G[1], t.G[2]); }

Mat3 positive_factor(const Mat3& G) {
  if (!is_hermitian(G, 1e-8)) throw DomainError("positive_factor: input is not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (G + G.adjoint()));
  const Eigen::Vector3d ev = es.eigenvalues();
  if (!(ev(0) > 0.0)) throw DomainError("positive_factor: input is not positive-definite");
  return es.eigenvectors() * ev.cwiseSqrt().cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

bool in_span(const Coords& c, PauliIndex w, double tol) {
  const double scale = c.cwiseAbs().maxCoeff();
  const int pw = w.position(), mw = (-w).position();
  for (int p = 1; p < 9; ++p) {
    if (p == pw || p == mw) continue;
    if (std::abs(c(p)) > tol * scale) return false;
  }
  return true;
}

Mat3 span_factor(const Mat3& M, PauliIndex w) {
  if (w.is_zero()) throw DomainError("span_factor: w must be nonzero");
  if (!in_span(pauli_coords(M), w)) throw DomainError("span_factor: M is not in span{I, S_w, S_-w}");
  if (!is_positive_definite(M)) throw DomainError("span_factor: M is not positive-definite");
  // S_w is unitary with three distinct eigenvalues, so its eigenvectors
  // diagonalize the whole span.
  Eigen::ComplexEigenSolver<Mat3> es(pauli(w));
  Mat3 u = es.eigenvectors();
  for (int j = 0; j < 3; ++j) u.col(j).normalize();
  const Mat3 d = u.adjoint() * M * u;
  Eigen::Vector3cd root;
  for (int j = 0; j < 3; ++j) {
    const double dj = d(j, j).real();
    if (!(dj > 0.0)) throw DomainError("span_factor: non-positive eigenvalue");
    root(j) = std::sqrt(dj);
  }
  return u * root.asDiagonal() * u.adjoint();
}

StandardForm standard_form(const GenericState& s) { return standard_form(s.seed, gram(s)); }

StandardForm standard_form(const SeedParams& seed, const GramTriple& t) {
  const double zero = tolerances().zero;
  // First two entries, scanning party 0..2 in coordinate order, whose
  // labels are independent (k2 not in {+-k1}).
  int first_party = -1, first_pos = -1, second_party = -1, second_pos = -1;
  for (int i = 0; i < 3 && second_party < 0; ++i) {
    for (int p = 1; p < 9 && second_party < 0; ++p) {
      if (std::abs(t.coords[i](p)) <= zero) continue;
      if (first_party < 0) {
        first_party = i;
        first_pos = p;
        continue;
      }
      const PauliIndex k1 = kPauliOrder[first_pos], k = kPauliOrder[p];
      if (k == k1 || k == -k1) continue;
      second_party = i;
      second_pos = p;
    }
  }

  StandardForm best;
  best.seed = seed.canonical();
  bool have = false;
  for (const PauliIndex l : kPauliOrder) {
    std::array<Coords, 3> rotated;
    for (int i = 0; i < 3; ++i) rotated[i] = conjugate_coords(t.coords[i], l);
    if (first_party >= 0 && !in_phase_window(rotated[first_party](first_pos))) continue;
    if (second_party >= 0 && !in_phase_window(rotated[second_party](second_pos))) continue;
    if (!have || lex_less(rotated, best.coords, zero)) {
      best.coords = rotated;
      best.gauge = l;
      have = true;
    }
  }
  return best;
}

double standard_form_distance(const StandardForm& a, const StandardForm& b) {
  if (!same_seed(a.seed, b.seed)) {
    throw SeedMismatch("states belong to different seed parameters; cross-seed comparison is unsupported");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const PauliIndex l : kPauliOrder) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      d = std::max(d, (a.coords[i] - conjugate_coords(b.coords[i], l)).cwiseAbs().maxCoeff());
    }
    best = std::min(best, d);
  }
  return best;
}

bool lu_equivalent(const GenericState& s1, const GenericState& s2) {
  if (!same_seed(s1.seed, s2.seed)) {
    throw SeedMismatch("states belong to different seed parameters; cross-seed comparison is unsupported");
  }
  return standard_form_distance(standard_form(s1), standard_form(s2)) <=
         tolerances().standard_form;
}

bool lu_equivalent(const SeedParams& seed, const GramTriple& t1, const GramTriple& t2) {
  return standard_form_distance(standard_form(seed, t1), standard_form(seed, t2)) <=
         tolerances().standard_form;
}

GenericState from_standard_form(const StandardForm& f) {
  GenericState s;
  s.seed = f.seed;
  for (int i = 0; i < 3; ++i) s.g[i] = positive_factor(from_coords(f.coords[i]));
  return s;
}

int permutation_sign(const std::array<int, 3>& perm) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

const std::array<std::array<int, 3>, 6>& all_permutations() {
  static const std::array<std::array<int, 3>, 6> perms = {{
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  return perms;
}

Ket27 permute_ket(const Ket27& v, const std::array<int, 3>& perm) {
  Ket27 out;
  for (int x = 0; x < 27; ++x) {
    const int digits[3] = {x / 9, (x / 3) % 3, x % 3};
    int old[3];
    for (int j = 0; j < 3; ++j) old[perm[j]] = digits[j];
    out(x) = v(ket_index(old[0], old[1], old[2]));
  }
  return out;
}

GenericState permute_parties(const GenericState& s, const std::array<int, 3>& perm) {
  GenericState out;
  out.seed = permutation_sign(perm) > 0 ? s.seed : s.seed.transposed();
  for (int j = 0; j < 3; ++j) out.g[j] = s.g[perm[j]];
  return out;
}

double ray_distance(const Ket27& a, const Ket27& b) {
  const double na = a.norm(), nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) return std::numeric_limits<double>::infinity();
  const Complex overlap = b.dot(a);  // <b|a>
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a / na - phase * b / nb).norm();
}

}  // namespace qmes
