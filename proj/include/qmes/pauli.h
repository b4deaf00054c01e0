#ifndef QMES_PAULI_H_
#define QMES_PAULI_H_

#include <numbers>
#include <utility>

#include "qmes/types.h"

namespace qmes {

/// Shift matrix X: X|j> = |j-1 mod 3>, i.e. rows (0,1,0),(0,0,1),(1,0,0).
template <typename Real = double>
Mat3T<Real> shift_matrix() {
  Mat3T<Real> x = Mat3T<Real>::Zero();
  x(0, 1) = x(1, 2) = x(2, 0) = Real(1);
  return x;
}

/// Clock matrix Z = diag(1, w, w^2) with w = exp(2 pi i / 3).
template <typename Real = double>
Mat3T<Real> clock_matrix() {
  const Real two_pi_3 = Real(2) * std::numbers::pi_v<Real> / Real(3);
  Mat3T<Real> z = Mat3T<Real>::Zero();
  for (int j = 0; j < 3; ++j) z(j, j) = std::polar(Real(1), two_pi_3 * Real(j));
  return z;
}

/// S_k = X^k1 Z^k2, written entrywise: S_k|j> = w^{k2 j} |j - k1>.
template <typename Real = double>
Mat3T<Real> make_pauli(PauliIndex k) {
  const Real two_pi_3 = Real(2) * std::numbers::pi_v<Real> / Real(3);
  Mat3T<Real> out = Mat3T<Real>::Zero();
  for (int j = 0; j < 3; ++j) out((j - k.k1 + 3) % 3, j) = std::polar(Real(1), two_pi_3 * Real((k.k2 * j) % 3));
  return out;
}

/// Phases of the Weyl-Heisenberg group, all obtained by direct 3x3
/// products and checked against their defining identities on first use.
struct PhaseTables {
  /// conj[k][l] = e^{i phi_{kl}} with S_l^dag S_k S_l = e^{i phi_{kl}} S_k.
  std::array<std::array<Complex, 9>, 9> conj;
  /// dagger[k] = e^{i nu_k} with S_k^dag = e^{i nu_k} S_{-k}.
  std::array<Complex, 9> dagger;
  /// compose[l][m] = c with S_l S_m = c S_{l+m}.
  std::array<std::array<Complex, 9>, 9> compose;
};

/// Tables indexed by canonical positions. Throws std::logic_error if a
/// defining identity fails (an algebra bug, not an input problem).
const PhaseTables& phase_tables();

/// The nine S_k in canonical order.
const std::array<Mat3, 9>& pauli_basis();

inline const Mat3& pauli(PauliIndex k) { return pauli_basis()[k.position()]; }

inline Complex conj_phase(PauliIndex k, PauliIndex l) {
  return phase_tables().conj[k.position()][l.position()];
}

inline Complex dagger_phase(PauliIndex k) { return phase_tables().dagger[k.position()]; }

inline std::pair<PauliIndex, Complex> group_compose(PauliIndex l, PauliIndex m) {
  return {l + m, phase_tables().compose[l.position()][m.position()]};
}

/// g_k = tr(S_k^dag M) / 3 for all nine k, canonical order.
template <typename Derived>
Coords pauli_coords(const Eigen::MatrixBase<Derived>& m) {
  Coords out;
  const auto& basis = pauli_basis();
  for (int p = 0; p < 9; ++p) out(p) = (basis[p].adjoint() * m).trace() / 3.0;
  return out;
}

/// sum_k g_k S_k.
Mat3 from_coords(const Coords& c);

inline CoordVector coord_vector(const Coords& c) { return c.tail<8>(); }

/// Coordinates of S_l^dag M S_l given those of M: entrywise phase multiply.
Coords conjugate_coords(const Coords& c, PauliIndex l);

template <typename DA, typename DB, typename DC>
Op27 kron3(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
           const Eigen::MatrixBase<DC>& c) {
  Op27 out;
  for (int i = 0; i < 27; ++i) {
    for (int j = 0; j < 27; ++j) {
      out(i, j) = a(i / 9, j / 9) * b((i / 3) % 3, (j / 3) % 3) * c(i % 3, j % 3);
    }
  }
  return out;
}

/// (A (x) B (x) C) v without forming the 27x27 operator.
Ket27 apply3(const Mat3& a, const Mat3& b, const Mat3& c, const Ket27& v);

/// Applies m to one party (0, 1 or 2) of v.
Ket27 apply_local(const Mat3& m, int party, const Ket27& v);

/// Reduced operator tr_{other parties} |v><v| for party 0, 1 or 2.
Mat3 partial_gram(const Ket27& v, int party);

/// Tensor-product basis index |i j k> -> 9i + 3j + k.
constexpr int ket_index(int i, int j, int k) { return 9 * i + 3 * j + k; }

bool is_hermitian(const Mat3& m, double tol = tolerances().zero);
bool is_positive_definite(const Mat3& m);
bool is_invertible(const Mat3& m, double tol = tolerances().zero);

/// Classical adjugate (transpose of the cofactor matrix).
Mat3 adjugate(const Mat3& m);

/// Smallest eigenvalue of the hermitian part of m.
double min_eigenvalue(const Mat3& m);

}  // namespace qmes

#endif  // QMES_PAULI_H_
