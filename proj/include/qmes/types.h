#ifndef QMES_TYPES_H_
#define QMES_TYPES_H_

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmes {

using Complex = std::complex<double>;

template <typename Real>
using Mat3T = Eigen::Matrix<std::complex<Real>, 3, 3>;
template <typename Real>
using Ket27T = Eigen::Matrix<std::complex<Real>, 27, 1>;

using Mat3 = Mat3T<double>;
using Ket27 = Ket27T<double>;
using Op27 = Eigen::Matrix<Complex, 27, 27>;

/// Pauli-basis coordinates of a 3x3 operator in canonical Z3^2 order;
/// entry 0 is the identity coefficient.
using Coords = Eigen::Matrix<Complex, 9, 1>;
/// The eight non-identity coordinates (entries 1..8 of Coords).
using CoordVector = Eigen::Matrix<Complex, 8, 1>;
/// Real weights over the nine group elements, canonical order.
using Weights9 = Eigen::Matrix<double, 9, 1>;

/// An element k = (k1, k2) of Z3^2, labelling S_k = X^k1 Z^k2.
struct PauliIndex {
  int k1 = 0;
  int k2 = 0;

  constexpr PauliIndex() = default;
  constexpr PauliIndex(int a, int b) : k1(((a % 3) + 3) % 3), k2(((b % 3) + 3) % 3) {}

  constexpr PauliIndex operator+(PauliIndex o) const { return {k1 + o.k1, k2 + o.k2}; }
  constexpr PauliIndex operator-() const { return {-k1, -k2}; }
  constexpr PauliIndex operator-(PauliIndex o) const { return *this + (-o); }
  constexpr bool operator==(const PauliIndex&) const = default;
  constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }

  /// Position in the canonical enumeration
  /// (0,0),(1,0),(2,0),(0,1),(0,2),(1,1),(2,2),(2,1),(1,2).
  constexpr int position() const {
    constexpr int table[3][3] = {{0, 3, 4}, {1, 5, 8}, {2, 7, 6}};
    return table[k1][k2];
  }
};

inline constexpr std::array<PauliIndex, 9> kPauliOrder = {
    PauliIndex{0, 0}, PauliIndex{1, 0}, PauliIndex{2, 0}, PauliIndex{0, 1}, PauliIndex{0, 2},
    PauliIndex{1, 1}, PauliIndex{2, 2}, PauliIndex{2, 1}, PauliIndex{1, 2}};

/// One representative of each pair {k, -k}, k != 0.
inline constexpr std::array<PauliIndex, 4> kPairRepresentatives = {
    PauliIndex{1, 0}, PauliIndex{0, 1}, PauliIndex{1, 1}, PauliIndex{2, 1}};

inline std::ostream& operator<<(std::ostream& os, PauliIndex k) {
  return os << '(' << k.k1 << ',' << k.k2 << ')';
}

/// Process-wide numerical thresholds. Set once at startup (the CLI does so
/// from --tolerance); read-only afterwards.
struct Tolerances {
  /// Zero test for operators and coordinates, relative to the natural scale.
  double zero = 1e-9;
  /// Coordinate comparison for standard forms.
  double standard_form = 1e-9;
  /// Completeness residual accepted for Kraus sets and POVMs.
  double completeness = 1e-10;
  /// Proportionality residual for branch outputs.
  double branch_match = 1e-8;
};

Tolerances& tolerances();

/// Thrown when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two states were compared across different seed parameters.
class SeedMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qmes

#endif  // QMES_TYPES_H_
