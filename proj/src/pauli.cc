#include "qmes/pauli.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmes {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

namespace {

constexpr double kIdentityCheck = 1e-12;

// Returns c with a = c * b, assuming the proportionality holds.
Complex ratio(const Mat3& a, const Mat3& b) { return (b.adjoint() * a).trace() / 3.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("phase table identity failed: " + what);
}

PhaseTables build_tables() {
  const auto& s = pauli_basis();
  PhaseTables t;
  for (int k = 0; k < 9; ++k) {
    const PauliIndex kk = kPauliOrder[k];
    const Mat3 dag = s[k].adjoint();
    t.dagger[k] = ratio(dag, s[(-kk).position()]);
    require((dag - t.dagger[k] * s[(-kk).position()]).norm() < kIdentityCheck, "S_k^dag ~ S_-k");
    for (int l = 0; l < 9; ++l) {
      const Mat3 conj = s[l].adjoint() * s[k] * s[l];
      t.conj[k][l] = ratio(conj, s[k]);
      require((conj - t.conj[k][l] * s[k]).norm() < kIdentityCheck, "S_l^dag S_k S_l ~ S_k");
      const PauliIndex sum = kk + kPauliOrder[l];
      const Mat3 prod = s[k] * s[l];
      t.compose[k][l] = ratio(prod, s[sum.position()]);
      require((prod - t.compose[k][l] * s[sum.position()]).norm() < kIdentityCheck,
              "S_l S_m ~ S_{l+m}");
    }
  }
  // Additivity of conjugation phases and cube-root values.
  for (int k = 0; k < 9; ++k) {
    require(std::abs(t.conj[k][0] - 1.0) < kIdentityCheck, "phi_{k0} = 0");
    for (int l = 0; l < 9; ++l) {
      require(std::abs(std::pow(t.conj[k][l], 3) - 1.0) < kIdentityCheck, "cube root");
      for (int m = 0; m < 9; ++m) {
        const int lm = (kPauliOrder[l] + kPauliOrder[m]).position();
        require(std::abs(t.conj[l][k] * t.conj[m][k] - t.conj[lm][k]) < kIdentityCheck,
                "phase additivity");
      }
    }
  }
  return t;
}

}  // namespace

const std::array<Mat3, 9>& pauli_basis() {
  static const std::array<Mat3, 9> basis = [] {
    std::array<Mat3, 9> b;
    for (int p = 0; p < 9; ++p) b[p] = make_pauli<double>(kPauliOrder[p]);
    return b;
  }();
  return basis;
}

const PhaseTables& phase_tables() {
  static const PhaseTables tables = build_tables();
  return tables;
}

Mat3 from_coords(const Coords& c) {
  Mat3 out = Mat3::Zero();
  const auto& basis = pauli_basis();
  for (int p = 0; p < 9; ++p) out += c(p) * basis[p];
  return out;
}

Coords conjugate_coords(const Coords& c, PauliIndex l) {
  Coords out;
  const auto& t = phase_tables();
  for (int p = 0; p < 9; ++p) out(p) = c(p) * t.conj[p][l.position()];
  return out;
}

Ket27 apply3(const Mat3& a, const Mat3& b, const Mat3& c, const Ket27& v) {
  return apply_local(a, 0, apply_local(b, 1, apply_local(c, 2, v)));
}

Ket27 apply_local(const Mat3& m, int party, const Ket27& v) {
  Ket27 out = Ket27::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const Complex amp = v(ket_index(i, j, k));
        if (amp == Complex(0)) continue;
        for (int r = 0; r < 3; ++r) {
          switch (party) {
            case 0: out(ket_index(r, j, k)) += m(r, i) * amp; break;
            case 1: out(ket_index(i, r, k)) += m(r, j) * amp; break;
            case 2: out(ket_index(i, j, r)) += m(r, k) * amp; break;
            default: throw DomainError("party index must be 0, 1 or 2");
          }
        }
      }
    }
  }
  return out;
}

Mat3 partial_gram(const Ket27& v, int party) {
  if (party < 0 || party > 2) throw DomainError("party index must be 0, 1 or 2");
  Mat3 out = Mat3::Zero();
  for (int x = 0; x < 27; ++x) {
    for (int y = 0; y < 27; ++y) {
      const int dx[3] = {x / 9, (x / 3) % 3, x % 3};
      const int dy[3] = {y / 9, (y / 3) % 3, y % 3};
      bool traced_equal = true;
      for (int q = 0; q < 3; ++q) {
        if (q != party && dx[q] != dy[q]) traced_equal = false;
      }
      if (traced_equal) out(dx[party], dy[party]) += v(x) * std::conj(v(y));
    }
  }
  return out;
}

bool is_hermitian(const Mat3& m, double tol) {
  return (m - m.adjoint()).norm() <= tol * std::max(m.norm(), 1e-300);
}

bool is_positive_definite(const Mat3& m) {
  if (!is_hermitian(m)) return false;
  return min_eigenvalue(m) > 0.0;
}

bool is_invertible(const Mat3& m, double tol) { return std::abs(m.determinant()) > tol; }

Mat3 adjugate(const Mat3& m) {
  Mat3 adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Cofactor C_ji goes into adj(i, j).
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  return adj;
}

double min_eigenvalue(const Mat3& m) {
  const Mat3 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace qmes
