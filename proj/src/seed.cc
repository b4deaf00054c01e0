#include "qmes/seed.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmes {

namespace {

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Complex omega_pow(int e) { return std::polar(1.0, 2.0 * std::numbers::pi * (((e % 3) + 3) % 3) / 3.0); }

// Party-1 slice psi_r as a 3x3 matrix over (party 2, party 3).
std::array<Mat3, 3> seed_slices(const SeedParams& p) {
  const Ket27 psi = build_seed(p);
  std::array<Mat3, 3> out;
  for (int r = 0; r < 3; ++r) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out[r](j, k) = psi(ket_index(r, j, k));
    }
  }
  return out;
}

Mat3 to_matrix(const Eigen::Matrix<Complex, 9, 1>& v) {
  Mat3 m;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) m(j, k) = v(3 * j + k);
  }
  return m;
}

}  // namespace

double SeedParams::norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
}

SeedParams SeedParams::canonical() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("seed parameters must be nonzero and finite");
  SeedParams out{a / n, b / n, c / n};
  for (Complex* z : {&out.a, &out.b, &out.c}) {
    if (std::abs(*z) > 1e-14) {
      const Complex phase = std::conj(*z) / std::abs(*z);
      out.a *= phase;
      out.b *= phase;
      out.c *= phase;
      // Remove the rounding residue in the gauge-fixed entry.
      *z = std::abs(*z);
      break;
    }
  }
  return out;
}

bool SeedParams::is_canonical(double tol) const {
  if (std::abs(norm() - 1.0) > tol) return false;
  for (const Complex& z : {a, b, c}) {
    if (std::abs(z) > 1e-14) return z.real() > 0 && std::abs(z.imag()) <= tol;
  }
  return false;
}

bool same_seed(const SeedParams& x, const SeedParams& y, double tol) {
  const SeedParams cx = x.canonical(), cy = y.canonical();
  return std::abs(cx.a - cy.a) <= tol && std::abs(cx.b - cy.b) <= tol &&
         std::abs(cx.c - cy.c) <= tol;
}

Ket27 build_seed(const SeedParams& p) {
  Ket27 v = Ket27::Zero();
  v(ket_index(0, 0, 0)) = v(ket_index(1, 1, 1)) = v(ket_index(2, 2, 2)) = p.a;
  v(ket_index(0, 1, 2)) = v(ket_index(2, 0, 1)) = v(ket_index(1, 2, 0)) = p.b;
  v(ket_index(0, 2, 1)) = v(ket_index(2, 1, 0)) = v(ket_index(1, 0, 2)) = p.c;
  return v;
}

GenericityReport check_generic(const SeedParams& p, double delta) {
  const double n = p.norm();
  if (!(n > 0.0)) throw DomainError("seed parameters must be nonzero");
  const Complex a = p.a / n, b = p.b / n, c = p.c / n;
  const Complex w = kOmega, w2 = kOmega * kOmega;
  const Complex s3 = a * a * a + b * b * b + c * c * c;
  auto pow9 = [](Complex z) { return std::pow(z, 9); };

  GenericityReport report;
  auto add = [&](std::string name, Complex value) {
    report.conditions.push_back({std::move(name), std::abs(value)});
  };
  add("a = 0", a);
  add("b = 0", b);
  add("c = 0", c);
  add("a^3 + b^3 + c^3 = 0", s3);
  add("(a^3 + b^3 + c^3)^3 = (3abc)^3", s3 * s3 * s3 - std::pow(3.0 * a * b * c, 3));
  add("a^9 = b^9", pow9(a) - pow9(b));
  add("a^9 = c^9", pow9(a) - pow9(c));
  add("b^9 = c^9", pow9(b) - pow9(c));
  add("a + b + c = 0", a + b + c);
  add("a + w b + c = 0", a + w * b + c);
  add("a + w^2 b + c = 0", a + w2 * b + c);
  add("a + b + w c = 0", a + b + w * c);
  add("a + b + w^2 c = 0", a + b + w2 * c);
  add("a + w b + w^2 c = 0", a + w * b + w2 * c);
  add("a + w^2 b + w c = 0", a + w2 * b + w * c);
  add("ab + bc + ca = 0", a * b + b * c + c * a);
  add("ab + w bc + ca = 0", a * b + w * b * c + c * a);
  add("ab + w^2 bc + ca = 0", a * b + w2 * b * c + c * a);
  add("ab + bc + w ca = 0", a * b + b * c + w * c * a);
  add("ab + bc + w^2 ca = 0", a * b + b * c + w2 * c * a);
  add("ab + w bc + w^2 ca = 0", a * b + w * b * c + w2 * c * a);
  add("ab + w^2 bc + w ca = 0", a * b + w2 * b * c + w * c * a);

  report.margin = std::numeric_limits<double>::infinity();
  for (const auto& cond : report.conditions) {
    report.margin = std::min(report.margin, cond.scaled_value);
    if (!(cond.scaled_value >= delta)) report.violations.push_back(cond);
  }
  report.generic = report.violations.empty();
  return report;
}

double symmetry_residual(const Mat3& a, const Mat3& b, const Mat3& c, const SeedParams& p) {
  const Ket27 psi = build_seed(p);
  return (apply3(a, b, c, psi) - psi).norm() / psi.norm();
}

double verify_symmetries(const SeedParams& p) {
  double worst = 0.0;
  for (const Mat3& s : pauli_basis()) worst = std::max(worst, symmetry_residual(s, s, s, p));
  if (worst > 1e-8) {
    throw std::runtime_error("generalized Pauli triple fails to fix the seed, residual " +
                             std::to_string(worst));
  }
  return worst;
}

std::array<Eigen::Matrix<Complex, 9, 1>, 9> phi_states(const SeedParams& p) {
  const Complex a = std::conj(p.a), b = std::conj(p.b), c = std::conj(p.c);
  std::array<Eigen::Matrix<Complex, 9, 1>, 9> phi;
  for (auto& v : phi) v.setZero();
  auto at = [](int j, int k) { return 3 * j + k; };
  phi[0](at(1, 2)) = c;  phi[0](at(2, 1)) = -b;
  phi[1](at(2, 0)) = c;  phi[1](at(0, 2)) = -b;
  phi[2](at(0, 1)) = c;  phi[2](at(1, 0)) = -b;
  phi[3](at(1, 2)) = a;  phi[3](at(0, 0)) = -b;
  phi[4](at(2, 0)) = a;  phi[4](at(1, 1)) = -b;
  phi[5](at(0, 1)) = a;  phi[5](at(2, 2)) = -b;
  phi[6](at(2, 1)) = a;  phi[6](at(0, 0)) = -c;
  phi[7](at(0, 2)) = a;  phi[7](at(1, 1)) = -c;
  phi[8](at(1, 0)) = a;  phi[8](at(2, 2)) = -c;
  return phi;
}

std::array<Eigen::Vector3cd, 9> phi_contractions(const Mat3& b, const Mat3& c,
                                                 const SeedParams& p) {
  const auto slices = seed_slices(p);
  const auto phi = phi_states(p);
  std::array<Eigen::Vector3cd, 9> out;
  std::array<Mat3, 3> moved;
  for (int r = 0; r < 3; ++r) moved[r] = b * slices[r] * c.transpose();
  for (int i = 0; i < 9; ++i) {
    const Mat3 phi_m = to_matrix(phi[i]);
    for (int r = 0; r < 3; ++r) out[i](r) = (phi_m.conjugate().cwiseProduct(moved[r])).sum();
  }
  return out;
}

double projection_residual(const Mat3& b, const Mat3& c, const SeedParams& p) {
  const double scale_b = std::sqrt(3.0) / b.norm();
  const double scale_c = std::sqrt(3.0) / c.norm();
  const SeedParams unit{p.a / p.norm(), p.b / p.norm(), p.c / p.norm()};
  // build_seed(unit) has norm sqrt(3).
  const double psi_norm = std::sqrt(3.0);
  const auto phi = phi_states(unit);
  const auto contr = phi_contractions(scale_b * b, scale_c * c, unit);
  double worst = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double phi_norm = phi[i].norm();
    if (phi_norm == 0.0) continue;
    worst = std::max(worst, contr[i].norm() / (phi_norm * psi_norm));
  }
  return worst;
}

AppendixMatrices build_appendix_Mi(const Mat3& bm, const SeedParams& p) {
  Mat3 tmpl;
  tmpl << p.a, p.c, p.b,
          p.b, p.a, p.c,
          p.c, p.b, p.a;
  AppendixMatrices out;
  for (int i = 0; i < 3; ++i) {
    const Complex b0 = bm(i, 0), b1 = bm(i, 1), b2 = bm(i, 2);
    Mat3 pattern;
    pattern << b0, b2, b1,
               b2, b1, b0,
               b1, b0, b2;
    out.m[i] = tmpl.cwiseProduct(pattern);
  }
  return out;
}

Mat3 appendix_adjugate(const Mat3& bm, int row, const SeedParams& p) {
  const Complex a = p.a, b = p.b, c = p.c;
  const Complex b0 = bm(row, 0), b1 = bm(row, 1), b2 = bm(row, 2);
  Mat3 adj;
  adj << a * a * b1 * b2 - b * c * b0 * b0, b * b * b0 * b1 - a * c * b2 * b2, c * c * b0 * b2 - a * b * b1 * b1,
         c * c * b0 * b1 - a * b * b2 * b2, a * a * b0 * b2 - b * c * b1 * b1, b * b * b1 * b2 - a * c * b0 * b0,
         b * b * b0 * b2 - a * c * b1 * b1, c * c * b1 * b2 - a * b * b0 * b0, a * a * b0 * b1 - b * c * b2 * b2;
  return adj;
}

Mat3 projective_normalize(const Mat3& m) {
  const double n = m.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero matrix");
  Mat3 out = m * (std::sqrt(3.0) / n);
  for (int idx = 0; idx < 9; ++idx) {
    const Complex z = out(idx / 3, idx % 3);
    if (std::abs(z) > 1e-9) {
      out *= std::conj(z) / std::abs(z);
      break;
    }
  }
  return out;
}

std::vector<AppendixCandidate> monomial_candidates() {
  std::vector<AppendixCandidate> out;
  std::array<int, 3> sigma = {0, 1, 2};
  do {
    for (int e = 0; e < 27; ++e) {
      const int e0 = e % 3, e1 = (e / 3) % 3, e2 = e / 9;
      Mat3 m = Mat3::Zero();
      m(0, sigma[0]) = omega_pow(e0);
      m(1, sigma[1]) = omega_pow(e1);
      m(2, sigma[2]) = omega_pow(e2);
      const Mat3 normalized = projective_normalize(m);
      const bool duplicate = std::any_of(out.begin(), out.end(), [&](const AppendixCandidate& c) {
        return (c.matrix - normalized).norm() < 1e-9;
      });
      if (!duplicate) {
        out.push_back({CandidateKind::kMonomial, normalized, {sigma[0], sigma[1], sigma[2], e0, e1, e2}});
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<AppendixCandidate> dense_candidates() {
  std::vector<AppendixCandidate> out;
  out.reserve(162);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int m = 1; m <= 2; ++m) {
            Mat3 b;
            b << 1.0, omega_pow(i), omega_pow(j),
                 omega_pow(k), omega_pow(k + i + m), omega_pow(k + j + 2 * m),
                 omega_pow(l), omega_pow(l + i + 2 * m), omega_pow(l + j + m);
            out.push_back({CandidateKind::kDense, projective_normalize(b), {i, j, k, l, m}});
          }
  return out;
}

std::optional<PauliIndex> match_pauli(const Mat3& m, double tol) {
  const double n = m.norm();
  if (!(n > 0.0)) return std::nullopt;
  for (const PauliIndex k : kPauliOrder) {
    const Complex overlap = (pauli(k).adjoint() * m).trace() / (std::sqrt(3.0) * n);
    if (std::abs(std::abs(overlap) - 1.0) <= tol) return k;
  }
  return std::nullopt;
}

AuditReport symmetry_audit(const SeedParams& p, double survivor_tol) {
  if (!check_generic(p).generic) throw DomainError("symmetry audit requires a generic seed");
  const SeedParams unit = p.canonical();
  std::vector<AppendixCandidate> candidates = monomial_candidates();
  {
    auto dense = dense_candidates();
    candidates.insert(candidates.end(), dense.begin(), dense.end());
  }

  // The projection test is linear in C once B is fixed: precompute
  // conj(phi_i) and B psi_r for every B.
  const auto slices = seed_slices(unit);
  const auto phi = phi_states(unit);
  std::array<Mat3, 9> phi_conj;
  std::array<double, 9> phi_norm;
  for (int i = 0; i < 9; ++i) {
    phi_conj[i] = to_matrix(phi[i]).conjugate();
    phi_norm[i] = phi[i].norm();
  }
  const double psi_norm = build_seed(unit).norm();
  const Ket27 psi = build_seed(unit);

  AuditReport report;
  report.candidate_count = static_cast<int>(candidates.size());
  report.rejection_margin = std::numeric_limits<double>::infinity();
  for (std::size_t bi = 0; bi < candidates.size(); ++bi) {
    std::array<Mat3, 3> moved_b;
    for (int r = 0; r < 3; ++r) moved_b[r] = candidates[bi].matrix * slices[r];
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const Mat3 ct = candidates[ci].matrix.transpose();
      std::array<Mat3, 3> moved;
      for (int r = 0; r < 3; ++r) moved[r] = moved_b[r] * ct;
      double worst = 0.0;
      for (int i = 0; i < 9; ++i) {
        Eigen::Vector3cd v;
        for (int r = 0; r < 3; ++r) v(r) = phi_conj[i].cwiseProduct(moved[r]).sum();
        worst = std::max(worst, v.norm() / (phi_norm[i] * psi_norm));
      }
      ++report.pair_count;
      if (worst > survivor_tol) {
        report.rejection_margin = std::min(report.rejection_margin, worst);
        continue;
      }
      AuditSurvivor s;
      s.b_index = static_cast<int>(bi);
      s.c_index = static_cast<int>(ci);
      s.b_kind = candidates[bi].kind;
      s.c_kind = candidates[ci].kind;
      s.residual = worst;
      const auto kb = match_pauli(candidates[bi].matrix);
      const auto kc = match_pauli(candidates[ci].matrix);
      const Mat3& bmat = candidates[bi].matrix;
      const Ket27 image = apply3(bmat, bmat, bmat, psi);
      // Distance of the image from the ray through psi.
      const Complex overlap = psi.dot(image) / psi.squaredNorm();
      s.full_symmetry_residual = (image - overlap * psi).norm() / psi_norm;
      if (kb && kc && *kb == *kc) s.pauli = kb;
      report.survivors.push_back(s);
      if (!s.pauli) report.surplus.push_back(s);
    }
  }

  std::array<bool, 9> seen{};
  for (const auto& s : report.survivors) {
    if (s.pauli) seen[s.pauli->position()] = true;
  }
  report.ok = report.survivors.size() == 9 && report.surplus.empty() &&
              std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  return report;
}

}  // namespace qmes
