#include "qmes/sep.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmes {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kFeasibleTol = 1e-9;
constexpr double kNonnegTol = 1e-9;

Mat3 conjugate_by(const Mat3& m, int k) {
  const Mat3& s = pauli_basis()[k];
  return s.adjoint() * m * s;
}

Op27 conjugated_product(const GramTriple& h, int k) {
  return kron3(conjugate_by(h.G[0], k), conjugate_by(h.G[1], k), conjugate_by(h.G[2], k));
}

// Real vectorization of a 27x27 operator: real parts then imaginary parts.
Eigen::VectorXd realify(const Op27& m) {
  Eigen::VectorXd out(2 * 729);
  for (int i = 0; i < 729; ++i) {
    out(i) = m.data()[i].real();
    out(729 + i) = m.data()[i].imag();
  }
  return out;
}

bool subset_next(std::vector<int>& idx, int n) {
  const int d = static_cast<int>(idx.size());
  int i = d - 1;
  while (i >= 0 && idx[i] == n - d + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::string pauli_label(int pos) {
  std::ostringstream os;
  os << kPauliOrder[pos];
  return os.str();
}

}  // namespace

SepInstance make_instance(const GenericState& from, const GenericState& to) {
  if (!same_seed(from.seed, to.seed)) {
    throw SeedMismatch("states belong to different seed parameters; cross-seed comparison is unsupported");
  }
  SepInstance inst = make_instance(from.seed, gram(from), gram(to));
  inst.initial_state = from;
  inst.target_state = to;
  return inst;
}

SepInstance make_instance(const SeedParams& seed, const GramTriple& from, const GramTriple& to) {
  SepInstance inst;
  inst.seed = seed.canonical();
  inst.initial = from;
  inst.target = to;
  return inst;
}

Mat3 depolarize(const Mat3& h, const ProbabilityVector& p) {
  Mat3 out = Mat3::Zero();
  for (int k = 0; k < 9; ++k) {
    if (p(k) != 0.0) out += p(k) * conjugate_by(h, k);
  }
  return out;
}

EtaVector eta_from_p(const ProbabilityVector& p) {
  const auto& t = phase_tables();
  EtaVector eta = EtaVector::Zero();
  for (int l = 0; l < 9; ++l) {
    for (int k = 0; k < 9; ++k) eta(l) += p(k) * t.conj[l][k];
  }
  return eta;
}

ProbabilityVector uniform_on(const std::vector<PauliIndex>& ks) {
  if (ks.empty()) throw DomainError("uniform_on: empty support");
  ProbabilityVector p = ProbabilityVector::Zero();
  for (PauliIndex k : ks) p(k.position()) += 1.0;
  return p / p.sum();
}

ProbabilityVector uniform_p() { return ProbabilityVector::Constant(1.0 / 9.0); }

ProbabilityVector point_mass(PauliIndex k) {
  ProbabilityVector p = ProbabilityVector::Zero();
  p(k.position()) = 1.0;
  return p;
}

GramTriple induced_initial(const GramTriple& h, const ProbabilityVector& p) {
  std::array<Mat3, 3> ops;
  for (int i = 0; i < 3; ++i) ops[i] = depolarize(h.G[i], p);
  return gram_from_operators(ops);
}

EtaCheck check_eta_conditions(const std::array<Coords, 3>& h, const EtaVector& eta, double tol) {
  EtaCheck out;
  const double zero = tolerances().zero / 3.0;
  auto record = [&](double err, auto&& label) {
    out.max_violation = std::max(out.max_violation, err);
    if (err > tol) {
      out.ok = false;
      out.violations.push_back(label());
    }
  };
  for (int l = 0; l < 9; ++l) {
    if (std::abs(h[0](l)) <= zero) continue;
    for (int m = 0; m < 9; ++m) {
      if (std::abs(h[1](m)) <= zero) continue;
      for (int n = 0; n < 9; ++n) {
        if (std::abs(h[2](n)) <= zero) continue;
        const int s = (kPauliOrder[l] + kPauliOrder[m] + kPauliOrder[n]).position();
        const double err = std::abs(eta(l) * eta(m) * eta(n) - eta(s));
        record(err, [&] { return "triple " + pauli_label(l) + pauli_label(m) + pauli_label(n); });
      }
    }
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    for (int l = 1; l < 9; ++l) {
      if (std::abs(h[pr[0]](l)) <= zero) continue;
      for (int m = 1; m < 9; ++m) {
        if (std::abs(h[pr[1]](m)) <= zero) continue;
        const int s = (kPauliOrder[l] + kPauliOrder[m]).position();
        const double err = std::abs(eta(l) * eta(m) - eta(s));
        record(err, [&] {
          return "pair " + std::to_string(pr[0]) + std::to_string(pr[1]) + " " + pauli_label(l) +
                 pauli_label(m);
        });
      }
    }
  }
  return out;
}

double transformation_residual(const GramTriple& g, const GramTriple& h, const ProbabilityVector& p) {
  Op27 sum = -kron3(g.G[0], g.G[1], g.G[2]);
  for (int k = 0; k < 9; ++k) {
    if (p(k) != 0.0) sum += p(k) * conjugated_product(h, k);
  }
  return sum.norm();
}

SepFeasibility sep_feasible(const SepInstance& inst) {
  constexpr int kRows = 2 * 729 + 1;
  Eigen::MatrixXd a(kRows, 9);
  Eigen::VectorXd b(kRows);
  for (int k = 0; k < 9; ++k) {
    a.col(k).head(2 * 729) = realify(conjugated_product(inst.target, k));
    a(kRows - 1, k) = 1.0;
  }
  b.head(2 * 729) = realify(kron3(inst.initial.G[0], inst.initial.G[1], inst.initial.G[2]));
  b(kRows - 1) = 1.0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTol);
  const int rank = static_cast<int>(svd.rank());
  const Eigen::VectorXd p0 = svd.solve(b);

  SepFeasibility out;
  out.residual = (a * p0 - b).norm();
  out.nullity = 9 - rank;
  if (out.residual > kFeasibleTol) return out;

  const Eigen::MatrixXd null = svd.matrixV().rightCols(out.nullity);
  std::vector<ProbabilityVector> candidates;
  if (out.nullity == 0) {
    candidates.push_back(p0);
  } else {
    // A vertex has nullity-many active constraints p_j = 0.
    std::vector<int> idx(out.nullity);
    for (int i = 0; i < out.nullity; ++i) idx[i] = i;
    do {
      Eigen::MatrixXd sub(out.nullity, out.nullity);
      Eigen::VectorXd rhs(out.nullity);
      for (int r = 0; r < out.nullity; ++r) {
        sub.row(r) = null.row(idx[r]);
        rhs(r) = -p0(idx[r]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      lu.setThreshold(kRankTol);
      if (lu.rank() < out.nullity) continue;
      candidates.push_back(p0 + null * lu.solve(rhs));
    } while (subset_next(idx, 9));
  }

  for (ProbabilityVector p : candidates) {
    if (p.minCoeff() < -kNonnegTol) continue;
    p = p.cwiseMax(0.0);
    p /= p.sum();
    bool duplicate = false;
    for (const SepVertex& v : out.vertices) {
      if ((v.p - p).cwiseAbs().maxCoeff() <= 1e-8) duplicate = true;
    }
    if (duplicate) continue;
    SepVertex v;
    v.p = p;
    v.residual = transformation_residual(inst.initial, inst.target, p);
    if (v.residual > kFeasibleTol) continue;
    v.trivial = lu_equivalent(inst.seed, induced_initial(inst.target, p), inst.target);
    out.vertices.push_back(v);
  }
  if (out.vertices.empty()) return out;

  out.feasible = true;
  out.witness = out.vertices.front().p;
  for (const SepVertex& v : out.vertices) {
    if (!v.trivial) {
      out.nontrivial = true;
      out.witness = v.p;
      break;
    }
  }
  Eigen::MatrixXd diffs(9, out.vertices.size());
  for (size_t i = 0; i < out.vertices.size(); ++i) diffs.col(i) = out.vertices[i].p - out.vertices[0].p;
  Eigen::FullPivLU<Eigen::MatrixXd> hull(diffs);
  hull.setThreshold(1e-8);
  out.affine_dim = static_cast<int>(hull.rank());
  out.unique = out.vertices.size() == 1;
  return out;
}

std::vector<ProbabilityVector> predecessor_candidates() {
  std::vector<ProbabilityVector> out = {uniform_p()};
  for (PauliIndex w : kPairRepresentatives) out.push_back(uniform_on({PauliIndex{}, w, -w}));
  return out;
}

ReachSearch sep_reach_search(const SeedParams& seed, const GramTriple& h) {
  ReachSearch out;
  for (const ProbabilityVector& p : predecessor_candidates()) {
    const GramTriple g = induced_initial(h, p);
    if (lu_equivalent(seed, g, h)) continue;
    SepFeasibility f = sep_feasible(make_instance(seed, g, h));
    if (f.feasible && f.nontrivial) {
      out.found = true;
      out.p = p;
      out.predecessor = g;
      out.feasibility = std::move(f);
      return out;
    }
  }
  return out;
}

}  // namespace qmes
