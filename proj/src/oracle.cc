#include "qmes/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace qmes {

namespace {

constexpr int kUnknowns = 9;
constexpr double kFeasibleTol = 1e-9;
constexpr double kNonnegTol = 1e-10;
// The gradient search only has to corroborate a feasible basis solution;
// a first-order method need not reach the 1e-9 level itself.
constexpr double kGradientAgreeTol = 1e-6;

using Row = std::array<double, kUnknowns>;

// Real rows of the tensor-coordinate system, one per (l,m,n) and real or
// imaginary part, plus the normalization row last.
struct System {
  std::vector<Row> rows;
  std::vector<double> rhs;
};

System build_system(const GramTriple& g, const GramTriple& h) {
  const auto& t = phase_tables();
  System s;
  s.rows.reserve(2 * 729 + 1);
  for (int l = 0; l < 9; ++l) {
    for (int m = 0; m < 9; ++m) {
      for (int n = 0; n < 9; ++n) {
        const Complex hh = h.coords[0](l) * h.coords[1](m) * h.coords[2](n);
        const Complex gg = g.coords[0](l) * g.coords[1](m) * g.coords[2](n);
        Row re{}, im{};
        for (int k = 0; k < 9; ++k) {
          const Complex v = hh * t.conj[l][k] * t.conj[m][k] * t.conj[n][k];
          re[k] = v.real();
          im[k] = v.imag();
        }
        s.rows.push_back(re);
        s.rhs.push_back(gg.real());
        s.rows.push_back(im);
        s.rhs.push_back(gg.imag());
      }
    }
  }
  Row ones;
  ones.fill(1.0);
  s.rows.push_back(ones);
  s.rhs.push_back(1.0);
  return s;
}

// Frobenius residual on the operators (coordinates carry a factor sqrt 27).
double residual(const System& s, const Row& p) {
  double sum = 0.0;
  for (size_t r = 0; r + 1 < s.rows.size(); ++r) {
    double v = -s.rhs[r];
    for (int k = 0; k < kUnknowns; ++k) v += s.rows[r][k] * p[k];
    sum += v * v;
  }
  double total = 0.0;
  for (double x : p) total += x;
  return std::sqrt(27.0 * sum) + std::abs(total - 1.0);
}

// Gaussian elimination with partial pivoting; false if singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
  if (scale == 0.0) return false;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) <= 1e-13 * scale) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double v = b[r];
    for (int j = r + 1; j < n; ++j) v -= a[r][j] * x[j];
    x[r] = v / a[r][r];
  }
  return true;
}

// Euclidean projection onto the probability simplex.
Row project_simplex(const Row& v) {
  Row u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (int j = 0; j < kUnknowns; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / (j + 1);
    if (u[j] - t > 0) theta = t;
  }
  Row out;
  for (int k = 0; k < kUnknowns; ++k) out[k] = std::max(v[k] - theta, 0.0);
  return out;
}

}  // namespace

const char* to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::kFeasible: return "feasible";
    case OracleOutcome::kInfeasible: return "infeasible";
    case OracleOutcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

OracleVerdict brute_force_sep(const GramTriple& g, const GramTriple& h, const OracleBudget& budget) {
  const System sys = build_system(g, h);
  OracleVerdict out;

  // Normal matrix and right-hand side, shared by both methods.
  double q[kUnknowns][kUnknowns] = {};
  double qb[kUnknowns] = {};
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    for (int i = 0; i < kUnknowns; ++i) {
      qb[i] += sys.rows[r][i] * sys.rhs[r];
      for (int j = 0; j < kUnknowns; ++j) q[i][j] += sys.rows[r][i] * sys.rows[r][j];
    }
  }

  // Every vertex of the feasible polytope is the unique least-squares
  // solution on its support, so scanning all supports is exhaustive.
  out.enumeration_residual = std::numeric_limits<double>::infinity();
  Row best_basis{};
  for (unsigned mask = 1; mask < (1u << kUnknowns); ++mask) {
    std::vector<int> cols;
    for (int k = 0; k < kUnknowns; ++k) {
      if (mask & (1u << k)) cols.push_back(k);
    }
    const size_t n = cols.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<double> b(n), x;
    for (size_t i = 0; i < n; ++i) {
      b[i] = qb[cols[i]];
      for (size_t j = 0; j < n; ++j) a[i][j] = q[cols[i]][cols[j]];
    }
    if (!solve_dense(a, b, x)) continue;
    ++out.bases_solved;
    if (*std::min_element(x.begin(), x.end()) < -kNonnegTol) continue;
    Row p{};
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) total += std::max(x[i], 0.0);
    if (!(total > 0.0)) continue;
    for (size_t i = 0; i < n; ++i) p[cols[i]] = std::max(x[i], 0.0) / total;
    const double res = residual(sys, p);
    if (res < out.enumeration_residual) {
      out.enumeration_residual = res;
      best_basis = p;
    }
  }

  // Accelerated projected gradient on ||A p - b||^2 over the simplex. The
  // step comes from the curvature along the simplex (sum-zero directions):
  // the all-ones direction is stiff but the constraint already fixes it.
  double lip = 0.0;
  {
    Row v;
    for (int i = 0; i < kUnknowns; ++i) v[i] = (i % 2 == 0 ? 1.0 : -1.0) + 0.1 * i;
    for (int it = 0; it < 500; ++it) {
      double mean = 0.0;
      for (double x : v) mean += x / kUnknowns;
      for (double& x : v) x -= mean;
      Row w{};
      mean = 0.0;
      for (int i = 0; i < kUnknowns; ++i) {
        for (int j = 0; j < kUnknowns; ++j) w[i] += q[i][j] * v[j];
        mean += w[i] / kUnknowns;
      }
      double nrm = 0.0;
      for (int i = 0; i < kUnknowns; ++i) {
        w[i] -= mean;
        nrm += w[i] * w[i];
      }
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) break;
      lip = nrm;
      for (int i = 0; i < kUnknowns; ++i) v[i] = w[i] / nrm;
    }
  }
  const double step = lip > 0.0 ? 1.0 / lip : 1.0;
  std::mt19937_64 rng(budget.rng_seed);
  std::exponential_distribution<double> expo(1.0);
  out.gradient_residual = std::numeric_limits<double>::infinity();
  Row best_gradient{};
  for (int s = 0; s < budget.starts; ++s) {
    Row x;
    double total = 0.0;
    for (double& v : x) total += (v = expo(rng));
    for (double& v : x) v /= total;
    Row y = x;
    double t = 1.0;
    for (int it = 0; it < budget.iterations; ++it) {
      Row grad{};
      for (int i = 0; i < kUnknowns; ++i) {
        grad[i] = -qb[i];
        for (int j = 0; j < kUnknowns; ++j) grad[i] += q[i][j] * y[j];
      }
      Row z;
      for (int i = 0; i < kUnknowns; ++i) z[i] = y[i] - step * grad[i];
      const Row xn = project_simplex(z);
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      double moved = 0.0;
      for (int i = 0; i < kUnknowns; ++i) {
        y[i] = xn[i] + (t - 1.0) / tn * (xn[i] - x[i]);
        moved = std::max(moved, std::abs(xn[i] - x[i]));
      }
      x = xn;
      t = tn;
      if (moved < 1e-16) break;
    }
    ++out.sample_count;
    const double res = residual(sys, x);
    if (res < out.gradient_residual) {
      out.gradient_residual = res;
      best_gradient = x;
    }
  }

  const bool basis_feasible = out.enumeration_residual <= kFeasibleTol;
  const bool gradient_feasible = out.gradient_residual <= kFeasibleTol;
  const bool gradient_close = out.gradient_residual <= kGradientAgreeTol;
  if (basis_feasible && (gradient_close || budget.starts == 0)) {
    out.outcome = OracleOutcome::kFeasible;
  } else if (!basis_feasible && !gradient_feasible) {
    out.outcome = OracleOutcome::kInfeasible;
  }
  out.feasible = out.outcome == OracleOutcome::kFeasible;
  const bool use_basis = out.enumeration_residual <= out.gradient_residual;
  out.best_residual = use_basis ? out.enumeration_residual : out.gradient_residual;
  if (out.feasible) {
    const Row& w = basis_feasible ? best_basis : best_gradient;
    out.witness = Eigen::Map<const ProbabilityVector>(w.data());
  }
  return out;
}

namespace {

Mat3 balance_phase(const Mat3& m) { return projective_normalize(m); }

struct Triple {
  Mat3 a, b, c;
};

Eigen::Matrix<Complex, 27, 1> symmetry_defect(const Triple& x, const Ket27& psi) {
  return (apply3(x.a, x.b, x.c, psi) - psi) / psi.norm();
}

// Equalizes the Frobenius norms without changing the product a (x) b (x) c.
void rebalance(Triple& x) {
  const double na = x.a.norm(), nb = x.b.norm(), nc = x.c.norm();
  const double g = std::cbrt(na * nb * nc);
  x.a *= g / na;
  x.b *= g / nb;
  x.c *= g / nc;
}

bool same_projective(const Mat3& x, const Mat3& y) { return (x - y).norm() <= 1e-6; }

}  // namespace

LocalSymmetry refine_symmetry(const SeedParams& seed, const Mat3& a0, const Mat3& b0, const Mat3& c0,
                              int iterations) {
  const Ket27 psi = build_seed(seed);
  Triple x{a0, b0, c0};
  rebalance(x);
  Eigen::Matrix<Complex, 27, 1> f = symmetry_defect(x, psi);
  double cost = f.norm();
  double mu = 1e-3;
  for (int it = 0; it < iterations && cost > 1e-14; ++it) {
    Eigen::Matrix<Complex, 27, 27> jac;
    for (int e = 0; e < 9; ++e) {
      Mat3 unit = Mat3::Zero();
      unit(e / 3, e % 3) = 1.0;
      jac.col(e) = apply3(unit, x.b, x.c, psi) / psi.norm();
      jac.col(9 + e) = apply3(x.a, unit, x.c, psi) / psi.norm();
      jac.col(18 + e) = apply3(x.a, x.b, unit, psi) / psi.norm();
    }
    const Eigen::Matrix<Complex, 27, 27> jtj = jac.adjoint() * jac;
    const Eigen::Matrix<Complex, 27, 1> jtf = jac.adjoint() * f;
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::Matrix<Complex, 27, 27> damped = jtj;
      damped.diagonal().array() += mu * (1.0 + jtj.diagonal().real().maxCoeff());
      const Eigen::Matrix<Complex, 27, 1> d = -damped.ldlt().solve(jtf);
      Triple trial = x;
      for (int e = 0; e < 9; ++e) {
        trial.a(e / 3, e % 3) += d(e);
        trial.b(e / 3, e % 3) += d(9 + e);
        trial.c(e / 3, e % 3) += d(18 + e);
      }
      rebalance(trial);
      const Eigen::Matrix<Complex, 27, 1> ft = symmetry_defect(trial, psi);
      if (ft.norm() < cost) {
        x = trial;
        f = ft;
        cost = ft.norm();
        mu = std::max(mu / 3.0, 1e-15);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;
  }
  LocalSymmetry out;
  out.a = balance_phase(x.a);
  out.b = balance_phase(x.b);
  out.c = balance_phase(x.c);
  out.residual = cost;
  const auto ka = match_pauli(out.a, 1e-6), kb = match_pauli(out.b, 1e-6), kc = match_pauli(out.c, 1e-6);
  if (ka && kb && kc && *ka == *kb && *kb == *kc) out.pauli = ka;
  return out;
}

SymmetrySearchReport numeric_symmetry_search(const SeedParams& seed, const SymmetryBudget& budget) {
  std::mt19937_64 rng(budget.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&] {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Complex(gauss(rng), gauss(rng));
    return m;
  };
  SymmetrySearchReport rep;
  for (int s = 0; s < budget.starts; ++s) {
    const LocalSymmetry found =
        refine_symmetry(seed, random_matrix(), random_matrix(), random_matrix(), budget.iterations);
    if (!(found.residual <= 1e-10)) {
      ++rep.failed;
      continue;
    }
    ++rep.converged;
    bool merged = false;
    for (LocalSymmetry& c : rep.clusters) {
      if (same_projective(c.a, found.a) && same_projective(c.b, found.b) && same_projective(c.c, found.c)) {
        ++c.hits;
        merged = true;
        break;
      }
    }
    if (!merged) rep.clusters.push_back(found);
  }
  int pauli_clusters = 0;
  std::array<bool, 9> hit{};
  for (const LocalSymmetry& c : rep.clusters) {
    if (c.pauli && !hit[c.pauli->position()]) {
      hit[c.pauli->position()] = true;
      ++pauli_clusters;
    }
  }
  rep.matches_pauli_group = pauli_clusters == 9 && rep.clusters.size() == 9;
  return rep;
}

}  // namespace qmes
