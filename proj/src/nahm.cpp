#include "nk/nahm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nk/error.hpp"
#include "nk/moduli.hpp"
#include "nk/random.hpp"

namespace nk {

namespace {

using Quad = std::array<Matrix, 4>;

Quad zeros_like(const Quad& a) {
  Quad out;
  for (int i = 0; i < 4; ++i) out[i] = Matrix::Zero(a[i].rows(), a[i].cols());
  return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kBStar[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                              -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

Checkpoint make_checkpoint(const NahmState& s) { return {s, nahm_rhs(s)}; }

void sort_eigenvalues(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

std::vector<Complex> scaled_beta_eigenvalues(const NahmState& s, double exponent) {
  Matrix b = beta_of(s) * std::pow(s.t, exponent);
  Eigen::ComplexEigenSolver<Matrix> solver(b, false);
  std::vector<Complex> v(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  sort_eigenvalues(v);
  return v;
}

}  // namespace

void NahmState::validate(double tol) const {
  if (!(t > 0.0 && t < 2.0)) {
    std::ostringstream os;
    os << "t = " << t;
    throw Error(ErrorCode::kInvalidArgument, "Nahm time outside (0, 2)", os.str());
  }
  const auto k = T[1].rows();
  for (int i = 0; i < 4; ++i) {
    if (T[i].rows() != k || T[i].cols() != k)
      throw Error(ErrorCode::kInvalidArgument, "Nahm matrices must share a square shape");
    if (!(anti_hermitian_defect(T[i]) <= tol)) {
      std::ostringstream os;
      os << "T" << i << " defect " << anti_hermitian_defect(T[i]);
      throw Error(ErrorCode::kInvalidArgument, "Nahm matrix is not anti-Hermitian", os.str());
    }
  }
}

NahmDerivative nahm_rhs(const NahmState& s) {
  const auto& T = s.T;
  NahmDerivative d;
  d[0] = Matrix::Zero(T[0].rows(), T[0].cols());
  d[1] = commutator(T[2], T[3]) + commutator(T[1], T[0]);
  d[2] = commutator(T[3], T[1]) + commutator(T[2], T[0]);
  d[3] = commutator(T[1], T[2]) + commutator(T[3], T[0]);
  return d;
}

NahmState pole_model_state(int k, double t) {
  const auto a = principal_residues(k).normalized();
  NahmState s;
  s.t = t;
  s.T[0] = Matrix::Zero(k, k);
  for (int i = 0; i < 3; ++i) s.T[i + 1] = -a[static_cast<std::size_t>(i)] / t;
  return s;
}

Matrix random_anti_hermitian(int k, double magnitude, bool sigma_fixed, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) x(i, j) = rng.uniform_box(magnitude);
  Matrix a = anti_hermitian_part(x);
  a -= (a.trace() / static_cast<double>(k)) * Matrix::Identity(k, k);
  if (sigma_fixed) a = (a + sigma(a)) * 0.5;
  return a;
}

Matrix beta_of(const NahmState& s) { return s.T[2] + Complex{0.0, 1.0} * s.T[3]; }

double sigma_residual(const NahmState& s) {
  double r = 0.0;
  for (const auto& m : s.T) r = std::max(r, max_abs(m - sigma(m)));
  return r;
}

double beta_spectrum_drift(const Trajectory& traj, double scaling_exponent) {
  if (traj.empty()) return 0.0;
  const auto reference = scaled_beta_eigenvalues(traj.front().state, scaling_exponent);
  double drift = 0.0;
  for (const auto& cp : traj) {
    auto current = scaled_beta_eigenvalues(cp.state, scaling_exponent);
    std::vector<bool> used(current.size(), false);
    for (const auto& ev : reference) {
      std::size_t best = 0;
      double best_dist = INFINITY;
      for (std::size_t j = 0; j < current.size(); ++j) {
        if (used[j]) continue;
        double d = std::abs(current[j] - ev);
        if (d < best_dist) {
          best_dist = d;
          best = j;
        }
      }
      used[best] = true;
      drift = std::max(drift, best_dist);
    }
  }
  return drift;
}

double beta_charpoly_drift(const Trajectory& traj, double scaling_exponent) {
  if (traj.empty()) return 0.0;
  auto charpoly = [&](const NahmState& s) {
    return faddeev_leverrier(beta_of(s) * std::pow(s.t, scaling_exponent)).characteristic;
  };
  const Poly reference = charpoly(traj.front().state);
  double drift = 0.0;
  for (const auto& cp : traj) drift = std::max(drift, distance(charpoly(cp.state), reference));
  return drift;
}

FlowReport integrate(const NahmState& initial, double t_end, const FlowControls& controls) {
  initial.validate();
  if (!(t_end > 0.0 && t_end < 2.0)) {
    std::ostringstream os;
    os << "t_end = " << t_end;
    throw Error(ErrorCode::kInvalidArgument, "integration target outside (0, 2)", os.str());
  }
  FlowReport report;
  report.normalization =
      "dT_i/dt = [T_j,T_k] + [T_i,T_0]; pole model T_i = -A_i/t with (A_1,A_2,A_3) = (R1/2,R2,R3)";
  StepStatistics& stats = report.stats;
  stats.min_step = INFINITY;

  NahmState state = initial;
  report.trajectory.push_back(make_checkpoint(state));
  report.sigma_residuals.push_back(sigma_residual(state));
  const double direction = t_end >= initial.t ? 1.0 : -1.0;
  double h = std::min(controls.initial_step, std::abs(t_end - initial.t));

  std::array<Quad, 7> stages;
  while (direction * (t_end - state.t) > 0.0) {
    if (stats.accepted + stats.rejected >= controls.max_steps) {
      std::ostringstream os;
      os << "t = " << state.t;
      throw Error(ErrorCode::kStepUnderflow, "step budget exhausted", os.str());
    }
    const double remaining = std::abs(t_end - state.t);
    const bool last = h >= remaining;
    const double step = last ? remaining : h;

    for (int s = 0; s < 7; ++s) {
      NahmState probe;
      probe.t = state.t + direction * kC[s] * step;
      probe.T = state.T;
      for (int j = 0; j < s; ++j)
        if (kA[s][j] != 0.0)
          for (int i = 0; i < 4; ++i) probe.T[i] += (direction * step * kA[s][j]) * stages[j][i];
      stages[s] = nahm_rhs(probe);
      ++stats.rhs_evaluations;
    }
    Quad next = state.T;
    Quad err = zeros_like(state.T);
    for (int s = 0; s < 7; ++s)
      for (int i = 0; i < 4; ++i) {
        if (kB[s] != 0.0) next[i] += (direction * step * kB[s]) * stages[s][i];
        if (kB[s] != kBStar[s]) err[i] += (direction * step * (kB[s] - kBStar[s])) * stages[s][i];
      }

    double err_norm = 0.0;
    bool finite = true;
    for (int i = 0; i < 4; ++i)
      for (Eigen::Index e = 0; e < next[i].size(); ++e) {
        const double y = std::max(std::abs(state.T[i](e)), std::abs(next[i](e)));
        const double ratio = std::abs(err[i](e)) / (controls.atol + controls.rtol * y);
        if (!std::isfinite(ratio)) finite = false;
        err_norm = std::max(err_norm, ratio);
      }

    if (finite && err_norm <= 1.0) {
      state.t = last ? t_end : state.t + direction * step;
      for (int i = 0; i < 4; ++i) {
        report.max_anti_hermitian_drift =
            std::max(report.max_anti_hermitian_drift, anti_hermitian_defect(next[i]));
        state.T[i] = controls.project ? anti_hermitian_part(next[i]) : next[i];
      }
      ++stats.accepted;
      stats.min_step = std::min(stats.min_step, step);
      stats.max_step = std::max(stats.max_step, step);
      report.trajectory.push_back(make_checkpoint(state));
      report.sigma_residuals.push_back(sigma_residual(state));
    } else {
      ++stats.rejected;
    }
    const double factor =
        (!finite) ? 0.2 : (err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0));
    h = step * factor;
    if (h < controls.min_step) {
      std::ostringstream os;
      os << "t = " << state.t << ", h = " << h;
      throw Error(ErrorCode::kStepUnderflow, "step size underflow", os.str());
    }
  }
  if (stats.accepted == 0) stats.min_step = 0.0;
  report.final_state = state;
  report.beta_spectrum_drift = beta_spectrum_drift(report.trajectory, controls.beta_scaling_exponent);
  report.beta_charpoly_drift = beta_charpoly_drift(report.trajectory, controls.beta_scaling_exponent);
  return report;
}

double nahm_residual(const Trajectory& traj) {
  double r = 0.0;
  for (const auto& cp : traj) {
    const auto rhs = nahm_rhs(cp.state);
    for (int i = 1; i < 4; ++i) r = std::max(r, max_abs(cp.derivative[i] - rhs[i]));
  }
  return r;
}

double collocation_defect(const Trajectory& traj) {
  double r = 0.0;
  for (std::size_t s = 1; s < traj.size(); ++s) {
    const auto& a = traj[s - 1];
    const auto& b = traj[s];
    const double h = b.state.t - a.state.t;
    if (h == 0.0) continue;
    NahmState mid;
    mid.t = 0.5 * (a.state.t + b.state.t);
    Quad slope;
    for (int i = 0; i < 4; ++i) {
      mid.T[i] = (a.state.T[i] + b.state.T[i]) * 0.5 + (a.derivative[i] - b.derivative[i]) * (h / 8.0);
      slope[i] = (b.state.T[i] - a.state.T[i]) * (1.5 / h) - (a.derivative[i] + b.derivative[i]) * 0.25;
    }
    const auto rhs = nahm_rhs(mid);
    for (int i = 1; i < 4; ++i) r = std::max(r, max_abs(slope[i] - rhs[i]));
  }
  return r;
}

Matrix LieInvolution::operator()(const Matrix& a) const {
  switch (kind_) {
    case Kind::kIdentity: return a;
    case Kind::kSigma: return nk::sigma(a);
    case Kind::kConjugation: return h_ * a * h_.adjoint();
  }
  return a;
}

std::string to_string(PairCase c) {
  switch (c) {
    case PairCase::kI: return "i";
    case PairCase::kII: return "ii";
    case PairCase::kIII: return "iii";
  }
  return "?";
}

std::vector<SymmetricPairSpec> symmetric_pair_table(int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "symmetric_pair_table needs k >= 2");
  const int n = k / 2;
  const std::string ns = std::to_string(n);
  const std::string n1 = std::to_string(n + 1);
  const int dim_g = n * (2 * n + 1);
  std::vector<SymmetricPairSpec> out;
  if (k % 2 == 0) {
    // Conjugation by diag(i, ..., i, -i, ..., -i) preserves the symplectic
    // form J; its centraliser is U(n).
    Matrix h = Matrix::Zero(k, k);
    for (int j = 0; j < k; ++j) h(j, j) = j < n ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
    out.push_back({k, n, PairCase::kI, "Sp(" + ns + ")", "U(" + ns + ")", dim_g, n * n, h});
  } else {
    // J itself is a symmetric orthogonal matrix in SO(2n+1) with
    // eigenvalue multiplicities n and n+1.
    const Matrix h = form_matrix_J(k);
    const int dim_k = n * (n - 1) / 2 + n * (n + 1) / 2;
    out.push_back({k, n, PairCase::kII, "SO(" + std::to_string(k) + ")",
                   "S(O(" + ns + ")xO(" + n1 + "))", dim_g, dim_k, h});
    out.push_back({k, n, PairCase::kIII, "Spin(" + std::to_string(k) + ")",
                   "(Spin(" + ns + ")xSpin(" + n1 + "))/Z2", dim_g, dim_k, h});
  }
  return out;
}

ExtendedTrajectory extend_by_involution(const Trajectory& forward, const LieInvolution& tau,
                                        double tol) {
  if (forward.empty())
    throw Error(ErrorCode::kInvalidArgument, "cannot extend an empty trajectory");
  const NahmState& end = forward.back().state;
  if (std::abs(end.t - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "last checkpoint at t = " << end.t;
    throw Error(ErrorCode::kContinuityMismatch, "trajectory must end at t = 1", os.str());
  }
  for (std::size_t s = 1; s < forward.size(); ++s)
    if (!(forward[s].state.t > forward[s - 1].state.t))
      throw Error(ErrorCode::kInvalidArgument, "trajectory times must increase");

  ExtendedTrajectory out;
  out.continuity_defect = max_abs(end.T[0]);
  for (int i = 1; i < 4; ++i)
    out.continuity_defect = std::max(out.continuity_defect, max_abs(end.T[i] + tau(end.T[i])));
  if (!(out.continuity_defect <= tol)) {
    std::ostringstream os;
    os << "max(||T0(1)||, ||T_i(1) + tau(T_i(1))||) = " << out.continuity_defect;
    throw Error(ErrorCode::kContinuityMismatch, "data at t = 1 is not tau-compatible", os.str());
  }

  Trajectory mirrored;
  for (std::size_t s = forward.size() - 1; s-- > 0;) {
    const auto& cp = forward[s];
    Checkpoint m;
    m.state.t = 2.0 - cp.state.t;
    for (int i = 0; i < 4; ++i) {
      m.state.T[i] = -tau(cp.state.T[i]);
      // d/ds of -tau(T(2 - s)).
      m.derivative[i] = tau(cp.derivative[i]);
    }
    mirrored.push_back(std::move(m));
  }

  out.forward_residual = nahm_residual(forward);
  out.forward_defect = collocation_defect(forward);
  Trajectory mirrored_with_join;
  mirrored_with_join.push_back(forward.back());
  mirrored_with_join.insert(mirrored_with_join.end(), mirrored.begin(), mirrored.end());
  out.mirrored_residual = nahm_residual(mirrored_with_join);
  out.mirrored_defect = collocation_defect(mirrored_with_join);

  out.trajectory = forward;
  out.trajectory.insert(out.trajectory.end(), mirrored.begin(), mirrored.end());
  return out;
}

}  // namespace nk
