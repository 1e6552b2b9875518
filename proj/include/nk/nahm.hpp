#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nk/liealg.hpp"

namespace nk {

// T[0] is the gauge field, T[1..3] the Higgs components. All anti-Hermitian.
struct NahmState {
  double t = 0.0;
  std::array<Matrix, 4> T;

  int k() const { return static_cast<int>(T[1].rows()); }
  // Throws kInvalidArgument unless every T_i is k x k anti-Hermitian to tol
  // and t lies in (0, 2).
  void validate(double tol = 1e-10) const;
};

using NahmDerivative = std::array<Matrix, 4>;

// dT_i/dt = [T_j, T_k] + [T_i, T_0] for (i, j, k) cyclic in (1, 2, 3), and
// dT_0/dt = 0: the gauge field is held fixed along the flow.
NahmDerivative nahm_rhs(const NahmState& s);

// T_0 = 0, T_i = -A_i / t with (A_1, A_2, A_3) = (R1/2, R2, R3).
NahmState pole_model_state(int k, double t);

// Random traceless anti-Hermitian matrix with entries of size ~magnitude,
// optionally projected onto the sigma-fixed subalgebra.
Matrix random_anti_hermitian(int k, double magnitude, bool sigma_fixed, std::uint64_t seed);

struct Checkpoint {
  NahmState state;
  NahmDerivative derivative;
};
using Trajectory = std::vector<Checkpoint>;

struct FlowControls {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  int max_steps = 200000;
  // Replace each T_i by its anti-Hermitian part after every accepted step.
  bool project = true;
  // beta is compared as t^exponent * beta; 1 for pole-model data.
  double beta_scaling_exponent = 0.0;
};

struct StepStatistics {
  int accepted = 0;
  int rejected = 0;
  int rhs_evaluations = 0;
  double min_step = 0.0;
  double max_step = 0.0;
};

struct FlowReport {
  NahmState final_state;
  Trajectory trajectory;
  // Largest ||T + T^dagger|| seen before projection.
  double max_anti_hermitian_drift = 0.0;
  double beta_spectrum_drift = 0.0;
  // Coefficient drift of det(z - t^e beta); well conditioned even when beta
  // is nilpotent.
  double beta_charpoly_drift = 0.0;
  // max_i ||T_i - sigma(T_i)|| at each checkpoint.
  std::vector<double> sigma_residuals;
  StepStatistics stats;
  std::string normalization;
};

// Adaptive Dormand-Prince 5(4) in either time direction. Throws
// kStepUnderflow (with the time reached) if the step size collapses.
FlowReport integrate(const NahmState& initial, double t_end, const FlowControls& controls = {});

// beta = T2 + i T3.
Matrix beta_of(const NahmState& s);
// Max displacement of the eigenvalues of t^e beta relative to the first
// checkpoint, eigenvalues matched greedily by nearest neighbour.
double beta_spectrum_drift(const Trajectory& traj, double scaling_exponent = 0.0);
double beta_charpoly_drift(const Trajectory& traj, double scaling_exponent = 0.0);
double sigma_residual(const NahmState& s);

// Max over checkpoints of ||recorded derivative - nahm_rhs(state)|| for the
// Higgs components.
double nahm_residual(const Trajectory& traj);
// Max over steps of the Nahm defect of the cubic Hermite interpolant at the
// step midpoint.
double collocation_defect(const Trajectory& traj);

// A Lie-algebra involution tau: identity, sigma, or conjugation by a unitary
// element h with h^2 central.
class LieInvolution {
 public:
  enum class Kind { kIdentity, kSigma, kConjugation };

  static LieInvolution identity() { return LieInvolution(Kind::kIdentity, {}); }
  static LieInvolution sigma() { return LieInvolution(Kind::kSigma, {}); }
  static LieInvolution conjugation(Matrix h) { return LieInvolution(Kind::kConjugation, std::move(h)); }

  Matrix operator()(const Matrix& a) const;
  Kind kind() const { return kind_; }
  const Matrix& element() const { return h_; }

 private:
  LieInvolution(Kind kind, Matrix h) : kind_(kind), h_(std::move(h)) {}
  Kind kind_;
  Matrix h_;
};

enum class PairCase { kI, kII, kIII };

struct SymmetricPairSpec {
  int k = 0;
  int n = 0;
  PairCase tag = PairCase::kI;
  std::string group;
  std::string subgroup;
  int dim_group = 0;
  int dim_subgroup = 0;
  // h in G whose conjugation action has fixed subgroup K.
  Matrix involution_element;

  // Real dimension of the quotient of W (real dim 2 dim G + 2n) by K.
  int quotient_dimension() const { return 2 * dim_group + 2 * n - 4 * dim_subgroup; }
  int nk_dimension() const { return 4 * n; }
  LieInvolution involution() const { return LieInvolution::conjugation(involution_element); }
};

std::string to_string(PairCase c);
std::vector<SymmetricPairSpec> symmetric_pair_table(int k);

struct ExtendedTrajectory {
  Trajectory trajectory;
  double forward_residual = 0.0;
  double mirrored_residual = 0.0;
  double forward_defect = 0.0;
  double mirrored_defect = 0.0;
  double continuity_defect = 0.0;
};

// Extends a trajectory on [t0, 1] to [t0, 2 - t0] by T_i(2 - t) = -tau(T_i(t)).
// The last checkpoint must sit at t = 1 with T_0(1) = 0 and
// T_i(1) = -tau(T_i(1)) to tol; otherwise throws kContinuityMismatch.
ExtendedTrajectory extend_by_involution(const Trajectory& forward, const LieInvolution& tau,
                                        double tol = 1e-8);

}  // namespace nk
