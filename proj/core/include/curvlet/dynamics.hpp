#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "curvlet/edge_drop.hpp"
#include "curvlet/framelet.hpp"
#include "curvlet/graph.hpp"
#include "curvlet/reweight.hpp"

namespace curvlet {

// Tr(H^T L H); equals the weighted-difference sum over edges of the
// normalized features. Shapes must conform.
double dirichlet_energy(const Eigen::MatrixXd& laplacian, const Eigen::MatrixXd& h);

enum class Nonlinearity { identity, relu };
enum class StepMode { spectral, spatial };

struct PropagationConfig {
  std::vector<double> band_gains;   // theta per band in system band order; empty = all 1
  Eigen::MatrixXd mixer;            // symmetric channel mixer; empty = identity
  double step_size = 1.0;           // tau, applied once per step
  int steps = 100;
  StepMode mode = StepMode::spectral;
  Nonlinearity nonlinearity = Nonlinearity::identity;
};

// Gain vector with 1 on the lowpass band and highpass_gain on every highpass band.
std::vector<double> uniform_gains(const FrameletSystem& system, double highpass_gain);

// One update H' = sigma( sum_band theta_band W_band^T W_band H M ).
Eigen::MatrixXd spectral_step(const FrameletSystem& system, const PropagationConfig& cfg,
                              const Eigen::MatrixXd& h);

// One update H' = sum_band W_band^T sigma( A_hat W_band H M ).
Eigen::MatrixXd spatial_step(const FrameletSystem& system, const Eigen::MatrixXd& normalized_adjacency,
                             const PropagationConfig& cfg, const Eigen::MatrixXd& h);

// Eigen-expansion of the linear single-level spectral iteration: after k
// steps, H(k) = tau^k U diag(s^k) U^T H0 Phi diag(mu^k) Phi^T with
// s_i = cos^2(lambda_i / 2^(m+1)) + theta sin^2(lambda_i / 2^(m+1)) and
// (mu, Phi) the mixer eigensystem. Identity nonlinearity, single level only.
Eigen::MatrixXd closed_form_propagation(const SpectralDecomposition& laplacian_decomp,
                                        const SpectralDecomposition& mixer_decomp,
                                        double highpass_gain, const Eigen::MatrixXd& h0, int steps,
                                        double step_size = 1.0, int coarse_scale = 2);

enum class Regime { lfd, hfd, undetermined };

struct EnergyTrace {
  // Per step (steps + 1 values): half of the Dirichlet energy of H/||H||_F,
  // the per-edge convention whose sharpening limit is rho / 2.
  std::vector<double> energy;
  Regime regime = Regime::undetermined;
  double rho = 0.0;  // spectral radius used for the HFD target
};

// Iterates the configured step with per-step renormalization of H (the traced
// quantity is scale-invariant, so this only guards the floating-point range).
// Regime call: over the last max(1, ceil(steps / 10)) recorded values, all
// below 0.01 is LFD; all within 1% (relative) of rho/2 is HFD.
EnergyTrace propagate(const FrameletSystem& system, const PropagationConfig& cfg,
                      const Eigen::MatrixXd& h0);

// Seeded standard-normal n x columns matrix, redrawn until its projections on
// both extreme eigenspaces (lowest and highest eigenvalue) are at least 1e-6.
Eigen::MatrixXd generic_initial_features(const SpectralDecomposition& decomp, int columns,
                                         std::uint64_t seed);

enum class Variant { plain, hom, het, het_cbed };

struct ExperimentConfig {
  CurvatureConfig curvature;
  CbedConfig cbed;              // used by het_cbed; its curvature config is taken from `curvature`
  double theta_smooth = 0.3;    // highpass gain for plain / hom
  double theta_sharp = 2.5;     // highpass gain for het / het_cbed
  int steps = 4;
  int levels = 1;
  int coarse_scale = 0;
};

// Desk-scale label propagation: one-hot train labels as H0, `steps` linear
// spectral steps under the variant's Laplacian (plain, or the hom/het
// curvature-enhanced one, with edge dropping first for het_cbed), argmax
// prediction (ties to the smallest class), accuracy over non-train nodes.
double label_propagation_experiment(const Graph& g, const LabeledPartition& partition,
                                    Variant variant, const ExperimentConfig& cfg = {});

}  // namespace curvlet
