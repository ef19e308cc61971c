#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "curvlet/graph.hpp"

namespace curvlet {

// Filter symbols on [0, pi]. Builders do not validate banks (deliberate, so
// diagnostic banks like a constant lowpass can exercise the machinery); call
// validate() to enforce the tight-frame conditions.
struct FilterBank {
  std::function<double(double)> lowpass;                  // a^(xi)
  std::vector<std::function<double(double)>> highpass;    // b^(r)(xi), r = 1..L

  // Requires lowpass(0) = 1 and the partition of unity
  // lowpass(xi)^2 + sum_r highpass_r(xi)^2 = 1 within 1e-12 on a 1001-point
  // grid of [0, pi]. Throws std::invalid_argument on violation.
  void validate() const;
};

// The single-highpass pair a^(xi) = cos(xi/2), b^(xi) = sin(xi/2).
FilterBank haar_filter_bank();

// Smallest coarse scale m >= 0 with rho_bound / 2^(m+1) <= pi/2. The library
// default m = 2 matches the standard dilation chain; use this helper to pick
// the most aggressive scale a spectrum allows.
int min_scale_coarseness(double rho_bound);

// Band identifiers: r = 0 is the single lowpass band at scale j = levels;
// r in 1..L are highpass bands at scales j = 1..levels.
struct BandId {
  int r;
  int j;
};

enum class FrameletConstruction { exact, chebyshev };

// Tight framelet system over a Laplacian spectrum. With evaluation points
// xi_j = lambda / 2^(m + j - 1) for scales j = 1..J, the bands are
//   lowpass:      prod_{k=1..J} a^(xi_k)
//   highpass r,j: b^(r)(xi_j) * prod_{k<j} a^(xi_k)
// which telescopes to sum_band W^T W = I for any bank satisfying the
// partition of unity. With the Haar pair at J = 1 and the default m = 2 the
// band symbols are cos(lambda/8) and sin(lambda/8).
class FrameletSystem {
public:
  // Exact construction from a spectral decomposition of the Laplacian.
  // Eigenvalues must be >= -1e-9; if the largest evaluation point
  // lambda_max / 2^m exceeds pi the symbols leave their domain and the
  // build fails, directing the caller to increase coarse_scale.
  static FrameletSystem build_exact(const SpectralDecomposition& decomp, const FilterBank& bank,
                                    int levels, int coarse_scale = 2);

  // Chebyshev construction: every factor of every band is interpolated by a
  // degree-`degree` Chebyshev polynomial on [0, rho_bound] and applied to the
  // Laplacian via the three-term recurrence, so no eigendecomposition and no
  // dense band matrices are required.
  static FrameletSystem build_chebyshev(const Eigen::MatrixXd& laplacian, const FilterBank& bank,
                                        int levels, int degree, double rho_bound = 2.0,
                                        int coarse_scale = 2);

  int node_count() const { return n_; }
  int band_count() const { return static_cast<int>(band_ids_.size()); }
  const std::vector<BandId>& band_ids() const { return band_ids_; }
  int levels() const { return levels_; }
  int coarse_scale() const { return coarse_scale_; }
  FrameletConstruction construction() const { return construction_; }
  int chebyshev_degree() const { return degree_; }

  // W_band * H without materializing the band matrix. Band matrices are
  // symmetric (functions of a symmetric matrix), so this also serves as the
  // transposed application used in reconstruction.
  Eigen::MatrixXd apply_band(int band, const Eigen::MatrixXd& h) const;
  Eigen::MatrixXd band_matrix(int band) const;

  // Largest eigenvalue of the underlying Laplacian (exact construction) or
  // of the stored Laplacian via dense decomposition (Chebyshev construction).
  double spectral_radius() const;

  // The underlying Laplacian: stored (Chebyshev) or reassembled from the
  // decomposition (exact).
  Eigen::MatrixXd laplacian_matrix() const;

  // Dirichlet quadratic form Tr(H^T L H) of the underlying Laplacian.
  double laplacian_quadratic(const Eigen::MatrixXd& h) const;

private:
  FrameletSystem() = default;

  int n_ = 0;
  int levels_ = 0;
  int coarse_scale_ = 0;
  int degree_ = 0;
  FrameletConstruction construction_ = FrameletConstruction::exact;
  std::vector<BandId> band_ids_;

  // exact state
  SpectralDecomposition decomp_;
  std::vector<Eigen::VectorXd> band_filters_;  // per band, filter values at the eigenvalues

  // chebyshev state
  Eigen::MatrixXd laplacian_;
  double rho_bound_ = 2.0;
  // per band: ordered factor list, each factor a Chebyshev coefficient vector
  std::vector<std::vector<Eigen::VectorXd>> band_factor_coeffs_;
};

using FrameletCoefficients = std::vector<Eigen::MatrixXd>;

FrameletCoefficients framelet_decompose(const FrameletSystem& system, const Eigen::MatrixXd& h);
Eigen::MatrixXd framelet_reconstruct(const FrameletSystem& system, const FrameletCoefficients& coeffs);

// || sum_band W^T W - I || in the induced infinity norm (max abs row sum).
double tightness_residual(const FrameletSystem& system);

}  // namespace curvlet
