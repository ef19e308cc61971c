#include "curvlet/framelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvlet {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

void FilterBank::validate() const {
  if (!lowpass) throw std::invalid_argument("FilterBank: lowpass symbol missing");
  if (highpass.empty()) throw std::invalid_argument("FilterBank: need at least one highpass symbol");
  for (const auto& b : highpass)
    if (!b) throw std::invalid_argument("FilterBank: highpass symbol missing");
  if (std::abs(lowpass(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("FilterBank: lowpass(0) must be 1");
  for (int t = 0; t <= 1000; ++t) {
    const double xi = pi * t / 1000.0;
    double total = lowpass(xi) * lowpass(xi);
    for (const auto& b : highpass) total += b(xi) * b(xi);
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("FilterBank: partition of unity fails at xi = " + std::to_string(xi));
  }
}

FilterBank haar_filter_bank() {
  FilterBank bank;
  bank.lowpass = [](double xi) { return std::cos(xi / 2.0); };
  bank.highpass = {[](double xi) { return std::sin(xi / 2.0); }};
  return bank;
}

int min_scale_coarseness(double rho_bound) {
  if (!(rho_bound > 0.0)) throw std::invalid_argument("min_scale_coarseness: rho_bound must be positive");
  int m = 0;
  while (rho_bound / std::pow(2.0, m + 1) > pi / 2.0) ++m;
  return m;
}

namespace {

void check_build_params(const FilterBank& bank, int levels, int coarse_scale) {
  if (!bank.lowpass || bank.highpass.empty())
    throw std::invalid_argument("framelet build: filter bank is incomplete");
  if (levels < 1) throw std::invalid_argument("framelet build: levels must be >= 1");
  if (coarse_scale < 0) throw std::invalid_argument("framelet build: coarse_scale must be >= 0");
}

std::vector<BandId> make_band_ids(int highpass_count, int levels) {
  std::vector<BandId> ids{{0, levels}};
  for (int r = 1; r <= highpass_count; ++r)
    for (int j = 1; j <= levels; ++j) ids.push_back({r, j});
  return ids;
}

// Chebyshev interpolation coefficients of f on [0, rho]: evaluation uses
// c0/2 + sum_{p>=1} c_p T_p(2 lambda / rho - 1).
Eigen::VectorXd chebyshev_coefficients(const std::function<double(double)>& f, int degree, double rho) {
  const int points = degree + 1;
  Eigen::VectorXd values(points);
  for (int t = 0; t < points; ++t) {
    const double x = std::cos(pi * (t + 0.5) / points);
    values(t) = f(rho * (x + 1.0) / 2.0);
  }
  Eigen::VectorXd coeffs(points);
  for (int p = 0; p < points; ++p) {
    double sum = 0.0;
    for (int t = 0; t < points; ++t) sum += values(t) * std::cos(pi * p * (t + 0.5) / points);
    coeffs(p) = 2.0 * sum / points;
  }
  return coeffs;
}

Eigen::MatrixXd chebyshev_apply(const Eigen::VectorXd& coeffs, const Eigen::MatrixXd& laplacian,
                                double rho, const Eigen::MatrixXd& h) {
  // three-term recurrence in M = (2/rho) L - I, whose spectrum lies in [-1, 1]
  const auto apply_m = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
    return (2.0 / rho) * (laplacian * x) - x;
  };
  Eigen::MatrixXd t_prev = h;
  Eigen::MatrixXd acc = (coeffs(0) / 2.0) * t_prev;
  if (coeffs.size() == 1) return acc;
  Eigen::MatrixXd t_cur = apply_m(h);
  acc += coeffs(1) * t_cur;
  for (Eigen::Index p = 2; p < coeffs.size(); ++p) {
    Eigen::MatrixXd t_next = 2.0 * apply_m(t_cur) - t_prev;
    acc += coeffs(p) * t_next;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return acc;
}

}  // namespace

FrameletSystem FrameletSystem::build_exact(const SpectralDecomposition& decomp, const FilterBank& bank,
                                           int levels, int coarse_scale) {
  check_build_params(bank, levels, coarse_scale);
  const Eigen::Index n = decomp.eigenvalues.size();
  if (n == 0 || decomp.eigenvectors.rows() != n || decomp.eigenvectors.cols() != n)
    throw std::invalid_argument("build_exact: malformed spectral decomposition");
  if (decomp.eigenvalues.minCoeff() < -1e-9)
    throw std::invalid_argument("build_exact: negative eigenvalues; expected a PSD Laplacian");
  const double xi_max = decomp.eigenvalues.maxCoeff() / std::pow(2.0, coarse_scale);
  if (xi_max > pi + 1e-12)
    throw std::invalid_argument(
        "build_exact: largest evaluation point " + std::to_string(xi_max) +
        " exceeds pi, outside the filter domain; increase coarse_scale");

  FrameletSystem sys;
  sys.n_ = static_cast<int>(n);
  sys.levels_ = levels;
  sys.coarse_scale_ = coarse_scale;
  sys.construction_ = FrameletConstruction::exact;
  sys.band_ids_ = make_band_ids(static_cast<int>(bank.highpass.size()), levels);
  sys.decomp_ = decomp;

  const auto xi = [&](double lambda, int j) {
    return std::max(lambda, 0.0) / std::pow(2.0, coarse_scale + j - 1);
  };
  for (const BandId& id : sys.band_ids_) {
    Eigen::VectorXd filter(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lambda = decomp.eigenvalues(i);
      double value;
      if (id.r == 0) {
        value = 1.0;
        for (int k = 1; k <= levels; ++k) value *= bank.lowpass(xi(lambda, k));
      } else {
        value = bank.highpass[static_cast<std::size_t>(id.r - 1)](xi(lambda, id.j));
        for (int k = 1; k < id.j; ++k) value *= bank.lowpass(xi(lambda, k));
      }
      filter(i) = value;
    }
    sys.band_filters_.push_back(std::move(filter));
  }
  return sys;
}

FrameletSystem FrameletSystem::build_chebyshev(const Eigen::MatrixXd& laplacian, const FilterBank& bank,
                                               int levels, int degree, double rho_bound,
                                               int coarse_scale) {
  check_build_params(bank, levels, coarse_scale);
  if (degree < 0) throw std::invalid_argument("build_chebyshev: degree must be >= 0");
  if (!(rho_bound > 0.0)) throw std::invalid_argument("build_chebyshev: rho_bound must be positive");
  if (laplacian.rows() != laplacian.cols() || laplacian.rows() == 0)
    throw std::invalid_argument("build_chebyshev: Laplacian must be square and non-empty");
  if ((laplacian - laplacian.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("build_chebyshev: Laplacian must be symmetric");

  FrameletSystem sys;
  sys.n_ = static_cast<int>(laplacian.rows());
  sys.levels_ = levels;
  sys.coarse_scale_ = coarse_scale;
  sys.degree_ = degree;
  sys.construction_ = FrameletConstruction::chebyshev;
  sys.band_ids_ = make_band_ids(static_cast<int>(bank.highpass.size()), levels);
  sys.laplacian_ = laplacian;
  sys.rho_bound_ = rho_bound;

  const auto scaled = [&](const std::function<double(double)>& f, int j) {
    const double denom = std::pow(2.0, coarse_scale + j - 1);
    return std::function<double(double)>([f, denom](double lambda) { return f(lambda / denom); });
  };
  for (const BandId& id : sys.band_ids_) {
    std::vector<Eigen::VectorXd> factors;
    if (id.r == 0) {
      for (int k = 1; k <= levels; ++k)
        factors.push_back(chebyshev_coefficients(scaled(bank.lowpass, k), degree, rho_bound));
    } else {
      factors.push_back(chebyshev_coefficients(
          scaled(bank.highpass[static_cast<std::size_t>(id.r - 1)], id.j), degree, rho_bound));
      for (int k = 1; k < id.j; ++k)
        factors.push_back(chebyshev_coefficients(scaled(bank.lowpass, k), degree, rho_bound));
    }
    sys.band_factor_coeffs_.push_back(std::move(factors));
  }
  return sys;
}

Eigen::MatrixXd FrameletSystem::apply_band(int band, const Eigen::MatrixXd& h) const {
  if (band < 0 || band >= band_count()) throw std::invalid_argument("apply_band: band out of range");
  if (h.rows() != n_) throw std::invalid_argument("apply_band: row count must match node count");
  if (construction_ == FrameletConstruction::exact) {
    return decomp_.eigenvectors *
           (band_filters_[static_cast<std::size_t>(band)].asDiagonal() *
            (decomp_.eigenvectors.transpose() * h));
  }
  Eigen::MatrixXd cur = h;
  for (const auto& coeffs : band_factor_coeffs_[static_cast<std::size_t>(band)])
    cur = chebyshev_apply(coeffs, laplacian_, rho_bound_, cur);
  return cur;
}

Eigen::MatrixXd FrameletSystem::band_matrix(int band) const {
  return apply_band(band, Eigen::MatrixXd::Identity(n_, n_));
}

double FrameletSystem::spectral_radius() const {
  if (construction_ == FrameletConstruction::exact) return decomp_.eigenvalues.maxCoeff();
  return eigendecompose(laplacian_).eigenvalues.maxCoeff();
}

Eigen::MatrixXd FrameletSystem::laplacian_matrix() const {
  if (construction_ == FrameletConstruction::chebyshev) return laplacian_;
  return decomp_.eigenvectors * decomp_.eigenvalues.asDiagonal() * decomp_.eigenvectors.transpose();
}

double FrameletSystem::laplacian_quadratic(const Eigen::MatrixXd& h) const {
  if (h.rows() != n_) throw std::invalid_argument("laplacian_quadratic: row count must match node count");
  if (construction_ == FrameletConstruction::exact) {
    const Eigen::MatrixXd x = decomp_.eigenvectors.transpose() * h;
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      total += decomp_.eigenvalues(i) * x.row(i).squaredNorm();
    return total;
  }
  return (h.transpose() * (laplacian_ * h)).trace();
}

FrameletCoefficients framelet_decompose(const FrameletSystem& system, const Eigen::MatrixXd& h) {
  FrameletCoefficients coeffs;
  coeffs.reserve(static_cast<std::size_t>(system.band_count()));
  for (int b = 0; b < system.band_count(); ++b) coeffs.push_back(system.apply_band(b, h));
  return coeffs;
}

Eigen::MatrixXd framelet_reconstruct(const FrameletSystem& system, const FrameletCoefficients& coeffs) {
  if (static_cast<int>(coeffs.size()) != system.band_count())
    throw std::invalid_argument("framelet_reconstruct: coefficient band count mismatch");
  Eigen::MatrixXd out;
  for (int b = 0; b < system.band_count(); ++b) {
    const Eigen::MatrixXd term = system.apply_band(b, coeffs[static_cast<std::size_t>(b)]);
    if (out.size() == 0)
      out = term;
    else
      out += term;
  }
  return out;
}

double tightness_residual(const FrameletSystem& system) {
  const int n = system.node_count();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < system.band_count(); ++b) {
    const Eigen::MatrixXd w = system.band_matrix(b);
    sum += w.transpose() * w;
  }
  sum -= Eigen::MatrixXd::Identity(n, n);
  return sum.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace curvlet
