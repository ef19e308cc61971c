#include "curvlet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvlet/rng.hpp"

namespace curvlet {

double dirichlet_energy(const Eigen::MatrixXd& laplacian, const Eigen::MatrixXd& h) {
  if (laplacian.rows() != laplacian.cols())
    throw std::invalid_argument("dirichlet_energy: Laplacian must be square");
  if (laplacian.cols() != h.rows())
    throw std::invalid_argument("dirichlet_energy: feature row count must match the Laplacian");
  return (h.transpose() * (laplacian * h)).trace();
}

std::vector<double> uniform_gains(const FrameletSystem& system, double highpass_gain) {
  std::vector<double> gains(static_cast<std::size_t>(system.band_count()), highpass_gain);
  for (int b = 0; b < system.band_count(); ++b)
    if (system.band_ids()[static_cast<std::size_t>(b)].r == 0) gains[static_cast<std::size_t>(b)] = 1.0;
  return gains;
}

namespace {

std::vector<double> resolve_gains(const FrameletSystem& system, const PropagationConfig& cfg) {
  if (cfg.band_gains.empty()) return std::vector<double>(static_cast<std::size_t>(system.band_count()), 1.0);
  if (static_cast<int>(cfg.band_gains.size()) != system.band_count())
    throw std::invalid_argument("propagation: need one gain per band (" +
                                std::to_string(system.band_count()) + ")");
  for (double t : cfg.band_gains)
    if (t < 0.0) throw std::invalid_argument("propagation: band gains must be non-negative");
  return cfg.band_gains;
}

Eigen::MatrixXd mix_channels(const PropagationConfig& cfg, const Eigen::MatrixXd& h) {
  if (cfg.mixer.size() == 0) return h;
  if (cfg.mixer.rows() != cfg.mixer.cols() || cfg.mixer.rows() != h.cols())
    throw std::invalid_argument("propagation: mixer must be square with one row per feature channel");
  if ((cfg.mixer - cfg.mixer.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("propagation: mixer must be symmetric");
  return h * cfg.mixer;
}

Eigen::MatrixXd apply_nonlinearity(Nonlinearity nl, Eigen::MatrixXd h) {
  if (nl == Nonlinearity::relu) h = h.cwiseMax(0.0);
  return h;
}

}  // namespace

Eigen::MatrixXd spectral_step(const FrameletSystem& system, const PropagationConfig& cfg,
                              const Eigen::MatrixXd& h) {
  const std::vector<double> gains = resolve_gains(system, cfg);
  const Eigen::MatrixXd mixed = mix_channels(cfg, h);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(h.rows(), h.cols());
  for (int b = 0; b < system.band_count(); ++b)
    acc += gains[static_cast<std::size_t>(b)] * system.apply_band(b, system.apply_band(b, mixed));
  return apply_nonlinearity(cfg.nonlinearity, std::move(acc));
}

Eigen::MatrixXd spatial_step(const FrameletSystem& system, const Eigen::MatrixXd& normalized_adjacency,
                             const PropagationConfig& cfg, const Eigen::MatrixXd& h) {
  if (normalized_adjacency.rows() != system.node_count() ||
      normalized_adjacency.cols() != system.node_count())
    throw std::invalid_argument("spatial_step: adjacency shape must match the system");
  const Eigen::MatrixXd mixed = mix_channels(cfg, h);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(h.rows(), h.cols());
  for (int b = 0; b < system.band_count(); ++b) {
    const Eigen::MatrixXd inner =
        apply_nonlinearity(cfg.nonlinearity, normalized_adjacency * system.apply_band(b, mixed));
    acc += system.apply_band(b, inner);
  }
  return acc;
}

Eigen::MatrixXd closed_form_propagation(const SpectralDecomposition& laplacian_decomp,
                                        const SpectralDecomposition& mixer_decomp,
                                        double highpass_gain, const Eigen::MatrixXd& h0, int steps,
                                        double step_size, int coarse_scale) {
  if (steps < 0) throw std::invalid_argument("closed_form_propagation: steps must be >= 0");
  const Eigen::Index n = laplacian_decomp.eigenvalues.size();
  const Eigen::Index c = mixer_decomp.eigenvalues.size();
  if (h0.rows() != n || h0.cols() != c)
    throw std::invalid_argument("closed_form_propagation: H0 shape must match the two eigensystems");

  const double denom = std::pow(2.0, coarse_scale + 1);
  Eigen::VectorXd symbol(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = std::max(laplacian_decomp.eigenvalues(i), 0.0) / denom;
    const double cs = std::cos(xi), sn = std::sin(xi);
    symbol(i) = std::pow(cs * cs + highpass_gain * sn * sn, steps);
  }
  Eigen::VectorXd mixer_pow(c);
  for (Eigen::Index k = 0; k < c; ++k) mixer_pow(k) = std::pow(mixer_decomp.eigenvalues(k), steps);

  const Eigen::MatrixXd left =
      laplacian_decomp.eigenvectors * symbol.asDiagonal() * laplacian_decomp.eigenvectors.transpose();
  const Eigen::MatrixXd right =
      mixer_decomp.eigenvectors * mixer_pow.asDiagonal() * mixer_decomp.eigenvectors.transpose();
  return std::pow(step_size, steps) * (left * h0 * right);
}

EnergyTrace propagate(const FrameletSystem& system, const PropagationConfig& cfg,
                      const Eigen::MatrixXd& h0) {
  if (h0.rows() != system.node_count())
    throw std::invalid_argument("propagate: H0 row count must match the system");
  if (cfg.steps < 1) throw std::invalid_argument("propagate: steps must be >= 1");
  if (!(cfg.step_size > 0.0)) throw std::invalid_argument("propagate: step_size must be positive");

  EnergyTrace trace;
  trace.rho = system.spectral_radius();

  // Recorded energy is half the Dirichlet form of the normalized features,
  // the per-edge convention whose sharpening limit is rho / 2.
  const auto record = [&](const Eigen::MatrixXd& h) {
    const double norm = h.norm();
    trace.energy.push_back(norm > 0.0 ? 0.5 * system.laplacian_quadratic(h / norm) : 0.0);
  };

  Eigen::MatrixXd adjacency;
  if (cfg.mode == StepMode::spatial) {
    adjacency = -system.laplacian_matrix();
    adjacency.diagonal().array() += 1.0;
  }

  Eigen::MatrixXd h = h0;
  record(h);
  for (int step = 0; step < cfg.steps; ++step) {
    h = cfg.mode == StepMode::spectral ? spectral_step(system, cfg, h)
                                       : spatial_step(system, adjacency, cfg, h);
    h *= cfg.step_size;
    const double norm = h.norm();
    if (norm > 0.0) h /= norm;  // the traced quantity is scale-invariant
    record(h);
  }

  const int window = std::max(1, (cfg.steps + 9) / 10);
  bool all_low = true, all_high = true;
  const double target = trace.rho / 2.0;
  for (std::size_t i = trace.energy.size() - static_cast<std::size_t>(window); i < trace.energy.size();
       ++i) {
    if (!(trace.energy[i] < 0.01)) all_low = false;
    if (!(std::abs(trace.energy[i] - target) <= 0.01 * target)) all_high = false;
  }
  trace.regime = all_low ? Regime::lfd : (all_high ? Regime::hfd : Regime::undetermined);
  return trace;
}

Eigen::MatrixXd generic_initial_features(const SpectralDecomposition& decomp, int columns,
                                         std::uint64_t seed) {
  if (columns < 1) throw std::invalid_argument("generic_initial_features: need at least one column");
  const Eigen::Index n = decomp.eigenvalues.size();
  const double lo = decomp.eigenvalues.minCoeff(), hi = decomp.eigenvalues.maxCoeff();
  std::vector<Eigen::Index> low_idx, high_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (decomp.eigenvalues(i) <= lo + 1e-9) low_idx.push_back(i);
    if (decomp.eigenvalues(i) >= hi - 1e-9) high_idx.push_back(i);
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd h(n, columns);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < columns; ++j) h(i, j) = rng.next_normal();
    const Eigen::MatrixXd proj = decomp.eigenvectors.transpose() * h;
    double low_mass = 0.0, high_mass = 0.0;
    for (Eigen::Index i : low_idx) low_mass += proj.row(i).squaredNorm();
    for (Eigen::Index i : high_idx) high_mass += proj.row(i).squaredNorm();
    if (std::sqrt(low_mass) >= 1e-6 && std::sqrt(high_mass) >= 1e-6) return h;
  }
  throw std::runtime_error("generic_initial_features: could not draw features with extreme-eigenspace mass");
}

double label_propagation_experiment(const Graph& g, const LabeledPartition& partition, Variant variant,
                                    const ExperimentConfig& cfg) {
  const int n = g.node_count();
  if (static_cast<int>(partition.labels.size()) != n ||
      static_cast<int>(partition.train_mask.size()) != n)
    throw std::invalid_argument("label_propagation_experiment: partition size must match the graph");
  if (cfg.steps < 1) throw std::invalid_argument("label_propagation_experiment: steps must be >= 1");

  int classes = 0;
  for (int c : partition.labels) {
    if (c < 0) throw std::invalid_argument("label_propagation_experiment: labels must be non-negative");
    classes = std::max(classes, c + 1);
  }
  std::vector<char> seen_in_train(static_cast<std::size_t>(classes), 0);
  int train_count = 0;
  for (int i = 0; i < n; ++i)
    if (partition.train_mask[static_cast<std::size_t>(i)]) {
      seen_in_train[static_cast<std::size_t>(partition.labels[static_cast<std::size_t>(i)])] = 1;
      ++train_count;
    }
  for (int c = 0; c < classes; ++c) {
    bool present = false;
    for (int i = 0; i < n; ++i)
      if (partition.labels[static_cast<std::size_t>(i)] == c) present = true;
    if (present && !seen_in_train[static_cast<std::size_t>(c)])
      throw std::invalid_argument("label_propagation_experiment: class " + std::to_string(c) +
                                  " missing from the train set");
  }
  if (train_count == n)
    throw std::invalid_argument("label_propagation_experiment: no test nodes left");

  Eigen::MatrixXd laplacian;
  double theta;
  switch (variant) {
    case Variant::plain:
      laplacian = g.normalized_laplacian();
      theta = cfg.theta_smooth;
      break;
    case Variant::hom:
      laplacian = reweight_pipeline(g, ZetaKind::hom, cfg.curvature).laplacian;
      theta = cfg.theta_smooth;
      break;
    case Variant::het:
      laplacian = reweight_pipeline(g, ZetaKind::het, cfg.curvature).laplacian;
      theta = cfg.theta_sharp;
      break;
    case Variant::het_cbed: {
      CbedConfig cbed = cfg.cbed;
      cbed.curvature = cfg.curvature;
      const auto [dropped, report] = cbed_run(g, cbed);
      laplacian = reweight_pipeline(dropped, ZetaKind::het, cfg.curvature).laplacian;
      theta = cfg.theta_sharp;
      break;
    }
    default:
      throw std::invalid_argument("label_propagation_experiment: unknown variant");
  }

  const FrameletSystem system =
      FrameletSystem::build_exact(eigendecompose(laplacian), haar_filter_bank(), cfg.levels,
                                  cfg.coarse_scale);
  PropagationConfig pc;
  pc.band_gains = uniform_gains(system, theta);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, classes);
  for (int i = 0; i < n; ++i)
    if (partition.train_mask[static_cast<std::size_t>(i)])
      h(i, partition.labels[static_cast<std::size_t>(i)]) = 1.0;
  for (int step = 0; step < cfg.steps; ++step) h = spectral_step(system, pc, h);

  int correct = 0, tested = 0;
  for (int i = 0; i < n; ++i) {
    if (partition.train_mask[static_cast<std::size_t>(i)]) continue;
    int best = 0;
    for (int c = 1; c < classes; ++c)
      if (h(i, c) > h(i, best)) best = c;  // ties stay with the smallest class
    ++tested;
    if (best == partition.labels[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / tested;
}

}  // namespace curvlet
