#include "nsmqa/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "nsmqa/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsmqa {

namespace {

using cd = std::complex<double>;

std::optional<ComplexVector> krylov_attempt(const ComplexApply& h, const ComplexVector& v,
                                            double dt, const KrylovOptions& opts) {
  const Eigen::Index n = v.size();
  const double beta0 = v.norm();
  if (beta0 == 0.0) return v;
  const Eigen::Index m = std::min<Eigen::Index>(opts.dim, n);

  Eigen::MatrixXcd basis(n, m + 1);
  basis.col(0) = v / beta0;
  std::vector<double> alpha, beta;
  ComplexVector w;

  for (Eigen::Index j = 0; j < m; ++j) {
    h(basis.col(j), w);
    const double a = basis.col(j).dot(w).real();
    w -= a * basis.col(j);
    if (j > 0) w -= beta.back() * basis.col(j - 1);
    const auto done = basis.leftCols(j + 1);
    w -= done * (done.adjoint() * w);
    const double b = w.norm();
    alpha.push_back(a);

    const Eigen::Index size = j + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < size; ++i)
      t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::MatrixXd& s = es.eigenvectors();
    Eigen::VectorXcd coeff(size);
    for (Eigen::Index i = 0; i < size; ++i)
      coeff[i] = std::exp(cd(0.0, -dt * es.eigenvalues()[i])) * s(0, i);
    const Eigen::VectorXcd f = s.cast<cd>() * coeff;

    const double scale = std::max(1.0, std::abs(a));
    if (b < 1e-13 * scale || beta0 * b * std::abs(f[size - 1]) < opts.tol)
      return ComplexVector(beta0 * (done * f));
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  return std::nullopt;
}

ComplexVector krylov_split(const ComplexApply& h, const ComplexVector& v, double dt,
                           const KrylovOptions& opts, int depth) {
  if (auto out = krylov_attempt(h, v, dt, opts)) return *out;
  if (depth >= opts.max_halvings)
    throw Error(ErrorKind::numerical, "Krylov exponential did not converge");
  const ComplexVector half = krylov_split(h, v, dt / 2, opts, depth + 1);
  return krylov_split(h, half, dt / 2, opts, depth + 1);
}

double expectation(const ComplexApply& h, const ComplexVector& psi) {
  ComplexVector hp;
  h(psi, hp);
  return psi.dot(hp).real();
}

}  // namespace

ComplexVector krylov_expm(const ComplexApply& h, const ComplexVector& v, double dt,
                          const KrylovOptions& opts) {
  if (!(dt >= 0.0)) throw Error(ErrorKind::invalid_argument, "time step must be non-negative");
  if (dt == 0.0) return v;
  return krylov_split(h, v, dt, opts, 0);
}

double fidelity(const ComplexVector& psi, const ComplexVector& phi) {
  if (psi.size() != phi.size()) throw Error(ErrorKind::invalid_argument, "dimension mismatch");
  return std::norm(psi.dot(phi));
}

double relative_energy_error(const ComplexVector& psi, const SparseHamiltonian& target,
                             double E_T) {
  if (E_T == 0.0) throw Error(ErrorKind::invalid_argument, "target energy is zero");
  const double e = psi.dot(target * psi).real();
  return (e - E_T) / std::abs(E_T);
}

TargetState compute_target(const NuclearSystem& system, const EigenOptions& opts) {
  const int k = static_cast<int>(std::min<std::size_t>(system.dim(), 4));
  const InstantSpectrum s = lowest_eigenpairs(as_operator(system.target()), k, opts);
  int members = 1;
  while (members < s.size() && s.cluster[static_cast<std::size_t>(members)] == 0) ++members;
  TargetState t;
  t.energy = s.values[0];
  t.vectors = s.vectors.leftCols(members);
  if (members > 1) t.source = fmt::format("exact-diagonalization-degenerate-{}", members);
  return t;
}

EvolutionRecord run_anneal(const NuclearSystem& system, const AnnealConfig& config,
                           const TargetState* target) {
  if (!(config.tau_omega > 0.0) || !std::isfinite(config.tau_omega))
    throw Error(ErrorKind::invalid_argument, "tau_omega must be positive");
  if (!(config.dt_omega > 0.0)) throw Error(ErrorKind::invalid_argument, "dt_omega must be positive");
  if (config.k_track < 0) throw Error(ErrorKind::invalid_argument, "k_track must be non-negative");

  EigenOptions eig;
  eig.seed = config.seed;
  TargetState own;
  if (!target) {
    own = compute_target(system, eig);
    target = &own;
  }

  const std::size_t dim = system.dim();
  const double tau = config.tau_omega;
  const int n_steps = std::max(1, static_cast<int>(std::lround(tau / config.dt_omega)));
  const double dt = tau / n_steps;
  const int stride = config.spectrum_stride > 0 ? config.spectrum_stride : (dim < 10000 ? 1 : 5);
  const bool spectra = config.k_track > 0;

  EvolutionRecord rec;
  rec.nucleus = system.nucleus().name;
  rec.config = config;
  rec.n_steps = n_steps;
  rec.dt = dt;
  rec.E_T = target->energy;
  rec.E0 = system.reference().E0;
  rec.target_source = target->source;

  InterpolatedOperator op(system.driver(), system.target());
  const ComplexApply apply = [&op](const ComplexVector& x, ComplexVector& y) { op.apply(x, y); };
  KrylovOptions kopts;
  kopts.dim = config.krylov_dim;
  kopts.tol = config.krylov_tol;

  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  psi[static_cast<Eigen::Index>(system.reference().index)] = 1.0;

  std::vector<std::size_t> sampled;
  std::vector<ComplexVector> snapshots;

  for (int k = 0; k <= n_steps; ++k) {
    StepRecord s;
    s.step = k;
    s.t = k * dt;
    s.lambda = k == n_steps ? 1.0 : std::min(1.0, s.t / tau);
    op.set_lambda(s.lambda);
    s.energy = expectation(apply, psi);
    s.norm = psi.norm();
    if (spectra && (k % stride == 0 || k == n_steps)) {
      s.has_spectrum = true;
      sampled.push_back(rec.steps.size());
      snapshots.push_back(psi);
    }
    rec.steps.push_back(std::move(s));
    if (k == n_steps) break;

    op.set_lambda(config.midpoint ? std::min(1.0, (k + 0.5) * dt / tau) : rec.steps.back().lambda);
    psi = krylov_expm(apply, psi, dt, kopts);
    const double drift = std::abs(psi.norm() - 1.0);
    rec.max_norm_drift = std::max(rec.max_norm_drift, drift);
    if (drift >= config.norm_tolerance)
      throw Error(ErrorKind::numerical,
                  fmt::format("norm drift {:.3e} at step {} exceeds {:.1e}", drift, k + 1,
                              config.norm_tolerance));
    psi /= psi.norm();
  }

  if (spectra) {
    const auto count = static_cast<std::ptrdiff_t>(sampled.size());
    int threads = 1;
#ifdef _OPENMP
    threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      StepRecord& s = rec.steps[sampled[static_cast<std::size_t>(i)]];
      InterpolatedOperator local(system.driver(), system.target(), s.lambda);
      EigenOptions o = eig;
      o.seed = config.seed + static_cast<std::uint64_t>(s.step);
      const InstantSpectrum spec = lowest_eigenpairs(as_operator(local), config.k_track, o);
      s.levels = spec.values;
      s.populations = instantaneous_populations(snapshots[static_cast<std::size_t>(i)], spec);
    }
    std::vector<double> times, lambdas;
    std::vector<RealVector> levels, pops;
    for (const auto& s : rec.steps) {
      if (!s.has_spectrum) continue;
      times.push_back(s.t);
      lambdas.push_back(s.lambda);
      levels.push_back(s.levels);
      pops.push_back(s.populations);
    }
    if (std::min<std::size_t>(static_cast<std::size_t>(config.k_track), dim) >= 2)
      rec.gap = min_gap_and_resonance(times, lambdas, levels, pops);
  }

  double f = 0.0;
  for (Eigen::Index c = 0; c < target->vectors.cols(); ++c)
    f += std::norm(target->vectors.col(c).cast<cd>().dot(psi));
  rec.fidelity = std::min(1.0, f);
  rec.final_energy = psi.dot(system.target() * psi).real();
  rec.relative_error = (rec.final_energy - rec.E_T) / std::abs(rec.E_T);
  return rec;
}

}  // namespace nsmqa
