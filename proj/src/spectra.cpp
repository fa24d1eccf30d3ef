#include "nsmqa/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "nsmqa/error.hpp"

namespace nsmqa {

LinearOperator as_operator(const SparseHamiltonian& h) {
  return {h.dim(), [&h](const RealVector& x, RealVector& y) { h.apply(x, y); }};
}

LinearOperator as_operator(const InterpolatedOperator& h) {
  return {h.dim(), [&h](const RealVector& x, RealVector& y) { h.apply(x, y); }};
}

std::vector<int> degeneracy_clusters(const RealVector& values, double tol) {
  std::vector<int> cluster(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const bool joins =
        i > 0 && values[i] - values[i - 1] <= tol * std::max(1.0, std::abs(values[i]));
    cluster[static_cast<std::size_t>(i)] =
        joins ? cluster[static_cast<std::size_t>(i - 1)] : static_cast<int>(i);
  }
  return cluster;
}

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 - 0.5; }

 private:
  std::mt19937_64 rng_;
};

Eigen::MatrixXd random_block(Eigen::Index n, Eigen::Index cols, Uniform& u) {
  Eigen::MatrixXd b(n, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < n; ++i) b(i, j) = u();
  return b;
}

// Orthonormalizes the columns of `b` against `q` and each other. Columns that
// collapse are replaced by fresh random directions while the space allows.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& q, Eigen::MatrixXd b, Uniform& u) {
  const Eigen::Index n = b.rows();
  Eigen::MatrixXd out(n, 0);
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (q.cols() + out.cols() >= n) return out;
      RealVector v = b.col(j);
      const double start = v.norm();
      if (start == 0.0) {
        b.col(j) = random_block(n, 1, u);
        continue;
      }
      for (int pass = 0; pass < 2; ++pass) {
        if (q.cols() > 0) v -= q * (q.transpose() * v);
        if (out.cols() > 0) v -= out * (out.transpose() * v);
      }
      const double norm = v.norm();
      if (norm > 1e-8 * start) {
        out.conservativeResize(Eigen::NoChange, out.cols() + 1);
        out.col(out.cols() - 1) = v / norm;
        break;
      }
      b.col(j) = random_block(n, 1, u);
    }
  }
  return out;
}

InstantSpectrum dense_lowest(const LinearOperator& op, int k) {
  const auto n = static_cast<Eigen::Index>(op.dim);
  Eigen::MatrixXd h(n, n);
  RealVector e = RealVector::Zero(n), col;
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    h.col(j) = col;
    e[j] = 0.0;
  }
  h = 0.5 * (h + h.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::numerical, "dense eigensolver failed");
  InstantSpectrum s;
  s.values = es.eigenvalues().head(k);
  s.vectors = es.eigenvectors().leftCols(k);
  return s;
}

InstantSpectrum block_lanczos(const LinearOperator& op, int k, const EigenOptions& opts) {
  const auto n = static_cast<Eigen::Index>(op.dim);
  const Eigen::Index b = k;
  const Eigen::Index max_sub = std::min<Eigen::Index>(n, std::max<Eigen::Index>(8 * b, 40));
  const Eigen::Index keep = std::min<Eigen::Index>(max_sub - b, k + b);
  Uniform u(opts.seed);

  Eigen::MatrixXd q(n, 0), w(n, 0);
  Eigen::MatrixXd block = random_block(n, b, u);
  RealVector x, y;

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    while (q.cols() < max_sub) {
      Eigen::MatrixXd fresh = orthonormalize(q, block, u);
      if (fresh.cols() == 0) break;
      const Eigen::Index take = std::min(fresh.cols(), max_sub - q.cols());
      const Eigen::Index base = q.cols();
      q.conservativeResize(Eigen::NoChange, base + take);
      w.conservativeResize(Eigen::NoChange, base + take);
      block.resize(n, take);
      for (Eigen::Index j = 0; j < take; ++j) {
        q.col(base + j) = fresh.col(j);
        x = fresh.col(j);
        op.apply(x, y);
        w.col(base + j) = y;
        block.col(j) = y;
      }
    }

    Eigen::MatrixXd t = q.transpose() * w;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::numerical, "Rayleigh-Ritz failed");
    const RealVector theta = es.eigenvalues();
    const Eigen::Index nkeep = std::min(keep, q.cols());
    const Eigen::MatrixXd yk = es.eigenvectors().leftCols(nkeep);
    Eigen::MatrixXd ritz = q * yk;
    Eigen::MatrixXd hritz = w * yk;
    Eigen::MatrixXd resid = hritz - ritz * theta.head(nkeep).asDiagonal();

    const double scale = std::max({1.0, std::abs(theta[0]), std::abs(theta[theta.size() - 1])});
    bool converged = true;
    for (Eigen::Index i = 0; i < k; ++i)
      if (resid.col(i).norm() > opts.tolerance * scale) converged = false;
    if (converged || q.cols() >= n) {
      InstantSpectrum s;
      s.values = theta.head(k);
      s.vectors = ritz.leftCols(k);
      for (Eigen::Index i = 0; i < k; ++i) s.vectors.col(i).normalize();
      return s;
    }

    q = ritz;
    w = hritz;
    block = resid.leftCols(std::min(b, nkeep));
  }
  throw Error(ErrorKind::numerical, "block Lanczos did not converge");
}

}  // namespace

InstantSpectrum lowest_eigenpairs(const LinearOperator& op, int k, const EigenOptions& opts) {
  if (op.dim == 0) throw Error(ErrorKind::invalid_argument, "empty operator");
  k = std::clamp(k, 1, static_cast<int>(op.dim));
  InstantSpectrum s = (op.dim < opts.dense_threshold || op.dim <= static_cast<std::size_t>(8 * k))
                          ? dense_lowest(op, k)
                          : block_lanczos(op, k, opts);
  s.cluster = degeneracy_clusters(s.values, opts.cluster_tolerance);
  return s;
}

RealVector instantaneous_populations(const ComplexVector& psi, const InstantSpectrum& spectrum) {
  const int k = spectrum.size();
  RealVector p = RealVector::Zero(k);
  for (int i = 0; i < k; ++i) {
    const std::complex<double> overlap = spectrum.vectors.col(i).cast<std::complex<double>>().dot(psi);
    p[spectrum.cluster[static_cast<std::size_t>(i)]] += std::norm(overlap);
  }
  return p;
}

GapReport min_gap_and_resonance(const std::vector<double>& times,
                                const std::vector<double>& lambdas,
                                const std::vector<RealVector>& energies,
                                const std::vector<RealVector>& populations, double threshold) {
  if (times.size() != energies.size() || times.size() != populations.size() ||
      times.size() != lambdas.size())
    throw Error(ErrorKind::invalid_argument, "inconsistent record lengths");
  Eigen::Index k = 0;
  for (const auto& e : energies) k = std::max(k, e.size());
  if (k < 2) throw Error(ErrorKind::invalid_argument, "gap needs at least two tracked levels");

  GapReport g;
  g.max_populations = RealVector::Zero(k);
  for (const auto& p : populations)
    for (Eigen::Index i = 0; i < p.size(); ++i)
      g.max_populations[i] = std::max(g.max_populations[i], p[i]);

  int level = 1;
  for (Eigen::Index i = 1; i < k; ++i)
    if (g.max_populations[i] > threshold) {
      g.r = static_cast<int>(i);
      level = static_cast<int>(i);
      break;
    }

  g.delta = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < times.size(); ++s) {
    if (energies[s].size() <= level) continue;
    const double gap = energies[s][level] - energies[s][0];
    if (gap < g.delta) {
      g.delta = gap;
      g.t_min = times[s];
      g.lambda_min = lambdas[s];
    }
  }
  return g;
}

}  // namespace nsmqa
