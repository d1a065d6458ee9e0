#include "cvmi/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cvmi {

namespace {

constexpr int kBatches = 20;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Box-Muller on 53-bit uniforms from mt19937_64; platform-independent.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform_open() {  // in (0, 1]
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Symmetric PSD square root (symbol covariance may be singular).
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();
}

struct BatchMoments {
  Eigen::VectorXd sum;
  Eigen::MatrixXd sum_outer;
  std::int64_t count = 0;
};

JointStatistics blocks_from_moments(const Eigen::VectorXd& sum,
                                    const Eigen::MatrixXd& sum_outer, std::int64_t count,
                                    Eigen::Index k) {
  const double n = static_cast<double>(count);
  const Eigen::VectorXd mean = sum / n;
  Eigen::MatrixXd cov = (sum_outer - sum * mean.transpose()) / (n - 1.0);
  cov = 0.5 * (cov + cov.transpose()).eval();
  JointStatistics js;
  js.symbol_cov = cov.topLeftCorner(k, k);
  js.cross_cov = cov.topRightCorner(k, cov.cols() - k);
  js.outcome_cov = cov.bottomRightCorner(cov.rows() - k, cov.cols() - k);
  return js;
}

}  // namespace

McEstimate estimate_mi(const SchemeSpec& spec, std::int64_t samples, std::uint64_t seed,
                       LogBase base, int threads) {
  if (samples < 1000) throw std::invalid_argument("sample count must be at least 1000");
  if (threads < 1) threads = 1;

  const OutcomeMap map =
      outcome_map(spec.prepared, spec.modulation, spec.detector, spec.channel);
  const Eigen::Index k = map.signal_map.cols();
  const Eigen::Index m = map.signal_map.rows();
  const Eigen::MatrixXd symbol_root = psd_sqrt(spec.modulation.symbol_cov);
  const Eigen::MatrixXd noise_root = psd_sqrt(map.noise_cov);

  const std::int64_t per_batch = samples / kBatches;
  std::vector<BatchMoments> batches(kBatches);

  auto run_batch = [&](int b) {
    NormalSampler rng(splitmix64(seed + static_cast<std::uint64_t>(b)));
    Eigen::VectorXd z(k + m), xi(k), eta(m);
    BatchMoments moments;
    moments.sum = Eigen::VectorXd::Zero(k + m);
    moments.sum_outer = Eigen::MatrixXd::Zero(k + m, k + m);
    moments.count = per_batch;
    for (std::int64_t i = 0; i < per_batch; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) xi(j) = rng.next();
      for (Eigen::Index j = 0; j < m; ++j) eta(j) = rng.next();
      z.head(k) = symbol_root * xi;
      z.tail(m) = map.offset + map.signal_map * z.head(k) + noise_root * eta;
      moments.sum += z;
      moments.sum_outer += z * z.transpose();
    }
    batches[static_cast<size_t>(b)] = std::move(moments);
  };

  if (threads == 1) {
    for (int b = 0; b < kBatches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(threads, kBatches);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (int b = next.fetch_add(1); b < kBatches; b = next.fetch_add(1)) run_batch(b);
      });
    for (std::thread& t : pool) t.join();
  }

  // Fixed-order reduction for determinism.
  Eigen::VectorXd total_sum = Eigen::VectorXd::Zero(k + m);
  Eigen::MatrixXd total_outer = Eigen::MatrixXd::Zero(k + m, k + m);
  std::vector<double> batch_mi;
  for (const BatchMoments& batch : batches) {
    total_sum += batch.sum;
    total_outer += batch.sum_outer;
    batch_mi.push_back(
        gaussian_mi(blocks_from_moments(batch.sum, batch.sum_outer, batch.count, k), base));
  }

  McEstimate result;
  result.samples_used = per_batch * kBatches;
  result.mi = gaussian_mi(
      blocks_from_moments(total_sum, total_outer, result.samples_used, k), base);
  double mean = 0.0;
  for (double v : batch_mi) mean += v;
  mean /= kBatches;
  double var = 0.0;
  for (double v : batch_mi) var += (v - mean) * (v - mean);
  var /= (kBatches - 1);
  result.std_error = std::sqrt(var / kBatches);
  return result;
}

}  // namespace cvmi
