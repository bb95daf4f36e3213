#include "noma/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace noma::mc {

namespace {

// Trials are processed in fixed blocks; workers race for block indices but
// every block accumulates sequentially and partials combine in block order,
// so sums are bitwise identical for any worker count.
constexpr std::uint64_t kBlockSize = 16384;

int resolve_workers(int requested, std::uint64_t blocks) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    std::uint64_t w = requested > 0 ? static_cast<std::uint64_t>(requested) : hw;
    if (w > blocks) w = blocks;
    if (w < 1) w = 1;
    return static_cast<int>(w);
}

// per_trial(stream) -> double; returns (sum, sum of squares) block-combined.
template <typename PerTrial>
std::pair<double, double> run_mean(const SimConfig& config, PerTrial&& per_trial) {
    const std::uint64_t trials = config.trials;
    if (trials < 1) throw std::invalid_argument("montecarlo: need at least one trial");
    const std::uint64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<double> block_sum(blocks, 0.0);
    std::vector<double> block_sumsq(blocks, 0.0);

    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t blk = next.fetch_add(1);
            if (blk >= blocks) return;
            const std::uint64_t lo = blk * kBlockSize;
            const std::uint64_t hi = std::min(trials, lo + kBlockSize);
            double s = 0.0;
            double s2 = 0.0;
            for (std::uint64_t t = lo; t < hi; ++t) {
                RngStream stream(config.seed, t);
                const double v = per_trial(stream);
                s += v;
                s2 += v * v;
            }
            block_sum[blk] = s;
            block_sumsq[blk] = s2;
        }
    };

    const int workers = resolve_workers(config.workers, blocks);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    double sum = 0.0;
    double sumsq = 0.0;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        sum += block_sum[blk];
        sumsq += block_sumsq[blk];
    }
    return {sum, sumsq};
}

template <typename PerTrial>
EstimatorResult mean_estimator(const SimConfig& config, PerTrial&& per_trial) {
    const auto [sum, sumsq] = run_mean(config, per_trial);
    const double n = static_cast<double>(config.trials);
    EstimatorResult r;
    r.trials = config.trials;
    r.seed = config.seed;
    r.mean = sum / n;
    if (config.trials > 1) {
        const double var = std::max(0.0, (sumsq - n * r.mean * r.mean) / (n - 1.0));
        r.ci95_halfwidth = 1.96 * std::sqrt(var / n);
    }
    return r;
}

template <typename Pred>
EstimatorResult binary_estimator(const SimConfig& config, Pred&& pred) {
    const auto [sum, sumsq] = run_mean(config, [&](RngStream& s) {
        return pred(s) ? 1.0 : 0.0;
    });
    (void)sumsq;
    const double n = static_cast<double>(config.trials);
    EstimatorResult r;
    r.trials = config.trials;
    r.seed = config.seed;
    r.mean = sum / n;
    r.ci95_halfwidth = 1.96 * std::sqrt(r.mean * (1.0 - r.mean) / n);
    return r;
}

const rates::RateTargets& require_targets(const SimConfig& config, const char* op) {
    if (!config.targets.has_value()) {
        throw std::invalid_argument(std::string(op) + ": config carries no rate targets");
    }
    if (config.targets->users() != config.geometry.num_users) {
        throw std::invalid_argument(std::string(op) + ": target/user count mismatch");
    }
    return *config.targets;
}

}  // namespace

EstimatorResult estimate_outage(const SimConfig& config, int user_m) {
    const int m_users = config.geometry.num_users;
    if (user_m < 1 || user_m > m_users) {
        throw std::domain_error("estimate_outage: user out of range");
    }
    const auto& targets = require_targets(config, "estimate_outage");
    const rates::Thresholds th = rates::compute_thresholds(config.alloc, targets, config.rho);
    if (th.forced_outage(user_m)) {
        return EstimatorResult{1.0, 0.0, config.trials, config.seed};
    }
    const double threshold = th.psi_star[user_m - 1];
    return binary_estimator(config, [&, threshold](RngStream& stream) {
        Eigen::ArrayXd gains;
        channel::sample_sorted_gains(stream, config.geometry, gains);
        return gains[user_m - 1] <= threshold;
    });
}

EstimatorResult estimate_outage_via_sinr(const SimConfig& config, int user_m) {
    const int m_users = config.geometry.num_users;
    if (user_m < 1 || user_m > m_users) {
        throw std::domain_error("estimate_outage_via_sinr: user out of range");
    }
    const auto& targets = require_targets(config, "estimate_outage_via_sinr");
    return binary_estimator(config, [&](RngStream& stream) {
        Eigen::ArrayXd gains;
        channel::sample_sorted_gains(stream, config.geometry, gains);
        const double gain = gains[user_m - 1];
        for (int j = 1; j <= user_m; ++j) {
            if (rates::rate_j_to_m(gain, config.rho, config.alloc, j) < targets.targets[j - 1]) {
                return true;
            }
        }
        return false;
    });
}

EstimatorResult estimate_sum_rate(const SimConfig& config, Scheme scheme) {
    const int m_users = config.geometry.num_users;
    const double rho = config.rho;
    switch (scheme) {
        case Scheme::noma:
            return mean_estimator(config, [&](RngStream& stream) {
                Eigen::ArrayXd gains;
                channel::sample_sorted_gains(stream, config.geometry, gains);
                double sum = 0.0;
                for (int m = 1; m <= m_users; ++m) {
                    sum += rates::rate_j_to_m(gains[m - 1], rho, config.alloc, m);
                }
                return sum;
            });
        case Scheme::oma_random:
            return mean_estimator(config, [&](RngStream& stream) {
                Eigen::ArrayXd gains;
                channel::sample_sorted_gains(stream, config.geometry, gains);
                if (config.oma_split) {
                    // round-robin time sharing: every user gets a 1/M slice
                    double sum = 0.0;
                    for (int m = 0; m < m_users; ++m) {
                        sum += std::log2(1.0 + rho * gains[m]);
                    }
                    return sum / m_users;
                }
                const auto pick = static_cast<std::uint64_t>(stream.next_uniform() * m_users);
                const int u = static_cast<int>(std::min<std::uint64_t>(pick, m_users - 1));
                return std::log2(1.0 + rho * gains[u]);
            });
        case Scheme::opportunistic:
            return mean_estimator(config, [&](RngStream& stream) {
                Eigen::ArrayXd gains;
                channel::sample_sorted_gains(stream, config.geometry, gains);
                return std::log2(1.0 + rho * gains[m_users - 1]);
            });
    }
    throw std::invalid_argument("estimate_sum_rate: unknown scheme");
}

EstimatorResult estimate_oma_outage(const SimConfig& config) {
    const auto& targets = require_targets(config, "estimate_oma_outage");
    const int m_users = config.geometry.num_users;
    const double rho = config.rho;
    const double total_target = targets.targets.sum();
    return binary_estimator(config, [&](RngStream& stream) {
        Eigen::ArrayXd gains;
        channel::sample_sorted_gains(stream, config.geometry, gains);
        const auto pick = static_cast<std::uint64_t>(stream.next_uniform() * m_users);
        const int u = static_cast<int>(std::min<std::uint64_t>(pick, m_users - 1));
        const double rate = std::log2(1.0 + rho * gains[u]);
        if (config.oma_split) {
            return rate / m_users < targets.targets[u];
        }
        return rate < total_target;
    });
}

}  // namespace noma::mc
