#ifndef NOMA_MONTECARLO_HPP
#define NOMA_MONTECARLO_HPP

#include <cstdint>
#include <optional>

#include "noma/channel.hpp"
#include "noma/rates.hpp"

namespace noma::mc {

/// One simulated operating point. Trial i always draws from stream
/// (seed, i), so results are independent of the worker count and any trial
/// can be replayed in isolation.
struct SimConfig {
    Geometry geometry;
    rates::PowerAllocation alloc;
    std::optional<rates::RateTargets> targets;  // absent for rate estimation
    double rho = 1.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int workers = 0;        // 0 = hardware concurrency
    bool oma_split = false; // time-share the orthogonal baseline across users
};

struct EstimatorResult {
    double mean = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

enum class Scheme { noma, oma_random, opportunistic };

/// Outage frequency of user m (1-based) through the threshold reduction:
/// outage iff gains[m-1] <= psi*_m. A user forced infeasible by the
/// decodability condition reports mean 1 with zero width, no simulation.
EstimatorResult estimate_outage(const SimConfig& config, int user_m);

/// Same estimand from raw decoding rates, without the threshold reduction:
/// outage iff some stage j <= m decodes below its target. Simulates even for
/// infeasible parameters.
EstimatorResult estimate_outage_via_sinr(const SimConfig& config, int user_m);

/// Mean sum rate of a scheme. oma_random grants one uniformly scheduled user
/// the whole slot (or a 1/M share of it per user under oma_split);
/// opportunistic always serves the strongest user at full power.
EstimatorResult estimate_sum_rate(const SimConfig& config, Scheme scheme);

/// Outage frequency of the orthogonal baseline: a uniformly scheduled user
/// carrying the whole target load sum_m target_m (or its own target over a
/// 1/M slot under oma_split).
EstimatorResult estimate_oma_outage(const SimConfig& config);

}  // namespace noma::mc

#endif  // NOMA_MONTECARLO_HPP
