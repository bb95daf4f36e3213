#ifndef NOMA_RATES_HPP
#define NOMA_RATES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

#include "noma/channel.hpp"

namespace noma::rates {

/// Power split across users: positive, nonincreasing (weakest user first),
/// summing to one.
struct PowerAllocation {
    explicit PowerAllocation(Eigen::ArrayXd a);

    int users() const { return static_cast<int>(coeffs.size()); }

    /// Interference share seen while decoding user j (1-based): sum_{i>j} a_i.
    double tail_sum(int j) const { return coeffs.tail(users() - j).sum(); }

    Eigen::ArrayXd coeffs;
};

/// Per-user target rates in bits per channel use, with the SINR thresholds
/// phi_j = 2^target - 1 they translate to.
struct RateTargets {
    explicit RateTargets(Eigen::ArrayXd targets_bpcu);

    int users() const { return static_cast<int>(targets.size()); }

    Eigen::ArrayXd targets;
    Eigen::ArrayXd phi;
};

/// Raised while deriving decoding thresholds for a user whose power/rate pair
/// violates the decodability condition; callers map it to outage = 1.
class InfeasibleUserError : public std::runtime_error {
public:
    InfeasibleUserError(int user_1based, const std::string& what)
        : std::runtime_error(what), user(user_1based) {}
    int user;
};

/// (1), (0.8, 0.2), or a_m proportional to M-m+1 for larger M.
PowerAllocation default_allocation(int m_users);

/// Rate at which a user with gain `gain_m` decodes user j's message (1-based),
/// in bits per channel use: log2(1 + rho g a_j / (rho g sum_{i>j} a_i + 1)).
double rate_j_to_m(double gain_m, double rho, const PowerAllocation& alloc, int j);

/// Per-user achieved rates for a sorted draw under successive cancellation,
/// rates[m] = rate_j_to_m(gains[m], ..., j = m). With targets set to the
/// achieved rates, every cancellation step succeeds by the gain ordering.
Eigen::ArrayXd achievable_rates(const ChannelDraw& draw, double rho,
                                const PowerAllocation& alloc);

/// Decodability condition per user: a_j > phi_j * sum_{i>j} a_i, strictly
/// (equality makes the threshold diverge). The last user only needs a_M > 0.
Eigen::Array<bool, Eigen::Dynamic, 1> feasibility(const PowerAllocation& alloc,
                                                  const RateTargets& targets);

/// Gain thresholds psi_j = phi_j / (rho (a_j - phi_j sum_{i>j} a_i)) and their
/// running maxima psi*_m: user m decodes everything it must iff its gain
/// exceeds psi*_m. Entries from the first infeasible user on are NaN.
struct Thresholds {
    Eigen::ArrayXd psi;
    Eigen::ArrayXd psi_star;
    Eigen::Array<bool, Eigen::Dynamic, 1> feasible;
    int first_infeasible = 0;  // 1-based; 0 when every user is feasible

    bool all_feasible() const { return first_infeasible == 0; }
    /// True when user m's threshold involves an infeasible user j <= m.
    bool forced_outage(int m_1based) const {
        return first_infeasible != 0 && first_infeasible <= m_1based;
    }
};

/// Total variant: never throws, marks infeasible users instead.
Thresholds compute_thresholds(const PowerAllocation& alloc, const RateTargets& targets,
                              double rho);

/// Strict variant: (psi, psi*) or InfeasibleUserError naming the first
/// offending user.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> psi_thresholds(const PowerAllocation& alloc,
                                                         const RateTargets& targets,
                                                         double rho);

}  // namespace noma::rates

#endif  // NOMA_RATES_HPP
