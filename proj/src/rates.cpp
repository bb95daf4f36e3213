#include "noma/rates.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace noma::rates {

PowerAllocation::PowerAllocation(Eigen::ArrayXd a) : coeffs(std::move(a)) {
    if (coeffs.size() < 1) throw std::invalid_argument("PowerAllocation: empty");
    if (!(coeffs > 0.0).all()) {
        throw std::invalid_argument("PowerAllocation: coefficients must be positive");
    }
    for (Eigen::Index i = 1; i < coeffs.size(); ++i) {
        if (coeffs[i] > coeffs[i - 1]) {
            throw std::invalid_argument("PowerAllocation: coefficients must be nonincreasing");
        }
    }
    if (std::abs(coeffs.sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("PowerAllocation: coefficients must sum to one");
    }
}

RateTargets::RateTargets(Eigen::ArrayXd targets_bpcu) : targets(std::move(targets_bpcu)) {
    if (targets.size() < 1) throw std::invalid_argument("RateTargets: empty");
    if (!(targets > 0.0).all()) {
        throw std::invalid_argument("RateTargets: targets must be positive");
    }
    phi = Eigen::pow(2.0, targets) - 1.0;
}

PowerAllocation default_allocation(int m_users) {
    if (m_users < 1) throw std::invalid_argument("default_allocation: need >= 1 user");
    if (m_users == 1) return PowerAllocation(Eigen::ArrayXd::Ones(1));
    if (m_users == 2) {
        Eigen::ArrayXd a(2);
        a << 0.8, 0.2;
        return PowerAllocation(a);
    }
    Eigen::ArrayXd a(m_users);
    for (int m = 0; m < m_users; ++m) a[m] = static_cast<double>(m_users - m);
    return PowerAllocation(a / a.sum());
}

double rate_j_to_m(double gain_m, double rho, const PowerAllocation& alloc, int j) {
    if (j < 1 || j > alloc.users()) throw std::domain_error("rate_j_to_m: j out of range");
    const double signal = rho * gain_m * alloc.coeffs[j - 1];
    const double interference = rho * gain_m * alloc.tail_sum(j);
    return std::log2(1.0 + signal / (interference + 1.0));
}

Eigen::ArrayXd achievable_rates(const ChannelDraw& draw, double rho,
                                const PowerAllocation& alloc) {
    const int m_users = alloc.users();
    if (draw.gains.size() != m_users) {
        throw std::invalid_argument("achievable_rates: draw/allocation size mismatch");
    }
    Eigen::ArrayXd rates(m_users);
    for (int m = 1; m <= m_users; ++m) {
        rates[m - 1] = rate_j_to_m(draw.gains[m - 1], rho, alloc, m);
    }
    return rates;
}

Eigen::Array<bool, Eigen::Dynamic, 1> feasibility(const PowerAllocation& alloc,
                                                  const RateTargets& targets) {
    const int m_users = alloc.users();
    if (targets.users() != m_users) {
        throw std::invalid_argument("feasibility: allocation/target size mismatch");
    }
    Eigen::Array<bool, Eigen::Dynamic, 1> ok(m_users);
    for (int j = 1; j <= m_users; ++j) {
        if (j == m_users) {
            ok[j - 1] = alloc.coeffs[j - 1] > 0.0;
        } else {
            ok[j - 1] = alloc.coeffs[j - 1] - targets.phi[j - 1] * alloc.tail_sum(j) > 0.0;
        }
    }
    return ok;
}

Thresholds compute_thresholds(const PowerAllocation& alloc, const RateTargets& targets,
                              double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("compute_thresholds: rho must be > 0");
    const int m_users = alloc.users();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    Thresholds th;
    th.psi = Eigen::ArrayXd::Constant(m_users, nan);
    th.psi_star = Eigen::ArrayXd::Constant(m_users, nan);
    th.feasible = feasibility(alloc, targets);
    th.first_infeasible = 0;
    for (int j = 1; j <= m_users; ++j) {
        if (!th.feasible[j - 1]) {
            th.first_infeasible = j;
            break;
        }
    }

    const int valid = th.all_feasible() ? m_users : th.first_infeasible - 1;
    double running_max = 0.0;
    for (int j = 1; j <= valid; ++j) {
        const double denom = (j == m_users)
                                 ? alloc.coeffs[j - 1]
                                 : alloc.coeffs[j - 1] - targets.phi[j - 1] * alloc.tail_sum(j);
        th.psi[j - 1] = targets.phi[j - 1] / (rho * denom);
        running_max = std::max(running_max, th.psi[j - 1]);
        th.psi_star[j - 1] = running_max;
    }
    return th;
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> psi_thresholds(const PowerAllocation& alloc,
                                                         const RateTargets& targets,
                                                         double rho) {
    Thresholds th = compute_thresholds(alloc, targets, rho);
    if (!th.all_feasible()) {
        throw InfeasibleUserError(
            th.first_infeasible,
            "psi_thresholds: decodability condition violated for user " +
                std::to_string(th.first_infeasible));
    }
    return {std::move(th.psi), std::move(th.psi_star)};
}

}  // namespace noma::rates
