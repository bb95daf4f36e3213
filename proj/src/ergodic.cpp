#include "noma/ergodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "noma/numerics.hpp"

namespace noma::ergodic {

namespace {

constexpr std::uint64_t kCompositionCap = 10000000;

std::uint64_t binomial_u64(int n, int k) {
    // exact for the ranges the cap admits
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

}  // namespace

std::uint64_t composition_count(int m_users, int order_n) {
    if (m_users < 1 || order_n < 1) {
        throw std::domain_error("composition_count: need m_users >= 1 and order_n >= 1");
    }
    long double estimate = 1.0L;
    for (int i = 1; i <= order_n; ++i) {
        estimate *= static_cast<long double>(m_users + i) / i;
        if (estimate > 2.0L * kCompositionCap) break;
    }
    if (estimate > static_cast<long double>(kCompositionCap)) {
        throw std::domain_error(
            "composition_count: composition count exceeds 1e7; reduce the quadrature order");
    }
    return binomial_u64(m_users + order_n, order_n);
}

void for_each_composition(int m_users, int order_n, bool exclude_first_full,
                          const std::function<void(const Eigen::ArrayXi&)>& visit) {
    composition_count(m_users, order_n);  // validates arguments and the cap

    const int parts = order_n + 1;
    Eigen::ArrayXi k = Eigen::ArrayXi::Zero(parts);
    // Descending lexicographic order starting from (M, 0, ..., 0).
    // Step: take one unit off the rightmost positive entry that is not the
    // last, drop it one slot to the right together with everything stored
    // further right.
    k[0] = m_users;
    for (;;) {
        if (!(exclude_first_full && k[0] == m_users)) visit(k);
        int pivot = -1;
        for (int i = parts - 2; i >= 0; --i) {
            if (k[i] > 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) return;  // everything sits in the last slot
        const int carry = k[parts - 1];
        k[parts - 1] = 0;
        k[pivot] -= 1;
        k[pivot + 1] = carry + 1;
    }
}

double whittaker_term(double z) {
    if (!(z > 0.0)) throw std::domain_error("whittaker_term: requires z > 0");
    return numerics::exp_e1_scaled(z);
}

double ergodic_high_snr(const chebyshev::Model& model, const rates::PowerAllocation& alloc,
                        double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("ergodic_high_snr: rho must be > 0");
    const int m_users = alloc.users();
    const int order = model.order;
    const double a_last = alloc.coeffs[m_users - 1];

    double head = 0.0;
    for (int m = 1; m < m_users; ++m) {
        head += std::log2(1.0 + alloc.coeffs[m - 1] / alloc.tail_sum(m));
    }

    const Eigen::ArrayXd log_abs_b = model.b.abs().log();
    const double log_radius = std::log(model.radius_rd);

    // Compensated sequential reduction over the composition list keeps the
    // result bitwise stable.
    double sum = 0.0;
    double comp = 0.0;
    for_each_composition(m_users, order, /*exclude_first_full=*/true,
                         [&](const Eigen::ArrayXi& k) {
        double log_mag = numerics::log_multinomial(m_users, k) - m_users * log_radius;
        double decay = 0.0;
        int negatives = 0;
        for (int n = 0; n <= order; ++n) {
            if (k[n] == 0) continue;
            log_mag += k[n] * log_abs_b[n];
            decay += k[n] * model.c[n];
            if (n >= 1) negatives += k[n];  // b_n < 0 for n >= 1
        }
        const double z = decay / (rho * a_last);
        const double sign = (negatives & 1) ? -1.0 : 1.0;
        const double term = sign * std::exp(log_mag) * whittaker_term(z);
        const double yk = term - comp;
        const double tk = sum + yk;
        comp = (tk - sum) - yk;
        sum = tk;
    });

    return head - sum / std::numbers::ln2;
}

double growth_function(const chebyshev::Model& model, double x) {
    return chebyshev::survival_approx(model, x) / chebyshev::pdf_approx(model, x);
}

double growth_limit(const chebyshev::Model& model) {
    const int order = model.order;
    const double c_last = model.c[order];
    for (int n = 1; n <= order; ++n) {
        if (model.c[n] < c_last) {
            throw std::logic_error("growth_limit: slowest decay is not the last node");
        }
    }
    return -model.b[order] / model.beta[order - 1];
}

UmSolution solve_u_m(const chebyshev::Model& model, double m_users) {
    if (!(m_users >= 2.0)) throw std::domain_error("solve_u_m: requires m_users >= 2");
    const double level = 1.0 / m_users;

    auto gap = [&](double u) { return chebyshev::survival_approx(model, u) - level; };

    double hi = 1.0;
    while (gap(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("solve_u_m: failed to bracket the root");
    }

    UmSolution sol;
    sol.root = numerics::find_root(gap, 0.0, hi, 1e-10);
    sol.leading_order = std::log(m_users) / model.c[model.order];
    return sol;
}

double asymptotic_sum_rate(double rho, int m_users) {
    if (!(rho > 0.0)) throw std::invalid_argument("asymptotic_sum_rate: rho must be > 0");
    if (m_users <= 15) {
        throw std::domain_error(
            "asymptotic_sum_rate: needs more than 15 users for ln ln M to clear one");
    }
    return std::log2(rho * std::log(std::log(static_cast<double>(m_users))));
}

}  // namespace noma::ergodic
