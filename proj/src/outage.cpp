#include "noma/outage.hpp"

#include <cmath>
#include <stdexcept>

#include "noma/numerics.hpp"

namespace noma::outage {

double outage_exact(const chebyshev::Model& model, const Geometry& geom,
                    const rates::PowerAllocation& alloc, const rates::RateTargets& targets,
                    double rho, int m, CdfSource source) {
    const int m_users = alloc.users();
    if (m < 1 || m > m_users) throw std::domain_error("outage_exact: user out of range");

    const rates::Thresholds th = rates::compute_thresholds(alloc, targets, rho);
    if (th.forced_outage(m)) return 1.0;

    const double upper = th.psi_star[m - 1];
    if (upper <= 0.0) return 0.0;

    std::function<double(double)> cdf;
    std::function<double(double)> pdf;
    if (source == CdfSource::chebyshev) {
        cdf = [&model](double x) { return chebyshev::cdf_approx(model, x); };
        pdf = [&model](double x) { return chebyshev::pdf_approx(model, x); };
    } else {
        cdf = [&geom](double x) { return channel::cdf_exact(x, geom); };
        pdf = [&geom](double x) { return channel::pdf_exact(x, geom); };
    }

    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-8;
    spec.rel_tol = 1e-8;
    auto integrand = [&](double x) {
        return channel::order_statistic_pdf(x, m, m_users, cdf, pdf);
    };
    return numerics::integrate(integrand, 0.0, upper, spec);
}

double outage_high_snr(const chebyshev::Model& model, const rates::PowerAllocation& alloc,
                       const rates::RateTargets& targets, double rho, int m,
                       bool* feasible_out) {
    const int m_users = alloc.users();
    if (m < 1 || m > m_users) throw std::domain_error("outage_high_snr: user out of range");

    const rates::Thresholds th = rates::compute_thresholds(alloc, targets, rho);
    if (feasible_out != nullptr) *feasible_out = !th.forced_outage(m);
    if (th.forced_outage(m)) return 1.0;

    const double tau = std::exp(std::lgamma(m_users + 1.0) - std::lgamma(static_cast<double>(m)) -
                                std::lgamma(static_cast<double>(m_users - m) + 1.0));
    return tau / m * std::pow(model.eta() * th.psi_star[m - 1], m);
}

double fit_diversity_order(const std::vector<std::pair<double, double>>& rho_prob_curve) {
    if (rho_prob_curve.size() < 3) {
        throw std::invalid_argument("fit_diversity_order: need at least 3 points");
    }
    Eigen::ArrayXd x(rho_prob_curve.size());
    Eigen::ArrayXd y(rho_prob_curve.size());
    double rho_min = rho_prob_curve.front().first;
    double rho_max = rho_min;
    for (std::size_t i = 0; i < rho_prob_curve.size(); ++i) {
        const auto [rho, p] = rho_prob_curve[i];
        if (!(rho > 0.0)) throw std::invalid_argument("fit_diversity_order: rho must be > 0");
        if (!(p > 0.0) || !(p < 1.0)) {
            throw std::invalid_argument(
                "fit_diversity_order: probabilities must lie strictly inside (0, 1)");
        }
        rho_min = std::min(rho_min, rho);
        rho_max = std::max(rho_max, rho);
        x[static_cast<Eigen::Index>(i)] = std::log10(rho);
        y[static_cast<Eigen::Index>(i)] = std::log10(p);
    }
    if (10.0 * std::log10(rho_max / rho_min) < 20.0 - 1e-9) {
        throw std::invalid_argument("fit_diversity_order: points must span >= 20 dB");
    }
    return -numerics::fit_line(x, y).slope;
}

}  // namespace noma::outage
