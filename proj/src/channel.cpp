#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma {

Geometry::Geometry(double radius, double path_loss_alpha, int users)
    : radius_rd(radius), alpha(path_loss_alpha), num_users(users) {
    if (!(radius_rd > 0.0)) throw std::invalid_argument("Geometry: radius must be > 0");
    if (!(alpha >= 1.0)) throw std::invalid_argument("Geometry: alpha must be >= 1");
    if (num_users < 1) throw std::invalid_argument("Geometry: need at least one user");
}

namespace channel {

double gain_from_draws(double u, double fade, const Geometry& geom) {
    const double d = geom.radius_rd * std::sqrt(u);
    return fade / (1.0 + std::pow(d, geom.alpha));
}

double sample_unordered_gain(RngStream& rng, const Geometry& geom) {
    const double u = rng.next_uniform();
    const double fade = rng.next_unit_exponential();
    return gain_from_draws(u, fade, geom);
}

void sample_sorted_gains(RngStream& rng, const Geometry& geom, Eigen::ArrayXd& out) {
    out.resize(geom.num_users);
    for (int m = 0; m < geom.num_users; ++m) {
        out[m] = sample_unordered_gain(rng, geom);
    }
    std::sort(out.data(), out.data() + out.size());
}

ChannelDraw sample_channel_draw(RngStream& rng, const Geometry& geom,
                                std::uint64_t seed_tag) {
    ChannelDraw draw;
    draw.seed_tag = seed_tag;
    sample_sorted_gains(rng, geom, draw.gains);
    return draw;
}

double cdf_exact(double y, const Geometry& geom, const numerics::QuadratureSpec& spec) {
    if (y < 0.0) throw std::domain_error("cdf_exact: requires y >= 0");
    if (y == 0.0) return 0.0;
    const double r = geom.radius_rd;
    const double alpha = geom.alpha;
    auto integrand = [y, alpha](double z) {
        return (1.0 - std::exp(-(1.0 + std::pow(z, alpha)) * y)) * z;
    };
    return 2.0 / (r * r) * numerics::integrate(integrand, 0.0, r, spec);
}

double pdf_exact(double y, const Geometry& geom, const numerics::QuadratureSpec& spec) {
    if (y < 0.0) throw std::domain_error("pdf_exact: requires y >= 0");
    const double r = geom.radius_rd;
    const double alpha = geom.alpha;
    auto integrand = [y, alpha](double z) {
        const double c = 1.0 + std::pow(z, alpha);
        return c * std::exp(-c * y) * z;
    };
    return 2.0 / (r * r) * numerics::integrate(integrand, 0.0, r, spec);
}

double order_statistic_pdf(double x, int m, int m_users,
                           const std::function<double(double)>& cdf,
                           const std::function<double(double)>& pdf) {
    if (m < 1 || m > m_users) {
        throw std::domain_error("order_statistic_pdf: order out of range");
    }
    const double big_f = cdf(x);
    const double tau = std::exp(std::lgamma(m_users + 1.0) - std::lgamma(static_cast<double>(m)) -
                                std::lgamma(static_cast<double>(m_users - m) + 1.0));
    return tau * std::pow(big_f, m - 1) * std::pow(1.0 - big_f, m_users - m) * pdf(x);
}

double order_statistic_cdf(double x, int m, int m_users,
                           const std::function<double(double)>& cdf) {
    if (m < 1 || m > m_users) {
        throw std::domain_error("order_statistic_cdf: order out of range");
    }
    const double big_f = cdf(x);
    double total = 0.0;
    for (int k = m; k <= m_users; ++k) {
        const double log_binom = std::lgamma(m_users + 1.0) -
                                 std::lgamma(k + 1.0) -
                                 std::lgamma(static_cast<double>(m_users - k) + 1.0);
        total += std::exp(log_binom) * std::pow(big_f, k) * std::pow(1.0 - big_f, m_users - k);
    }
    return total;
}

}  // namespace channel
}  // namespace noma
