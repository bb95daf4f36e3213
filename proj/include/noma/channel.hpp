#ifndef NOMA_CHANNEL_HPP
#define NOMA_CHANNEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "noma/numerics.hpp"
#include "noma/rng.hpp"

namespace noma {

/// Disc deployment: base station at the center of a disc of radius
/// radius_rd (meters), num_users users dropped uniformly over the area,
/// path-loss exponent alpha. Noise power is normalized to one, so the
/// transmit SNR rho doubles as the transmit power.
struct Geometry {
    Geometry(double radius, double path_loss_alpha, int users);

    double radius_rd;
    double alpha;
    int num_users;
};

/// One Monte Carlo realization: effective channel gains sorted ascending.
struct ChannelDraw {
    Eigen::ArrayXd gains;
    std::uint64_t seed_tag = 0;
};

namespace channel {

/// Deterministic core of the gain draw: distance d = R*sqrt(u) for an
/// area-uniform disc point, effective gain fade / (1 + d^alpha).
double gain_from_draws(double u, double fade, const Geometry& geom);

/// One unordered effective gain |g|^2 / (1 + d^alpha): d = R*sqrt(U) is the
/// distance of an area-uniform point of the disc, |g|^2 unit-mean exponential
/// (Rayleigh amplitude). The bearing never enters and is not sampled.
double sample_unordered_gain(RngStream& rng, const Geometry& geom);

/// num_users independent unordered gains, sorted ascending into `out`.
void sample_sorted_gains(RngStream& rng, const Geometry& geom, Eigen::ArrayXd& out);

ChannelDraw sample_channel_draw(RngStream& rng, const Geometry& geom,
                                std::uint64_t seed_tag = 0);

/// CDF of the unordered gain: (2/R^2) * int_0^R (1 - e^{-(1+z^alpha) y}) z dz,
/// by adaptive quadrature.
double cdf_exact(double y, const Geometry& geom,
                 const numerics::QuadratureSpec& spec = {});

/// Density of the unordered gain, differentiated under the integral sign.
double pdf_exact(double y, const Geometry& geom,
                 const numerics::QuadratureSpec& spec = {});

/// Density of the m-th smallest of m_users i.i.d. gains (m is 1-based),
/// built from any consistent CDF/pdf pair:
///   M!/((m-1)!(M-m)!) F^{m-1} (1-F)^{M-m} f.
double order_statistic_pdf(double x, int m, int m_users,
                           const std::function<double(double)>& cdf,
                           const std::function<double(double)>& pdf);

/// P(m-th smallest <= x) = sum_{k=m}^{M} C(M,k) F^k (1-F)^{M-k}.
double order_statistic_cdf(double x, int m, int m_users,
                           const std::function<double(double)>& cdf);

}  // namespace channel
}  // namespace noma

#endif  // NOMA_CHANNEL_HPP
