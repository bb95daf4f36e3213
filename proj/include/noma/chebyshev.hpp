#ifndef NOMA_CHEBYSHEV_HPP
#define NOMA_CHEBYSHEV_HPP

#include <Eigen/Dense>

#include "noma/channel.hpp"

namespace noma::chebyshev {

/// Gauss-Chebyshev exponential-mixture model of the unordered-gain law:
///
///   F(y) = (1/R) sum_{n=0}^{N} b_n e^{-c_n y},    c_0 = 0
///   f(y) = (1/R) sum_{n=1}^{N} beta_n e^{-c_n y},  beta_n = -b_n c_n
///
/// with first-kind nodes theta_n = cos((2n-1) pi / (2N)), weight pi/N, and
/// c_n = 1 + (R/2 (theta_n + 1))^alpha. The raw node weights make the
/// mixture saturate at sum|b_n|/R = 1 + pi^2/(24 N^2) + O(N^-4) rather than
/// at one, so b and beta carry a common rescaling (`normalization`) chosen
/// such that F(0) = 0 and F(inf) = 1 hold exactly; every downstream closed
/// form assumes that limit. Immutable after build, shareable across threads.
struct Model {
    int order = 0;              // N
    double radius_rd = 0.0;
    double alpha = 0.0;
    double normalization = 1.0;  // scale applied to the raw node weights
    Eigen::ArrayXd theta;        // size N
    Eigen::ArrayXd c;            // size N+1, c[0] = 0, descending for n >= 1
    Eigen::ArrayXd b;            // size N+1, b[0] = -sum_{n>=1} b_n = R
    Eigen::ArrayXd beta;         // size N, aligned with c[1..N]

    /// Density at the origin, (1/R) sum beta_n.
    double eta() const { return beta.sum() / radius_rd; }
};

Model build_model(const Geometry& geom, int order_n);

/// F(y). Not clamped: the value may stray outside [0,1] only by the
/// quadrature shape error.
double cdf_approx(const Model& model, double y);

/// 1 - F(y) straight from the exponential tail terms, free of the
/// cancellation that 1 - cdf_approx(y) hits once the tail is ~1e-16.
double survival_approx(const Model& model, double y);

double pdf_approx(const Model& model, double y);

/// First-order forms near the origin: F ~ eta*y and
/// f ~ (1/R) sum beta_n (1 - c_n y).
double small_y_cdf(const Model& model, double y);
double small_y_pdf(const Model& model, double y);

}  // namespace noma::chebyshev

#endif  // NOMA_CHEBYSHEV_HPP
