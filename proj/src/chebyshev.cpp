#include "noma/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noma::chebyshev {

Model build_model(const Geometry& geom, int order_n) {
    if (order_n < 1) throw std::domain_error("build_model: order must be >= 1");

    Model m;
    m.order = order_n;
    m.radius_rd = geom.radius_rd;
    m.alpha = geom.alpha;

    const double r = geom.radius_rd;
    const double w = std::numbers::pi / order_n;

    m.theta.resize(order_n);
    m.c.resize(order_n + 1);
    m.b.resize(order_n + 1);
    m.beta.resize(order_n);
    m.c[0] = 0.0;

    Eigen::ArrayXd raw(order_n);
    for (int n = 1; n <= order_n; ++n) {
        const double theta = std::cos((2.0 * n - 1.0) * std::numbers::pi / (2.0 * order_n));
        const double node = 0.5 * r * (theta + 1.0);
        m.theta[n - 1] = theta;
        m.c[n] = 1.0 + std::pow(node, geom.alpha);
        raw[n - 1] = -w * std::sqrt(1.0 - theta * theta) * node;
    }

    // Rescale so the mixture reaches exactly one at infinity.
    m.normalization = r / -raw.sum();
    m.b.segment(1, order_n) = m.normalization * raw;
    m.beta = -m.b.segment(1, order_n) * m.c.segment(1, order_n);
    m.b[0] = -m.b.segment(1, order_n).sum();
    return m;
}

double cdf_approx(const Model& model, double y) {
    if (y < 0.0) throw std::domain_error("cdf_approx: requires y >= 0");
    const int n = model.order;
    const double tail =
        (model.b.segment(1, n) * (-model.c.segment(1, n) * y).exp()).sum();
    return (model.b[0] + tail) / model.radius_rd;
}

double survival_approx(const Model& model, double y) {
    if (y < 0.0) throw std::domain_error("survival_approx: requires y >= 0");
    const int n = model.order;
    return -(model.b.segment(1, n) * (-model.c.segment(1, n) * y).exp()).sum() /
           model.radius_rd;
}

double pdf_approx(const Model& model, double y) {
    if (y < 0.0) throw std::domain_error("pdf_approx: requires y >= 0");
    const int n = model.order;
    return (model.beta * (-model.c.segment(1, n) * y).exp()).sum() / model.radius_rd;
}

double small_y_cdf(const Model& model, double y) {
    return model.eta() * y;
}

double small_y_pdf(const Model& model, double y) {
    const int n = model.order;
    return (model.beta * (1.0 - model.c.segment(1, n) * y)).sum() / model.radius_rd;
}

}  // namespace noma::chebyshev
