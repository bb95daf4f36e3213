#include <doctest.h>

#include <cmath>
#include <numbers>

#include "noma/chebyshev.hpp"
#include "noma/numerics.hpp"

using namespace noma;

TEST_CASE("single-node model constants follow the node formulas") {
    const Geometry geom(2.0, 2.0, 1);
    const chebyshev::Model m = chebyshev::build_model(geom, 1);
    CHECK(std::abs(m.theta[0]) < 1e-15);  // cos(pi/2)
    CHECK(m.c[0] == 0.0);
    CHECK(m.c[1] == doctest::Approx(2.0).epsilon(1e-15));  // 1 + (R/2)^2
    CHECK(m.b[0] == doctest::Approx(2.0).epsilon(1e-14));  // saturation at one
    CHECK_THROWS_AS(chebyshev::build_model(geom, 0), std::domain_error);
}

TEST_CASE("node constants agree with an independent re-evaluation") {
    const Geometry geom(5.0, 3.0, 1);
    const int order = 10;
    const chebyshev::Model m = chebyshev::build_model(geom, order);
    REQUIRE(m.c.size() == order + 1);
    REQUIRE(m.b.size() == order + 1);
    REQUIRE(m.beta.size() == order);

    double raw_sum = 0.0;
    for (int n = 1; n <= order; ++n) {
        const double theta = std::cos((2.0 * n - 1.0) / (2.0 * order) * std::numbers::pi);
        const double node = 2.5 * (theta + 1.0);
        CHECK(m.theta[n - 1] == doctest::Approx(theta).epsilon(1e-15));
        CHECK(m.c[n] == doctest::Approx(1.0 + node * node * node).epsilon(1e-14));
        raw_sum += std::numbers::pi / order * std::sqrt(1.0 - theta * theta) * node;
        CHECK(m.b[n] < 0.0);
        CHECK(m.beta[n - 1] > 0.0);
        CHECK(m.c[n] >= 1.0);
    }

    // weights cancel exactly and the rescaling matches the raw node sum
    CHECK(std::abs(m.b.sum()) <= 1e-14 * m.b.abs().sum());
    CHECK(m.normalization == doctest::Approx(geom.radius_rd / raw_sum).epsilon(1e-14));
    // node-weight excess of the 10-point rule, frozen from direct evaluation
    CHECK(raw_sum / geom.radius_rd == doctest::Approx(1.004124203953987).epsilon(1e-13));

    // beta_n = -b_n c_n, the derivative identity in coefficient form
    for (int n = 1; n <= order; ++n) {
        CHECK(m.beta[n - 1] == doctest::Approx(-m.b[n] * m.c[n]).epsilon(1e-14));
    }
}

TEST_CASE("cdf endpoints pin down the mixture") {
    for (const auto& [r, a] : {std::pair{5.0, 2.0}, std::pair{5.0, 3.0}, std::pair{10.0, 3.0}}) {
        const chebyshev::Model m = chebyshev::build_model(Geometry(r, a, 1), 10);
        CHECK(std::abs(chebyshev::cdf_approx(m, 0.0)) < 1e-13);
        CHECK(std::abs(chebyshev::cdf_approx(m, 1e6) - 1.0) < 1e-9);
        CHECK_THROWS_AS(chebyshev::cdf_approx(m, -1e-9), std::domain_error);
        CHECK_THROWS_AS(chebyshev::pdf_approx(m, -1e-9), std::domain_error);
    }
}

TEST_CASE("mixture tracks the quadrature-exact law to its shape error") {
    // N = 10 leaves a few-1e-3 shape error; the measured ceilings are frozen
    // here so regressions surface.
    struct Row { double r, a, ceiling; };
    for (const Row& row : {Row{5.0, 2.0, 1.3e-3}, Row{5.0, 3.0, 1.8e-3}, Row{10.0, 3.0, 1.0e-3}}) {
        const Geometry geom(row.r, row.a, 1);
        const chebyshev::Model m = chebyshev::build_model(geom, 10);
        const double u999 = numerics::find_root(
            [&](double y) { return channel::cdf_exact(y, geom) - 0.999; }, 1e-9, 400.0, 1e-10);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double y = u999 * i / 199.0;
            worst = std::max(worst,
                             std::abs(chebyshev::cdf_approx(m, y) - channel::cdf_exact(y, geom)));
        }
        CHECK(worst < row.ceiling);
    }
}

TEST_CASE("density integrates to one and differentiates the cdf") {
    const Geometry geom(5.0, 2.0, 1);
    const chebyshev::Model m = chebyshev::build_model(geom, 10);

    const double mass = numerics::integrate_to_infinity(
        [&](double y) { return chebyshev::pdf_approx(m, y); }, 0.0);
    CHECK(std::abs(mass - 1.0) < 1e-3);
    CHECK(std::abs(mass - 1.0) < 1e-6);  // exact by the rescaling, quadrature noise only

    for (int i = 1; i <= 20; ++i) {
        const double y = 0.05 * i;
        const double h = 1e-5;
        const double fd =
            (chebyshev::cdf_approx(m, y + h) - chebyshev::cdf_approx(m, y - h)) / (2 * h);
        CHECK(std::abs(fd - chebyshev::pdf_approx(m, y)) < 1e-6);
    }
}

TEST_CASE("survival complements the cdf without cancellation") {
    const Geometry geom(5.0, 2.0, 1);
    const chebyshev::Model m = chebyshev::build_model(geom, 10);
    for (double y : {0.0, 0.3, 2.0, 8.0}) {
        CHECK(std::abs(chebyshev::survival_approx(m, y) + chebyshev::cdf_approx(m, y) - 1.0) <
              1e-12);
    }
    // far tail: still strictly positive and decaying
    const double s40 = chebyshev::survival_approx(m, 40.0);
    CHECK(s40 > 0.0);
    CHECK(s40 < 1e-15);
}

TEST_CASE("cdf is nondecreasing out to y = 50") {
    const Geometry geom(5.0, 3.0, 1);
    const chebyshev::Model m = chebyshev::build_model(geom, 10);
    double prev = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double y = 0.1 * i;
        const double v = chebyshev::cdf_approx(m, y);
        CHECK(v >= prev - 1e-6);
        prev = std::max(prev, v);
        // positive density makes the mixture strictly increasing
        CHECK(chebyshev::pdf_approx(m, y) > 0.0);
    }
}

TEST_CASE("small-argument forms are tangent at the origin") {
    const Geometry geom(5.0, 2.0, 1);
    const chebyshev::Model m = chebyshev::build_model(geom, 10);
    CHECK(chebyshev::small_y_cdf(m, 0.0) == 0.0);
    CHECK(chebyshev::small_y_pdf(m, 0.0) ==
          doctest::Approx(chebyshev::pdf_approx(m, 0.0)).epsilon(1e-14));
    CHECK(m.eta() == doctest::Approx(chebyshev::pdf_approx(m, 0.0)).epsilon(1e-14));

    // quadratic error decay: halving y divides the cdf error by ~4
    const double y = 2e-3;
    const double err_full = std::abs(chebyshev::small_y_cdf(m, y) - chebyshev::cdf_approx(m, y));
    const double err_half =
        std::abs(chebyshev::small_y_cdf(m, y / 2) - chebyshev::cdf_approx(m, y / 2));
    const double ratio = err_full / err_half;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}
