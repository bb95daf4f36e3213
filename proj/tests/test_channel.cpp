#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "noma/channel.hpp"
#include "noma/chebyshev.hpp"

using namespace noma;

namespace {

// sup over a dense grid of |ecdf - F|, with samples sorted ascending
double grid_sup_distance(const std::vector<double>& sorted, double upper,
                         const std::function<double(double)>& cdf, int grid_points) {
    double worst = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (int i = 1; i <= grid_points; ++i) {
        const double y = upper * i / grid_points;
        const auto below = std::upper_bound(sorted.begin(), sorted.end(), y);
        const double ecdf = static_cast<double>(below - sorted.begin()) / n;
        worst = std::max(worst, std::abs(ecdf - cdf(y)));
    }
    return worst;
}

}  // namespace

TEST_CASE("geometry construction enforces its invariants") {
    CHECK_THROWS_AS(Geometry(0.0, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Geometry(5.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(Geometry(5.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("gain transform at hand-checkable draws") {
    const Geometry geom(1.0, 2.0, 1);
    // disc center: no path loss at all
    CHECK(channel::gain_from_draws(0.0, 1.0, geom) == doctest::Approx(1.0).epsilon(1e-15));
    // disc edge with R = 1, alpha = 2: denominator exactly 2
    CHECK(channel::gain_from_draws(1.0, 2.0, geom) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cdf_exact endpoints and the alpha=2 closed form") {
    const Geometry geom(5.0, 2.0, 1);
    CHECK(channel::cdf_exact(0.0, geom) == 0.0);
    CHECK(channel::cdf_exact(200.0, geom) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(channel::cdf_exact(-0.1, geom), std::domain_error);

    // alpha = 2 antiderivative: 1 - F = e^{-y} (1 - e^{-R^2 y}) / (R^2 y)
    const double r2 = 25.0;
    for (double y : {0.05, 0.3, 1.0, 2.5}) {
        const double closed = 1.0 - std::exp(-y) * (1.0 - std::exp(-r2 * y)) / (r2 * y);
        CHECK(std::abs(channel::cdf_exact(y, geom) - closed) < 1e-8);
    }
}

TEST_CASE("cdf_exact is nondecreasing and bounded") {
    const Geometry geom(5.0, 3.0, 1);
    double prev = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double y = 0.1 * i;
        const double v = channel::cdf_exact(y, geom);
        CHECK(v >= prev - 1e-12);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
        prev = v;
    }
}

TEST_CASE("pdf_exact is the derivative of cdf_exact") {
    const Geometry geom(5.0, 2.0, 1);
    for (double y : {0.01, 0.1, 0.5, 1.5}) {
        const double h = 1e-6;
        const double fd = (channel::cdf_exact(y + h, geom) - channel::cdf_exact(y - h, geom)) / (2 * h);
        CHECK(std::abs(fd - channel::pdf_exact(y, geom)) < 1e-6);
    }
}

TEST_CASE("sampled gains follow the exact law") {
    const Geometry geom(5.0, 3.0, 1);
    const int n = 1000000;
    std::vector<double> samples(n);
    RngStream rng(99, 0);
    for (int i = 0; i < n; ++i) samples[i] = channel::sample_unordered_gain(rng, geom);
    std::sort(samples.begin(), samples.end());

    // dense-grid sup distance against the quadrature CDF
    const double upper = samples[static_cast<std::size_t>(n * 0.9995)];
    const double d = grid_sup_distance(samples, upper,
                                       [&](double y) { return channel::cdf_exact(y, geom); }, 400);
    CHECK(d < 0.002);
}

TEST_CASE("channel draws sort ascending and preserve the raw multiset") {
    const Geometry geom(5.0, 2.0, 6);
    RngStream rng(4, 9);
    RngStream replay(4, 9);
    const ChannelDraw draw = channel::sample_channel_draw(rng, geom, 42);
    CHECK(draw.seed_tag == 42);
    REQUIRE(draw.gains.size() == 6);
    std::vector<double> raw(6);
    for (int m = 0; m < 6; ++m) raw[m] = channel::sample_unordered_gain(replay, geom);
    std::sort(raw.begin(), raw.end());
    for (int m = 0; m < 6; ++m) {
        CHECK(draw.gains[m] == raw[m]);
        if (m > 0) CHECK(draw.gains[m] >= draw.gains[m - 1]);
    }

    const Geometry single(5.0, 2.0, 1);
    RngStream rng1(4, 9);
    CHECK(channel::sample_channel_draw(rng1, single).gains.size() == 1);
}

TEST_CASE("the largest of M draws follows F^M") {
    const Geometry geom(5.0, 2.0, 2);
    const int n = 1000000;
    std::vector<double> maxima(n);
    RngStream rng(7, 0);
    Eigen::ArrayXd gains;
    for (int i = 0; i < n; ++i) {
        channel::sample_sorted_gains(rng, geom, gains);
        maxima[i] = gains[1];
    }
    std::sort(maxima.begin(), maxima.end());
    const double upper = maxima[static_cast<std::size_t>(n * 0.9995)];
    const double d = grid_sup_distance(
        maxima, upper,
        [&](double y) { return std::pow(channel::cdf_exact(y, geom), 2); }, 400);
    CHECK(d < 0.002);
}

TEST_CASE("order-statistic density: degenerate orders and normalization") {
    const Geometry geom(5.0, 2.0, 1);
    const chebyshev::Model model = chebyshev::build_model(geom, 10);
    auto cdf = [&](double x) { return chebyshev::cdf_approx(model, x); };
    auto pdf = [&](double x) { return chebyshev::pdf_approx(model, x); };

    // single draw: the order statistic is the draw itself
    for (double x : {0.05, 0.4, 1.2}) {
        CHECK(channel::order_statistic_pdf(x, 1, 1, cdf, pdf) ==
              doctest::Approx(pdf(x)).epsilon(1e-12));
    }

    // M = 2, m = 2 at the median: 2 F f = f
    auto half = [](double) { return 0.5; };
    auto unit = [](double) { return 0.7; };
    CHECK(channel::order_statistic_pdf(1.0, 2, 2, half, unit) ==
          doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(channel::order_statistic_pdf(0.5, 0, 3, cdf, pdf), std::domain_error);
    CHECK_THROWS_AS(channel::order_statistic_pdf(0.5, 4, 3, cdf, pdf), std::domain_error);

    // every order-statistic density integrates to one, M <= 5
    for (int m_users = 1; m_users <= 5; ++m_users) {
        for (int m = 1; m <= m_users; ++m) {
            const double mass = numerics::integrate_to_infinity(
                [&](double x) {
                    return channel::order_statistic_pdf(x, m, m_users, cdf, pdf);
                },
                0.0);
            CHECK(std::abs(mass - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("order-statistic CDF matches the integrated density") {
    const Geometry geom(5.0, 3.0, 1);
    const chebyshev::Model model = chebyshev::build_model(geom, 10);
    auto cdf = [&](double x) { return chebyshev::cdf_approx(model, x); };
    auto pdf = [&](double x) { return chebyshev::pdf_approx(model, x); };
    for (int m = 1; m <= 3; ++m) {
        for (double x : {0.02, 0.1, 0.6}) {
            const double integrated = numerics::integrate(
                [&](double t) { return channel::order_statistic_pdf(t, m, 3, cdf, pdf); }, 0.0, x);
            CHECK(std::abs(integrated - channel::order_statistic_cdf(x, m, 3, cdf)) < 1e-8);
        }
    }
}

TEST_CASE("each sorted gain tracks its order-statistic law") {
    const Geometry geom(5.0, 3.0, 3);
    const int n = 100000;
    std::vector<std::vector<double>> per_user(3, std::vector<double>(n));
    RngStream rng(15, 3);
    Eigen::ArrayXd gains;
    for (int i = 0; i < n; ++i) {
        channel::sample_sorted_gains(rng, geom, gains);
        for (int m = 0; m < 3; ++m) per_user[m][i] = gains[m];
    }
    auto cdf = [&](double y) { return channel::cdf_exact(y, geom); };
    for (int m = 1; m <= 3; ++m) {
        auto& samples = per_user[m - 1];
        std::sort(samples.begin(), samples.end());
        const double upper = samples[static_cast<std::size_t>(n * 0.999)];
        const double d = grid_sup_distance(
            samples, upper,
            [&](double y) { return channel::order_statistic_cdf(y, m, 3, cdf); }, 300);
        CHECK(d < 0.01);
    }
}
