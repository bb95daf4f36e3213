#include "noma/validate.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "noma/chebyshev.hpp"
#include "noma/ergodic.hpp"
#include "noma/montecarlo.hpp"
#include "noma/numerics.hpp"
#include "noma/outage.hpp"
#include "noma/rates.hpp"

namespace noma::cli {

namespace {

CheckResult make_check(std::string name, double measured, double tolerance,
                       std::string note = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tolerance;
    r.pass = measured <= tolerance;
    r.note = std::move(note);
    return r;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& opt) {
    std::vector<CheckResult> out;

    const Geometry geom_a(5.0, 3.0, 2);   // outage scenario geometry
    const Geometry geom_b(5.0, 2.0, 2);   // ergodic scenario geometry
    const rates::PowerAllocation alloc2 = rates::default_allocation(2);
    Eigen::ArrayXd t(2);
    t << 0.1, 0.5;
    const rates::RateTargets targets(t);

    chebyshev::Model model_a = chebyshev::build_model(geom_a, opt.quadrature_n);
    const chebyshev::Model model_b = chebyshev::build_model(geom_b, opt.quadrature_n);

    // mixture weights must cancel at y = 0 (test hook may break this on purpose)
    model_a.b[0] += opt.corrupt_b0;
    out.push_back(make_check("chebyshev-weights-cancel",
                             std::abs(model_a.b.sum()) / model_a.b.abs().sum(), 1e-14,
                             "relative |sum b_n|"));
    model_a.b[0] -= opt.corrupt_b0;

    // beta_n = -b_n c_n, definitional
    {
        const int n = model_a.order;
        const double err =
            (model_a.beta + model_a.b.segment(1, n) * model_a.c.segment(1, n))
                .abs()
                .maxCoeff();
        out.push_back(make_check("chebyshev-coefficient-identity", err, 1e-12,
                                 "max |beta_n + b_n c_n|"));
    }

    // CDF endpoints
    out.push_back(make_check("chebyshev-cdf-origin",
                             std::abs(chebyshev::cdf_approx(model_a, 0.0)), 1e-12));
    out.push_back(make_check("chebyshev-cdf-saturation",
                             std::abs(chebyshev::cdf_approx(model_a, 1e6) - 1.0), 1e-9));

    // CDF agreement with the quadrature-exact law on a 200-point grid up to
    // the 0.999 quantile, for the three stock geometries
    {
        double worst = 0.0;
        for (const auto& [r, a] : {std::pair<double, double>{5.0, 2.0},
                                   std::pair<double, double>{5.0, 3.0},
                                   std::pair<double, double>{10.0, 3.0}}) {
            const Geometry g(r, a, 2);
            const chebyshev::Model m = chebyshev::build_model(g, opt.quadrature_n);
            const double u999 = numerics::find_root(
                [&](double y) { return channel::cdf_exact(y, g) - 0.999; }, 1e-9, 400.0,
                1e-10);
            for (int i = 0; i < 200; ++i) {
                const double y = u999 * i / 199.0;
                worst = std::max(worst, std::abs(chebyshev::cdf_approx(m, y) -
                                                 channel::cdf_exact(y, g)));
            }
        }
        out.push_back(make_check("chebyshev-cdf-agreement", worst, 2e-3,
                                 "N=10 mixture shape error"));
    }

    // density normalization, by quadrature
    {
        const double integral = numerics::integrate_to_infinity(
            [&](double y) { return chebyshev::pdf_approx(model_a, y); }, 0.0);
        out.push_back(make_check("chebyshev-pdf-normalization",
                                 std::abs(integral - 1.0), 1e-6));
    }

    // exponential-integral cluster against its defining integral
    {
        double worst = 0.0;
        for (double z : {0.1, 1.0, 10.0}) {
            const double quad = numerics::integrate_to_infinity(
                [z](double t) { return std::exp(-z * t) / (1.0 + t); }, 0.0);
            worst = std::max(worst, std::abs(ergodic::whittaker_term(z) - quad));
        }
        out.push_back(make_check("whittaker-vs-defining-integral", worst, 1e-8));
    }

    // excluded composition term equals one exactly once weights are scaled
    {
        const double excluded = std::pow(model_a.b[0] / model_a.radius_rd, 2);
        out.push_back(make_check("composition-excluded-term",
                                 std::abs(excluded - 1.0), 1e-12));
    }

    // threshold and rate-based outage estimators see the same events
    {
        mc::SimConfig sim{geom_a, alloc2, targets, 100.0, opt.trials, opt.seed,
                          opt.workers, false};
        const mc::EstimatorResult via_psi = mc::estimate_outage(sim, 2);
        const mc::EstimatorResult via_sinr = mc::estimate_outage_via_sinr(sim, 2);
        const double sigma =
            std::max(via_psi.ci95_halfwidth, via_sinr.ci95_halfwidth) / 1.96;
        out.push_back(make_check("outage-estimator-crosscheck",
                                 std::abs(via_psi.mean - via_sinr.mean),
                                 3.0 * sigma + 1e-12, "shared trial streams"));
    }

    // Monte Carlo against the order-statistic integral at 20 dB
    {
        mc::SimConfig sim{geom_a, alloc2, targets, 100.0, opt.trials, opt.seed + 1,
                          opt.workers, false};
        double worst = 0.0;
        double tol = 0.0;
        for (int m = 1; m <= 2; ++m) {
            const mc::EstimatorResult emp = mc::estimate_outage(sim, m);
            const double analytic =
                outage::outage_exact(model_a, geom_a, alloc2, targets, 100.0, m);
            worst = std::max(worst, std::abs(emp.mean - analytic));
            tol = std::max(tol, 3.0 * emp.ci95_halfwidth + 2e-3);
        }
        out.push_back(make_check("outage-analytic-vs-montecarlo", worst, tol));
    }

    // high-SNR closed form tracks the integral at 40 dB
    {
        double worst = 0.0;
        for (int m = 1; m <= 2; ++m) {
            const double exact =
                outage::outage_exact(model_a, geom_a, alloc2, targets, 1e4, m);
            const double high =
                outage::outage_high_snr(model_a, alloc2, targets, 1e4, m);
            worst = std::max(worst, std::abs(high / exact - 1.0));
        }
        out.push_back(make_check("outage-high-snr-ratio", worst, 0.1,
                                 "|ratio - 1| at 40 dB"));
    }

    // analytic log-log slopes recover each user's diversity order
    {
        double worst = 0.0;
        for (int m = 1; m <= 2; ++m) {
            std::vector<std::pair<double, double>> curve;
            for (double snr_db = 30.0; snr_db <= 50.0; snr_db += 5.0) {
                const double rho = std::pow(10.0, snr_db / 10.0);
                curve.emplace_back(
                    rho, outage::outage_exact(model_a, geom_a, alloc2, targets, rho, m));
            }
            worst = std::max(worst,
                             std::abs(outage::fit_diversity_order(curve) - m));
        }
        out.push_back(make_check("diversity-order-slopes", worst, 0.3,
                                 "|slope - m|, 30-50 dB"));
    }

    // high-SNR ergodic formula against Monte Carlo at 35 dB
    {
        const double rho = std::pow(10.0, 3.5);
        mc::SimConfig sim{geom_b, alloc2, std::nullopt, rho, opt.trials, opt.seed + 2,
                          opt.workers, false};
        const double analytic = ergodic::ergodic_high_snr(model_b, alloc2, rho);
        const mc::EstimatorResult emp = mc::estimate_sum_rate(sim, mc::Scheme::noma);
        out.push_back(make_check("ergodic-high-snr-vs-montecarlo",
                                 std::abs(analytic - emp.mean) / emp.mean, 0.05,
                                 "relative error"));
    }

    // scheme ordering at 30 dB
    {
        mc::SimConfig sim{geom_b, alloc2, std::nullopt, 1000.0, opt.trials,
                          opt.seed + 3, opt.workers, false};
        const double noma = mc::estimate_sum_rate(sim, mc::Scheme::noma).mean;
        const double oma = mc::estimate_sum_rate(sim, mc::Scheme::oma_random).mean;
        const double opp = mc::estimate_sum_rate(sim, mc::Scheme::opportunistic).mean;
        const bool ordered = noma > oma && opp >= noma - 1e-12;
        CheckResult r;
        r.name = "scheme-ordering-30db";
        r.pass = ordered;
        r.measured = noma - oma;
        r.tolerance = 0.0;
        r.note = "noma-oma gap (must be > 0), opportunistic is an upper bound";
        out.push_back(std::move(r));
    }

    // median solve of the upper-quantile equation
    {
        const ergodic::UmSolution sol = ergodic::solve_u_m(model_b, 2.0);
        out.push_back(make_check("quantile-root-median",
                                 std::abs(chebyshev::cdf_approx(model_b, sol.root) - 0.5),
                                 1e-8));
    }

    // tail growth function settles near its limit
    {
        const double ratio =
            ergodic::growth_function(model_b, 40.0) / ergodic::growth_limit(model_b);
        out.push_back(make_check("growth-function-limit", std::abs(ratio - 1.0), 0.1,
                                 "|G(40)/limit - 1|"));
    }

    return out;
}

int print_report(std::ostream& os, const std::vector<CheckResult>& results) {
    int failures = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failures;
        std::ostringstream line;
        line << (r.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(36) << r.name
             << " measured=" << std::scientific << std::setprecision(3) << r.measured
             << " tol=" << std::setprecision(3) << r.tolerance;
        if (!r.note.empty()) line << "  (" << r.note << ")";
        os << line.str() << "\n";
    }
    os << (failures == 0 ? "all checks passed" : "checks FAILED") << " ("
       << results.size() - failures << "/" << results.size() << ")\n";
    return failures;
}

}  // namespace noma::cli
