#ifndef NOMA_OUTAGE_HPP
#define NOMA_OUTAGE_HPP

#include <limits>
#include <utility>
#include <vector>

#include "noma/chebyshev.hpp"
#include "noma/rates.hpp"

namespace noma::outage {

/// Which distribution pair feeds the order-statistic integral: the
/// exponential-mixture model (the analytic path) or the quadrature-exact
/// CDF/pdf (reference values that isolate the mixture error).
enum class CdfSource { chebyshev, exact };

/// Per-user outage figures. `diversity_slope` stays NaN until a curve fit
/// fills it in.
struct OutageReport {
    double analytic_exact = 0.0;
    double analytic_high_snr = 0.0;
    double empirical = 0.0;
    double empirical_ci95 = 0.0;
    bool feasible = true;
    double diversity_slope = std::numeric_limits<double>::quiet_NaN();
};

/// Outage probability of the m-th weakest user (1-based): the order-statistic
/// density integrated over [0, psi*_m] to 1e-8. Returns one outright if any
/// user j <= m fails the decodability condition.
double outage_exact(const chebyshev::Model& model, const Geometry& geom,
                    const rates::PowerAllocation& alloc, const rates::RateTargets& targets,
                    double rho, int m, CdfSource source = CdfSource::chebyshev);

/// High-SNR closed form (tau_m / m) (eta psi*_m)^m; decays as rho^{-m}, which
/// is the user's diversity order. Returns one (and clears *feasible_out) when
/// the condition fails.
double outage_high_snr(const chebyshev::Model& model, const rates::PowerAllocation& alloc,
                       const rates::RateTargets& targets, double rho, int m,
                       bool* feasible_out = nullptr);

/// Least-squares slope of log10 P against log10 rho, negated so the expected
/// value is the diversity order. Points must satisfy 0 < P < 1 and span at
/// least 20 dB.
double fit_diversity_order(const std::vector<std::pair<double, double>>& rho_prob_curve);

}  // namespace noma::outage

#endif  // NOMA_OUTAGE_HPP
