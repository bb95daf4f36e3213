#ifndef NOMA_ERGODIC_HPP
#define NOMA_ERGODIC_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "noma/chebyshev.hpp"
#include "noma/montecarlo.hpp"
#include "noma/rates.hpp"

namespace noma::ergodic {

/// Sum rates around one operating point: Monte Carlo NOMA rate, the high-SNR
/// closed form, the large-user-count asymptote, and the two baselines.
struct ErgodicReport {
    double high_snr_rate = 0.0;
    mc::EstimatorResult empirical;
    double asymptote = 0.0;  // NaN when the user count is too small
    mc::EstimatorResult baseline_random;
    mc::EstimatorResult baseline_opportunistic;
};

/// Number of weak compositions of m_users into order_n + 1 parts,
/// C(M + N, N). Throws once the count would exceed 1e7; shrink N.
std::uint64_t composition_count(int m_users, int order_n);

/// Visits every composition (k_0, ..., k_N) with sum k = m_users exactly once,
/// lexicographically descending from (M, 0, ..., 0). With exclude_first_full
/// the k_0 = M composition is skipped.
void for_each_composition(int m_users, int order_n, bool exclude_first_full,
                          const std::function<void(const Eigen::ArrayXi&)>& visit);

/// e^{z/2} z^{-1/2} W_{-1/2,0}(z), which collapses to e^z E1(z). This is the
/// kernel of every tail integral int_0^inf e^{-Sx}/(1 + rho a x) dx below.
double whittaker_term(double z);

/// High-SNR ergodic sum rate in bits per channel use:
///
///   sum_{m<M} log2(1 + a_m / atil_m)
///     - (1/(R^M ln 2)) sum_{k, k_0 != M} multinom(M; k) prod b_n^{k_n}
///         e^z E1(z),   z = (sum k_n c_n) / (rho a_M).
///
/// Multinomials and the signed product run in log-magnitude + sign form;
/// the composition sum is sequential in enumeration order with compensated
/// accumulation, so the result is bitwise reproducible.
double ergodic_high_snr(const chebyshev::Model& model, const rates::PowerAllocation& alloc,
                        double rho);

/// Tail growth function (1 - F(x)) / f(x).
double growth_function(const chebyshev::Model& model, double x);

/// Its limit -b_N / beta_N = 1/c_N, taken at the node with the smallest decay
/// rate.
double growth_limit(const chebyshev::Model& model);

struct UmSolution {
    double root = 0.0;           // solves 1 - F(u) = 1/m_users
    double leading_order = 0.0;  // ln(m_users) / c_N
};

/// Bracketing + bisection solve of the upper-quantile equation to 1e-10,
/// alongside the leading-order prediction for comparison.
UmSolution solve_u_m(const chebyshev::Model& model, double m_users);

/// Large-system sum-rate trend log2(rho * ln ln M); needs m_users >= 16 for
/// the double logarithm to clear one.
double asymptotic_sum_rate(double rho, int m_users);

}  // namespace noma::ergodic

#endif  // NOMA_ERGODIC_HPP
