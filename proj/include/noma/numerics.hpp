#ifndef NOMA_NUMERICS_HPP
#define NOMA_NUMERICS_HPP

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace noma::numerics {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_subdivisions = 1000000;
};

/// Thrown when the subdivision budget runs out. Carries the best estimate
/// obtained so far together with a bound on its error.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}

    double best_estimate;
    double error_bound;
};

/// Adaptive Simpson integration of f over the finite interval [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Integral of f over [a, inf), mapped onto [0, 1) through x = a + t/(1-t).
/// The integrand must decay fast enough that f(x)/(1-t)^2 -> 0 at t -> 1;
/// exponential decay is sufficient.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const QuadratureSpec& spec = {});

/// Bisection root finding on [lo, hi]; requires a sign change.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

/// Exponential integral E1(z) for z > 0, to ~1e-12 relative accuracy.
/// Power series below z = 1, continued fraction (modified Lentz) above.
double exp_e1(double z);

/// e^z * E1(z), evaluated without overflow for large z.
double exp_e1_scaled(double z);

/// ln of the multinomial coefficient m_total! / (k_0! ... k_N!).
double log_multinomial(int m_total, const Eigen::ArrayXi& k);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Unweighted least-squares line through (x_i, y_i).
LineFit fit_line(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y);

}  // namespace noma::numerics

#endif  // NOMA_NUMERICS_HPP
