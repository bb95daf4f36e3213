#include "noma/numerics.hpp"

#include <cmath>
#include <limits>

namespace noma::numerics {

namespace {

struct AdaptiveState {
    const std::function<double(double)>& f;
    long splits_left;
    int max_depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with Richardson correction. The local tolerance
// halves with every split so the global error stays below the request.
double adapt(AdaptiveState& st, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;

    if (std::abs(delta) <= 15.0 * tol || depth >= st.max_depth) {
        return left + right + delta / 15.0;
    }
    if (st.splits_left <= 0) {
        throw QuadratureError("integrate: subdivision budget exhausted",
                              left + right + delta / 15.0, std::abs(delta));
    }
    st.splits_left -= 1;
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: requires a < b");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("integrate: endpoints must be finite");
    }

    // A fixed initial partition guards against features far narrower than
    // the interval, which the one-shot error estimate cannot see.
    constexpr int kPanels = 16;
    double samples[2 * kPanels + 1];
    for (int i = 0; i <= 2 * kPanels; ++i) {
        samples[i] = f(a + (b - a) * i / (2.0 * kPanels));
    }

    double coarse = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        const double lo = a + (b - a) * p / kPanels;
        const double hi = a + (b - a) * (p + 1) / kPanels;
        coarse += simpson(lo, hi, samples[2 * p], samples[2 * p + 1], samples[2 * p + 2]);
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(coarse));

    AdaptiveState st{f, spec.max_subdivisions, 52};
    double total = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        const double lo = a + (b - a) * p / kPanels;
        const double hi = a + (b - a) * (p + 1) / kPanels;
        const double whole =
            simpson(lo, hi, samples[2 * p], samples[2 * p + 1], samples[2 * p + 2]);
        total += adapt(st, lo, hi, samples[2 * p], samples[2 * p + 1], samples[2 * p + 2],
                       whole, tol / kPanels, 0);
    }
    return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const QuadratureSpec& spec) {
    auto mapped = [&](double t) -> double {
        if (t >= 1.0) return 0.0;  // decaying integrand: the Jacobian blowup loses
        const double u = 1.0 - t;
        return f(a + t / u) / (u * u);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    if (!(lo < hi)) throw std::invalid_argument("find_root: requires lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("find_root: no sign change over [lo, hi]");
    }
    for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval below ulp resolution
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double e1_series(double z) {
    // E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    double sum = -kEulerGamma - std::log(z);
    double zk = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= 64; ++k) {
        zk *= z;
        fact *= k;
        const double term = ((k & 1) ? 1.0 : -1.0) * zk / (k * fact);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double e1_cf_scaled(double z) {
    // e^z E1(z) = 1 / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...))), modified Lentz.
    constexpr double tiny = 1e-300;
    const double b0 = z + 1.0;
    double fval = (b0 != 0.0) ? b0 : tiny;
    double C = fval;
    double D = 0.0;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * static_cast<double>(i);
        const double bn = b0 + 2.0 * i;
        D = bn + an * D;
        if (D == 0.0) D = tiny;
        C = bn + an / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        fval *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return 1.0 / fval;
}

}  // namespace

double exp_e1(double z) {
    if (!(z > 0.0)) throw std::domain_error("exp_e1: requires z > 0");
    if (z < 1.0) return e1_series(z);
    return std::exp(-z) * e1_cf_scaled(z);
}

double exp_e1_scaled(double z) {
    if (!(z > 0.0)) throw std::domain_error("exp_e1_scaled: requires z > 0");
    if (z < 1.0) return std::exp(z) * e1_series(z);
    return e1_cf_scaled(z);
}

double log_multinomial(int m_total, const Eigen::ArrayXi& k) {
    if (m_total < 0) throw std::invalid_argument("log_multinomial: negative total");
    long sum = 0;
    for (Eigen::Index i = 0; i < k.size(); ++i) {
        if (k[i] < 0) throw std::invalid_argument("log_multinomial: negative count");
        sum += k[i];
    }
    if (sum != m_total) {
        throw std::invalid_argument("log_multinomial: counts do not sum to total");
    }
    double result = std::lgamma(static_cast<double>(m_total) + 1.0);
    for (Eigen::Index i = 0; i < k.size(); ++i) {
        result -= std::lgamma(static_cast<double>(k[i]) + 1.0);
    }
    return result;
}

LineFit fit_line(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line: need >= 2 points of equal length");
    }
    const double mx = x.mean();
    const double my = y.mean();
    const double sxx = ((x - mx) * (x - mx)).sum();
    if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    const double sxy = ((x - mx) * (y - my)).sum();
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

}  // namespace noma::numerics
