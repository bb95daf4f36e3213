#ifndef NOMA_VALIDATE_HPP
#define NOMA_VALIDATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace noma::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidateOptions {
    std::uint64_t seed = 424242;
    std::uint64_t trials = 100000;
    int workers = 0;
    int quadrature_n = 10;
    /// Test hook: perturbation added to the constant mixture weight before
    /// the sum check, to prove the check can fail.
    double corrupt_b0 = 0.0;
};

/// Cross-validation battery over built-in scenarios: distribution agreement,
/// special-function identities, estimator consistency, slope fits.
std::vector<CheckResult> run_validation(const ValidateOptions& options = {});

/// Prints one line per check plus a summary; returns the failure count.
int print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace noma::cli

#endif  // NOMA_VALIDATE_HPP
