#ifndef NOMA_SCENARIO_HPP
#define NOMA_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/rates.hpp"

namespace noma::cli {

/// Rejected configuration input; the message carries file/line context when
/// it is available.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Full experiment description, loaded from a versioned JSON document.
/// SNR is expressed in dB on every external surface and converted to the
/// linear rho = 10^(dB/10) internally.
struct ScenarioConfig {
    int schema = 1;
    int users = 2;
    double radius_m = 5.0;
    double alpha = 3.0;
    std::vector<double> snr_db;
    std::optional<std::vector<double>> alloc;         // absent = default rule
    std::optional<std::vector<double>> targets_bpcu;  // absent = opportunistic rates
    int quadrature_n = 10;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    bool oma_split = false;
    int workers = 0;
    std::vector<int> sweep_users;     // grid for the sweep command
    std::vector<double> sweep_alpha;  // ditto
};

/// Parse + validate a JSON config. `origin` names the source in errors.
ScenarioConfig parse_config(const std::string& json_text, const std::string& origin);

ScenarioConfig load_config(const std::string& path);

/// Cross-field validation; throws ConfigError.
void validate_config(const ScenarioConfig& config);

Geometry geometry_of(const ScenarioConfig& config);
rates::PowerAllocation resolve_alloc(const ScenarioConfig& config);

inline double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

}  // namespace noma::cli

#endif  // NOMA_SCENARIO_HPP
