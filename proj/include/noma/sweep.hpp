#ifndef NOMA_SWEEP_HPP
#define NOMA_SWEEP_HPP

#include <string>
#include <vector>

#include "noma/ergodic.hpp"
#include "noma/montecarlo.hpp"
#include "noma/outage.hpp"
#include "noma/scenario.hpp"

namespace noma::cli {

/// One outage-mode row: everything measured and derived at a single SNR
/// point. per_user is ordered weakest first.
struct OutageRow {
    double snr_db = 0.0;
    std::vector<outage::OutageReport> per_user;
    double oma_analytic = 0.0;
    mc::EstimatorResult oma_empirical;
};

struct ErgodicRow {
    double snr_db = 0.0;
    ergodic::ErgodicReport report;
};

/// SNR point i of a run simulates with seed + i so plotted points stay
/// statistically independent while remaining reproducible.
std::vector<OutageRow> run_outage_sweep(const ScenarioConfig& config);
std::vector<ErgodicRow> run_ergodic_sweep(const ScenarioConfig& config);

std::string outage_csv(const ScenarioConfig& config, const std::vector<OutageRow>& rows);
std::string ergodic_csv(const ScenarioConfig& config, const std::vector<ErgodicRow>& rows);
std::string outage_json(const ScenarioConfig& config, const std::vector<OutageRow>& rows);
std::string ergodic_json(const ScenarioConfig& config, const std::vector<ErgodicRow>& rows);

/// Long-format grid over (users, alpha, snr): ergodic columns without
/// targets, per-user outage columns with them.
struct GridResult {
    std::string csv;
    std::string json;
};
GridResult run_grid_sweep(const ScenarioConfig& config);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace noma::cli

#endif  // NOMA_SWEEP_HPP
