#include <doctest.h>

#include <cmath>
#include <string>

#include "noma/scenario.hpp"
#include "noma/sweep.hpp"
#include "noma/validate.hpp"

using namespace noma;

namespace {

const char* kOutageConfig = R"({
  "schema": 1,
  "users": 2,
  "radius_m": 5.0,
  "alpha": 3.0,
  "snr_db": [10, 20],
  "alloc": "default",
  "targets_bpcu": [0.1, 0.5],
  "quadrature_n": 10,
  "trials": 4000,
  "seed": 99,
  "workers": 1
})";

}  // namespace

TEST_CASE("config parsing: round trip of a full scenario") {
    const cli::ScenarioConfig cfg = cli::parse_config(kOutageConfig, "inline");
    CHECK(cfg.users == 2);
    CHECK(cfg.radius_m == 5.0);
    CHECK(cfg.alpha == 3.0);
    CHECK(cfg.snr_db.size() == 2);
    CHECK_FALSE(cfg.alloc.has_value());  // "default" rule
    REQUIRE(cfg.targets_bpcu.has_value());
    CHECK((*cfg.targets_bpcu)[1] == 0.5);
    CHECK(cfg.trials == 4000);
    CHECK(cfg.seed == 99);
    CHECK_FALSE(cfg.oma_split);

    const auto alloc = cli::resolve_alloc(cfg);
    CHECK(alloc.coeffs[0] == doctest::Approx(0.8));
}

TEST_CASE("config parsing: explicit allocation vector") {
    const auto cfg = cli::parse_config(
        R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [30],
            "alloc": [0.75, 0.25]})",
        "inline");
    REQUIRE(cfg.alloc.has_value());
    CHECK(cli::resolve_alloc(cfg).coeffs[1] == doctest::Approx(0.25));
}

TEST_CASE("config parsing: errors carry the origin and the offense") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            cli::parse_config(text, "cfg.json");
            FAIL("expected ConfigError for ", fragment);
        } catch (const cli::ConfigError& e) {
            const std::string what = e.what();
            INFO(what);
            CHECK(what.find("cfg.json") != std::string::npos);
            CHECK(what.find(fragment) != std::string::npos);
        }
    };

    expect_error("{\n  \"users\": 2,\n  broken\n}", "line 3");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": []})", "snr_db");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2})", "snr_db");
    expect_error(R"({"users": 0, "radius_m": 5, "alpha": 2, "snr_db": [10]})", "users");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [10],
                     "alloc": [1.0]})",
                 "alloc");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [10],
                     "targets_bpcu": [1.0]})",
                 "targets_bpcu");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [10], "schema": 2})",
                 "schema");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [10], "typo": 1})",
                 "typo");
    expect_error(R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [10], "trials": -4})",
                 "trials");
    CHECK_THROWS_AS(cli::load_config("/nonexistent/path.json"), cli::ConfigError);
}

TEST_CASE("outage sweep emits stable, well-formed tables") {
    const cli::ScenarioConfig cfg = cli::parse_config(kOutageConfig, "inline");
    const auto rows = cli::run_outage_sweep(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        REQUIRE(row.per_user.size() == 2);
        for (const auto& rep : row.per_user) {
            CHECK(rep.feasible);
            CHECK(rep.analytic_exact >= 0.0);
            CHECK(rep.analytic_exact <= 1.0);
            CHECK(rep.empirical >= 0.0);
            CHECK(rep.empirical <= 1.0);
            CHECK(rep.empirical_ci95 >= 0.0);
        }
        CHECK(row.oma_analytic >= 0.0);
        CHECK(row.oma_analytic <= 1.0);
    }

    const std::string csv = cli::outage_csv(cfg, rows);
    CHECK(csv.rfind("snr_db,trials,seed,oma_analytic,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

    // byte-identical across worker counts
    auto cfg8 = cfg;
    cfg8.workers = 8;
    CHECK(cli::outage_csv(cfg, cli::run_outage_sweep(cfg8)) == csv);

    const std::string json_text = cli::outage_json(cfg, rows);
    CHECK(json_text.find("\"git_commit\"") != std::string::npos);
    CHECK(json_text.find("\"rows\"") != std::string::npos);
}

TEST_CASE("ergodic sweep: single user point has coinciding schemes") {
    const auto cfg = cli::parse_config(
        R"({"users": 1, "radius_m": 5, "alpha": 2, "snr_db": [30], "trials": 20000,
            "seed": 7, "workers": 1})",
        "inline");
    const auto rows = cli::run_ergodic_sweep(cfg);
    REQUIRE(rows.size() == 1);
    const auto& rep = rows[0].report;
    CHECK(rep.empirical.mean == rep.baseline_opportunistic.mean);
    CHECK(rep.empirical.mean == rep.baseline_random.mean);
    CHECK(rep.empirical.mean >= 0.0);
    CHECK(rep.baseline_random.mean >= 0.0);
    CHECK(std::isnan(rep.asymptote));  // too few users for the asymptote
    CHECK(rep.high_snr_rate > 0.0);

    const std::string csv = cli::ergodic_csv(cfg, rows);
    CHECK(csv.rfind("snr_db,trials,seed,noma_empirical,", 0) == 0);
}

TEST_CASE("command/config mismatches are rejected") {
    const auto ergodic_cfg = cli::parse_config(
        R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [30]})", "inline");
    CHECK_THROWS_AS(cli::run_outage_sweep(ergodic_cfg), cli::ConfigError);

    const auto outage_cfg = cli::parse_config(kOutageConfig, "inline");
    CHECK_THROWS_AS(cli::run_ergodic_sweep(outage_cfg), cli::ConfigError);
}

TEST_CASE("outage sweep fills per-user diversity slopes over wide sweeps") {
    auto cfg = cli::parse_config(kOutageConfig, "inline");
    cfg.snr_db = {30, 35, 40, 45, 50};
    cfg.trials = 1000;
    const auto rows = cli::run_outage_sweep(cfg);
    REQUIRE(!rows.empty());
    const double s1 = rows[0].per_user[0].diversity_slope;
    const double s2 = rows[0].per_user[1].diversity_slope;
    CHECK(std::abs(s1 - 1.0) < 0.3);
    CHECK(std::abs(s2 - 2.0) < 0.3);
    CHECK(cli::outage_json(cfg, rows).find("diversity_slope") != std::string::npos);
}

TEST_CASE("validation battery passes clean and fails the planted corruption") {
    cli::ValidateOptions opt;
    opt.trials = 20000;
    const auto clean = cli::run_validation(opt);
    for (const auto& check : clean) {
        INFO(check.name, " measured=", check.measured, " tol=", check.tolerance);
        CHECK(check.pass);
    }

    opt.corrupt_b0 = 1e-3;  // negative control
    const auto corrupted = cli::run_validation(opt);
    bool sum_check_failed = false;
    for (const auto& check : corrupted) {
        if (check.name == "chebyshev-weights-cancel" && !check.pass) sum_check_failed = true;
    }
    CHECK(sum_check_failed);
}

TEST_CASE("grid sweep covers the requested users/alpha grid") {
    const auto cfg = cli::parse_config(
        R"({"users": 2, "radius_m": 5, "alpha": 2, "snr_db": [30, 40], "trials": 2000,
            "seed": 3, "workers": 1, "sweep_users": [2, 3], "sweep_alpha": [2, 3]})",
        "inline");
    const auto result = cli::run_grid_sweep(cfg);
    // header + 2 users x 2 alphas x 2 snr points
    CHECK(std::count(result.csv.begin(), result.csv.end(), '\n') == 1 + 8);
    CHECK(result.csv.rfind("users,alpha,snr_db,", 0) == 0);

    // outage-mode grid over users is rejected (targets are per-user)
    auto bad = cfg;
    bad.targets_bpcu = std::vector<double>{0.1, 0.5};
    CHECK_THROWS_AS(cli::run_grid_sweep(bad), cli::ConfigError);
}
