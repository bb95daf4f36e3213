#include "noma/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef NOMA_GIT_COMMIT
#define NOMA_GIT_COMMIT "unknown"
#endif

namespace noma::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string iso_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

mc::SimConfig sim_config_at(const ScenarioConfig& cfg, double snr_db,
                            std::uint64_t point_seed) {
    mc::SimConfig sim{geometry_of(cfg), resolve_alloc(cfg), std::nullopt,
                      db_to_linear(snr_db), cfg.trials, point_seed,
                      cfg.workers, cfg.oma_split};
    if (cfg.targets_bpcu.has_value()) {
        Eigen::ArrayXd t(cfg.targets_bpcu->size());
        for (std::size_t i = 0; i < cfg.targets_bpcu->size(); ++i) {
            t[static_cast<Eigen::Index>(i)] = (*cfg.targets_bpcu)[i];
        }
        sim.targets = rates::RateTargets(t);
    }
    return sim;
}

json metadata(const ScenarioConfig& cfg, const char* command) {
    json meta;
    meta["command"] = command;
    meta["seed"] = cfg.seed;
    meta["trials"] = cfg.trials;
    meta["workers"] = cfg.workers;
    meta["quadrature_n"] = cfg.quadrature_n;
    meta["git_commit"] = NOMA_GIT_COMMIT;
    meta["generated_at"] = iso_utc_now();
    return meta;
}

json config_json(const ScenarioConfig& cfg) {
    json j;
    j["schema"] = cfg.schema;
    j["users"] = cfg.users;
    j["radius_m"] = cfg.radius_m;
    j["alpha"] = cfg.alpha;
    j["snr_db"] = cfg.snr_db;
    if (cfg.alloc.has_value()) {
        j["alloc"] = *cfg.alloc;
    } else {
        j["alloc"] = "default";
    }
    if (cfg.targets_bpcu.has_value()) j["targets_bpcu"] = *cfg.targets_bpcu;
    j["quadrature_n"] = cfg.quadrature_n;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["oma_split"] = cfg.oma_split;
    j["workers"] = cfg.workers;
    return j;
}

}  // namespace

std::vector<OutageRow> run_outage_sweep(const ScenarioConfig& cfg) {
    if (!cfg.targets_bpcu.has_value()) {
        throw ConfigError("outage sweep requires targets_bpcu");
    }
    const Geometry geom = geometry_of(cfg);
    const rates::PowerAllocation alloc = resolve_alloc(cfg);
    const chebyshev::Model model = chebyshev::build_model(geom, cfg.quadrature_n);

    std::vector<OutageRow> rows;
    rows.reserve(cfg.snr_db.size());
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        const double snr_db = cfg.snr_db[i];
        const double rho = db_to_linear(snr_db);
        const mc::SimConfig sim = sim_config_at(cfg, snr_db, cfg.seed + i);
        const rates::Thresholds th =
            rates::compute_thresholds(alloc, *sim.targets, rho);

        OutageRow row;
        row.snr_db = snr_db;
        row.per_user.resize(cfg.users);
        for (int m = 1; m <= cfg.users; ++m) {
            outage::OutageReport& rep = row.per_user[m - 1];
            rep.feasible = !th.forced_outage(m);
            rep.analytic_exact = std::clamp(
                outage::outage_exact(model, geom, alloc, *sim.targets, rho, m), 0.0, 1.0);
            // the closed form exceeds one below its regime; emit it as a probability
            rep.analytic_high_snr = std::clamp(
                outage::outage_high_snr(model, alloc, *sim.targets, rho, m), 0.0, 1.0);
            const mc::EstimatorResult est = mc::estimate_outage(sim, m);
            rep.empirical = est.mean;
            rep.empirical_ci95 = est.ci95_halfwidth;
        }
        const double total_target = sim.targets->targets.sum();
        if (cfg.oma_split) {
            // averaged over the uniformly scheduled user's own target
            double acc = 0.0;
            for (int u = 0; u < cfg.users; ++u) {
                const double phi =
                    std::pow(2.0, cfg.users * sim.targets->targets[u]) - 1.0;
                acc += channel::cdf_exact(phi / rho, geom);
            }
            row.oma_analytic = acc / cfg.users;
        } else {
            row.oma_analytic =
                channel::cdf_exact((std::pow(2.0, total_target) - 1.0) / rho, geom);
        }
        row.oma_empirical = mc::estimate_oma_outage(sim);
        rows.push_back(std::move(row));
    }

    // Per-user diversity slope over the swept points, fitted on the analytic
    // curve where it is clean (below 0.1, above Monte Carlo resolution).
    for (int m = 1; m <= cfg.users; ++m) {
        std::vector<std::pair<double, double>> curve;
        for (const OutageRow& row : rows) {
            const double p = row.per_user[m - 1].analytic_exact;
            if (p >= 1e-6 && p <= 0.1) {
                curve.emplace_back(db_to_linear(row.snr_db), p);
            }
        }
        if (curve.size() < 3) continue;
        try {
            const double slope = outage::fit_diversity_order(curve);
            for (OutageRow& row : rows) row.per_user[m - 1].diversity_slope = slope;
        } catch (const std::invalid_argument&) {
            // not enough SNR span; leave the slope unfilled
        }
    }
    return rows;
}

std::vector<ErgodicRow> run_ergodic_sweep(const ScenarioConfig& cfg) {
    if (cfg.targets_bpcu.has_value()) {
        throw ConfigError("ergodic sweep expects no targets_bpcu (rates are opportunistic)");
    }
    const Geometry geom = geometry_of(cfg);
    const rates::PowerAllocation alloc = resolve_alloc(cfg);
    const chebyshev::Model model = chebyshev::build_model(geom, cfg.quadrature_n);

    std::vector<ErgodicRow> rows;
    rows.reserve(cfg.snr_db.size());
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        const double snr_db = cfg.snr_db[i];
        const double rho = db_to_linear(snr_db);
        const mc::SimConfig sim = sim_config_at(cfg, snr_db, cfg.seed + i);

        ErgodicRow row;
        row.snr_db = snr_db;
        row.report.high_snr_rate = ergodic::ergodic_high_snr(model, alloc, rho);
        row.report.empirical = mc::estimate_sum_rate(sim, mc::Scheme::noma);
        row.report.baseline_random = mc::estimate_sum_rate(sim, mc::Scheme::oma_random);
        row.report.baseline_opportunistic =
            mc::estimate_sum_rate(sim, mc::Scheme::opportunistic);
        row.report.asymptote = cfg.users >= 16
                                   ? ergodic::asymptotic_sum_rate(rho, cfg.users)
                                   : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string outage_csv(const ScenarioConfig& cfg, const std::vector<OutageRow>& rows) {
    std::ostringstream out;
    out << "snr_db,trials,seed,oma_analytic,oma_empirical,oma_empirical_ci95";
    for (int m = 1; m <= cfg.users; ++m) {
        out << ",u" << m << "_feasible"
            << ",u" << m << "_analytic_exact"
            << ",u" << m << "_analytic_high_snr"
            << ",u" << m << "_empirical"
            << ",u" << m << "_empirical_ci95";
    }
    out << "\n";
    for (const OutageRow& row : rows) {
        out << fmt(row.snr_db) << ',' << cfg.trials << ',' << cfg.seed << ','
            << fmt(row.oma_analytic) << ',' << fmt(row.oma_empirical.mean) << ','
            << fmt(row.oma_empirical.ci95_halfwidth);
        for (const outage::OutageReport& rep : row.per_user) {
            out << ',' << (rep.feasible ? 1 : 0) << ',' << fmt(rep.analytic_exact) << ','
                << fmt(rep.analytic_high_snr) << ',' << fmt(rep.empirical) << ','
                << fmt(rep.empirical_ci95);
        }
        out << "\n";
    }
    return out.str();
}

std::string ergodic_csv(const ScenarioConfig& cfg, const std::vector<ErgodicRow>& rows) {
    std::ostringstream out;
    out << "snr_db,trials,seed,noma_empirical,noma_ci95,oma_empirical,oma_ci95,"
           "opportunistic_empirical,opportunistic_ci95,analytic_high_snr,asymptotic_rate\n";
    for (const ErgodicRow& row : rows) {
        const auto& rep = row.report;
        out << fmt(row.snr_db) << ',' << cfg.trials << ',' << cfg.seed << ','
            << fmt(rep.empirical.mean) << ',' << fmt(rep.empirical.ci95_halfwidth) << ','
            << fmt(rep.baseline_random.mean) << ','
            << fmt(rep.baseline_random.ci95_halfwidth) << ','
            << fmt(rep.baseline_opportunistic.mean) << ','
            << fmt(rep.baseline_opportunistic.ci95_halfwidth) << ','
            << fmt(rep.high_snr_rate) << ',' << fmt(rep.asymptote) << "\n";
    }
    return out.str();
}

std::string outage_json(const ScenarioConfig& cfg, const std::vector<OutageRow>& rows) {
    json doc;
    doc["schema"] = 1;
    doc["metadata"] = metadata(cfg, "outage");
    doc["config"] = config_json(cfg);
    doc["rows"] = json::array();
    for (const OutageRow& row : rows) {
        json r;
        r["snr_db"] = row.snr_db;
        r["oma_analytic"] = row.oma_analytic;
        r["oma_empirical"] = row.oma_empirical.mean;
        r["oma_empirical_ci95"] = row.oma_empirical.ci95_halfwidth;
        r["users"] = json::array();
        for (const outage::OutageReport& rep : row.per_user) {
            json u;
            u["feasible"] = rep.feasible;
            u["analytic_exact"] = rep.analytic_exact;
            u["analytic_high_snr"] = rep.analytic_high_snr;
            u["empirical"] = rep.empirical;
            u["empirical_ci95"] = rep.empirical_ci95;
            if (std::isfinite(rep.diversity_slope)) {
                u["diversity_slope"] = rep.diversity_slope;
            } else {
                u["diversity_slope"] = nullptr;
            }
            r["users"].push_back(std::move(u));
        }
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::string ergodic_json(const ScenarioConfig& cfg, const std::vector<ErgodicRow>& rows) {
    json doc;
    doc["schema"] = 1;
    doc["metadata"] = metadata(cfg, "ergodic");
    doc["config"] = config_json(cfg);
    doc["rows"] = json::array();
    for (const ErgodicRow& row : rows) {
        const auto& rep = row.report;
        json r;
        r["snr_db"] = row.snr_db;
        r["noma_empirical"] = rep.empirical.mean;
        r["noma_ci95"] = rep.empirical.ci95_halfwidth;
        r["oma_empirical"] = rep.baseline_random.mean;
        r["oma_ci95"] = rep.baseline_random.ci95_halfwidth;
        r["opportunistic_empirical"] = rep.baseline_opportunistic.mean;
        r["opportunistic_ci95"] = rep.baseline_opportunistic.ci95_halfwidth;
        r["analytic_high_snr"] = rep.high_snr_rate;
        if (std::isfinite(rep.asymptote)) {
            r["asymptotic_rate"] = rep.asymptote;
        } else {
            r["asymptotic_rate"] = nullptr;
        }
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

GridResult run_grid_sweep(const ScenarioConfig& cfg) {
    std::vector<int> users_grid = cfg.sweep_users.empty()
                                      ? std::vector<int>{cfg.users}
                                      : cfg.sweep_users;
    std::vector<double> alpha_grid = cfg.sweep_alpha.empty()
                                         ? std::vector<double>{cfg.alpha}
                                         : cfg.sweep_alpha;
    const bool outage_mode = cfg.targets_bpcu.has_value();
    if (outage_mode && !cfg.sweep_users.empty()) {
        throw ConfigError("sweep over users is only available without targets_bpcu "
                          "(per-user targets do not transfer across user counts)");
    }

    std::ostringstream csv;
    json doc;
    doc["schema"] = 1;
    doc["metadata"] = metadata(cfg, "sweep");
    doc["config"] = config_json(cfg);
    doc["rows"] = json::array();

    if (outage_mode) {
        csv << "users,alpha,snr_db,user,feasible,analytic_exact,analytic_high_snr,"
               "empirical,empirical_ci95\n";
    } else {
        csv << "users,alpha,snr_db,noma_empirical,noma_ci95,oma_empirical,oma_ci95,"
               "opportunistic_empirical,opportunistic_ci95,analytic_high_snr,"
               "asymptotic_rate\n";
    }

    std::uint64_t point = 0;
    for (int users : users_grid) {
        for (double alpha : alpha_grid) {
            ScenarioConfig local = cfg;
            local.users = users;
            local.alpha = alpha;
            local.sweep_users.clear();
            local.sweep_alpha.clear();
            local.seed = cfg.seed + point * cfg.snr_db.size();
            point += 1;
            if (outage_mode) {
                for (const OutageRow& row : run_outage_sweep(local)) {
                    for (int m = 1; m <= users; ++m) {
                        const auto& rep = row.per_user[m - 1];
                        csv << users << ',' << fmt(alpha) << ',' << fmt(row.snr_db) << ','
                            << m << ',' << (rep.feasible ? 1 : 0) << ','
                            << fmt(rep.analytic_exact) << ',' << fmt(rep.analytic_high_snr)
                            << ',' << fmt(rep.empirical) << ',' << fmt(rep.empirical_ci95)
                            << "\n";
                        json r;
                        r["users"] = users;
                        r["alpha"] = alpha;
                        r["snr_db"] = row.snr_db;
                        r["user"] = m;
                        r["feasible"] = rep.feasible;
                        r["analytic_exact"] = rep.analytic_exact;
                        r["analytic_high_snr"] = rep.analytic_high_snr;
                        r["empirical"] = rep.empirical;
                        r["empirical_ci95"] = rep.empirical_ci95;
                        doc["rows"].push_back(std::move(r));
                    }
                }
            } else {
                for (const ErgodicRow& row : run_ergodic_sweep(local)) {
                    const auto& rep = row.report;
                    csv << users << ',' << fmt(alpha) << ',' << fmt(row.snr_db) << ','
                        << fmt(rep.empirical.mean) << ',' << fmt(rep.empirical.ci95_halfwidth)
                        << ',' << fmt(rep.baseline_random.mean) << ','
                        << fmt(rep.baseline_random.ci95_halfwidth) << ','
                        << fmt(rep.baseline_opportunistic.mean) << ','
                        << fmt(rep.baseline_opportunistic.ci95_halfwidth) << ','
                        << fmt(rep.high_snr_rate) << ',' << fmt(rep.asymptote) << "\n";
                    json r;
                    r["users"] = users;
                    r["alpha"] = alpha;
                    r["snr_db"] = row.snr_db;
                    r["noma_empirical"] = rep.empirical.mean;
                    r["noma_ci95"] = rep.empirical.ci95_halfwidth;
                    r["oma_empirical"] = rep.baseline_random.mean;
                    r["oma_ci95"] = rep.baseline_random.ci95_halfwidth;
                    r["opportunistic_empirical"] = rep.baseline_opportunistic.mean;
                    r["opportunistic_ci95"] = rep.baseline_opportunistic.ci95_halfwidth;
                    r["analytic_high_snr"] = rep.high_snr_rate;
                    if (std::isfinite(rep.asymptote)) {
                        r["asymptotic_rate"] = rep.asymptote;
                    } else {
                        r["asymptotic_rate"] = nullptr;
                    }
                    doc["rows"].push_back(std::move(r));
                }
            }
        }
    }
    return GridResult{csv.str(), doc.dump(2) + "\n"};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace noma::cli
