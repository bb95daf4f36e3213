#include "noma/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace noma::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

template <typename T>
T field(const json& j, const std::string& origin, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(origin, "field '" + key + "' has the wrong type");
    }
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(origin, "line " + std::to_string(line_of_byte(json_text, e.byte)) +
                         ": " + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be a JSON object");

    ScenarioConfig cfg;
    cfg.schema = field<int>(j, origin, "schema", 1);
    if (cfg.schema != 1) fail(origin, "unsupported schema version");

    cfg.users = field<int>(j, origin, "users", cfg.users);
    cfg.radius_m = field<double>(j, origin, "radius_m", cfg.radius_m);
    cfg.alpha = field<double>(j, origin, "alpha", cfg.alpha);
    cfg.snr_db = field<std::vector<double>>(j, origin, "snr_db", {});
    cfg.quadrature_n = field<int>(j, origin, "quadrature_n", cfg.quadrature_n);
    const auto trials = field<long long>(j, origin, "trials", static_cast<long long>(cfg.trials));
    if (trials < 1) fail(origin, "trials must be >= 1");
    cfg.trials = static_cast<std::uint64_t>(trials);
    const auto seed = field<long long>(j, origin, "seed", static_cast<long long>(cfg.seed));
    if (seed < 0) fail(origin, "seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.oma_split = field<bool>(j, origin, "oma_split", cfg.oma_split);
    cfg.workers = field<int>(j, origin, "workers", cfg.workers);
    cfg.sweep_users = field<std::vector<int>>(j, origin, "sweep_users", {});
    cfg.sweep_alpha = field<std::vector<double>>(j, origin, "sweep_alpha", {});

    if (j.contains("alloc")) {
        const auto& a = j.at("alloc");
        if (a.is_string()) {
            if (a.get<std::string>() != "default") {
                fail(origin, "alloc must be \"default\" or an array of coefficients");
            }
        } else {
            cfg.alloc = field<std::vector<double>>(j, origin, "alloc", {});
        }
    }
    if (j.contains("targets_bpcu")) {
        cfg.targets_bpcu = field<std::vector<double>>(j, origin, "targets_bpcu", {});
    }

    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* known[] = {"schema",       "users",      "radius_m",
                                      "alpha",        "snr_db",     "alloc",
                                      "targets_bpcu", "quadrature_n", "trials",
                                      "seed",         "oma_split",  "workers",
                                      "sweep_users",  "sweep_alpha"};
        bool recognized = false;
        for (const char* k : known) {
            if (it.key() == k) {
                recognized = true;
                break;
            }
        }
        if (!recognized) fail(origin, "unknown field '" + it.key() + "'");
    }

    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        fail(origin, e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

void validate_config(const ScenarioConfig& cfg) {
    if (cfg.users < 1) throw ConfigError("users must be >= 1");
    if (!(cfg.radius_m > 0.0)) throw ConfigError("radius_m must be > 0");
    if (!(cfg.alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
    if (cfg.snr_db.empty()) throw ConfigError("snr_db must list at least one point");
    if (cfg.quadrature_n < 1) throw ConfigError("quadrature_n must be >= 1");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
    if (cfg.alloc.has_value() && static_cast<int>(cfg.alloc->size()) != cfg.users) {
        throw ConfigError("alloc must list exactly one coefficient per user");
    }
    if (cfg.targets_bpcu.has_value() &&
        static_cast<int>(cfg.targets_bpcu->size()) != cfg.users) {
        throw ConfigError("targets_bpcu must list exactly one rate per user");
    }
    for (int u : cfg.sweep_users) {
        if (u < 1) throw ConfigError("sweep_users entries must be >= 1");
    }
    for (double a : cfg.sweep_alpha) {
        if (!(a >= 1.0)) throw ConfigError("sweep_alpha entries must be >= 1");
    }
}

Geometry geometry_of(const ScenarioConfig& cfg) {
    return Geometry(cfg.radius_m, cfg.alpha, cfg.users);
}

rates::PowerAllocation resolve_alloc(const ScenarioConfig& cfg) {
    if (!cfg.alloc.has_value()) return rates::default_allocation(cfg.users);
    Eigen::ArrayXd a(cfg.alloc->size());
    for (std::size_t i = 0; i < cfg.alloc->size(); ++i) {
        a[static_cast<Eigen::Index>(i)] = (*cfg.alloc)[i];
    }
    try {
        return rates::PowerAllocation(a);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("alloc: ") + e.what());
    }
}

}  // namespace noma::cli
