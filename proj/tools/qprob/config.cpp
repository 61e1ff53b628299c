#include "config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace qprob::cli {

using nlohmann::json;

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    LoadedConfig cfg;
    cfg.raw_bytes = buf.str();
    try {
        cfg.doc = json::parse(cfg.raw_bytes);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

const json& expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    return j;
}

void allow_keys(const json& j, std::initializer_list<const char*> keys,
                const std::string& where) {
    expect_object(j, where);
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError(where + ": unknown field '" + key + "'");
    }
}

const json& require_key(const json& j, const char* key, const std::string& where) {
    expect_object(j, where);
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing required field '" + key + "'");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    return number_at(j, key, where);
}

std::size_t count_at(const json& j, const char* key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_number_unsigned()) {
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::size_t count_or(const json& j, const char* key, std::size_t fallback,
                     const std::string& where) {
    if (!j.contains(key)) return fallback;
    return count_at(j, key, where);
}

std::string string_at(const json& j, const char* key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> real_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<cplx> complex_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw ConfigError(where + ": expected [re, im] pairs");
        }
        out.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return out;
}

namespace {

std::vector<std::size_t> index_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of indices");
    std::vector<std::size_t> out;
    for (const auto& v : j) {
        if (!v.is_number_unsigned()) {
            throw ConfigError(where + ": indices must be non-negative integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

std::vector<std::array<double, 2>> interval_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of [lo, hi] pairs");
    std::vector<std::array<double, 2>> out;
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw ConfigError(where + ": intervals must be [lo, hi] number pairs");
        }
        out.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return out;
}

IntervalUnion axis_intervals(const json& j, const std::string& where) {
    allow_keys(j, {"intervals", "all"}, where);
    if (j.contains("all")) {
        if (!j["all"].is_boolean() || !j["all"].get<bool>()) {
            throw ConfigError(where + ".all: only 'true' is meaningful");
        }
        const double inf = std::numeric_limits<double>::infinity();
        return IntervalUnion{{{-inf, inf}}};
    }
    return IntervalUnion{interval_list(require_key(j, "intervals", where), where + ".intervals")};
}

FockRange fock_range(const json& j, const std::string& where) {
    allow_keys(j, {"min", "max", "mode"}, where);
    FockRange r;
    r.lo = long(number_or(j, "min", 0.0, where));
    r.hi = long(number_or(j, "max", double(std::numeric_limits<long>::max()), where));
    return r;
}

}  // namespace

Event parse_event_discrete(const json& j, const DiscreteState& s, const std::string& where) {
    allow_keys(j, {"indices", "value_range", "all"}, where);
    if (j.contains("all")) return Event::discrete_range(0, s.dim());
    if (j.contains("value_range")) {
        const auto range = interval_list(json::array({j["value_range"]}), where + ".value_range");
        return event_from_value_range(s, range[0][0], range[0][1]);
    }
    auto idx = index_vector(require_key(j, "indices", where), where + ".indices");
    for (std::size_t i : idx) {
        if (i >= s.dim()) {
            throw ConfigError(where + ".indices: index " + std::to_string(i) +
                              " outside dimension " + std::to_string(s.dim()));
        }
    }
    return Event::discrete(std::move(idx));
}

Event parse_event_grid1d(const json& j, const std::string& where) {
    allow_keys(j, {"intervals", "indices", "all"}, where);
    if (j.contains("all")) return Event::full_line();
    if (j.contains("indices")) {
        return Event::discrete(index_vector(j["indices"], where + ".indices"));
    }
    return Event::intervals(
        interval_list(require_key(j, "intervals", where), where + ".intervals"));
}

Event parse_event_grid2d(const json& j, const std::string& where) {
    allow_keys(j, {"product", "all"}, where);
    const double inf = std::numeric_limits<double>::infinity();
    if (j.contains("all")) {
        return Event::product(IntervalUnion{{{-inf, inf}}}, IntervalUnion{{{-inf, inf}}});
    }
    const json& p = require_key(j, "product", where);
    allow_keys(p, {"x", "y"}, where + ".product");
    return Event::product(axis_intervals(require_key(p, "x", where + ".product"),
                                         where + ".product.x"),
                          axis_intervals(require_key(p, "y", where + ".product"),
                                         where + ".product.y"));
}

Event parse_event_fock(const json& j, std::size_t modes, const std::string& where) {
    allow_keys(j, {"occupation", "total", "all"}, where);
    FockPredicate pred;
    pred.per_mode.resize(modes);
    if (j.contains("all")) return Event::fock(std::move(pred));

    if (j.contains("occupation")) {
        const json& occ = j["occupation"];
        const auto add_constraint = [&](const json& c, const std::string& cw) {
            const std::size_t mode = count_at(c, "mode", cw);
            if (mode >= modes) {
                throw ConfigError(cw + ".mode: mode " + std::to_string(mode) +
                                  " outside mode count " + std::to_string(modes));
            }
            pred.per_mode[mode] = fock_range(c, cw);
        };
        if (occ.is_array()) {
            for (std::size_t i = 0; i < occ.size(); ++i) {
                add_constraint(occ[i], where + ".occupation[" + std::to_string(i) + "]");
            }
        } else {
            add_constraint(occ, where + ".occupation");
        }
    }
    if (j.contains("total")) {
        allow_keys(j["total"], {"min", "max"}, where + ".total");
        pred.total = fock_range(j["total"], where + ".total");
    }
    if (!j.contains("occupation") && !j.contains("total")) {
        throw ConfigError(where + ": occupation event needs 'occupation' and/or 'total'");
    }
    return Event::fock(std::move(pred));
}

}
