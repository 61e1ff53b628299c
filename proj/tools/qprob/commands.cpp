#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "output.hpp"
#include "qprob/continuum.hpp"
#include "qprob/discrete.hpp"
#include "qprob/evolution.hpp"
#include "qprob/fock.hpp"
#include "qprob/io.hpp"
#include "qprob/momentum.hpp"
#include "qprob/presets.hpp"

namespace qprob::cli {

using nlohmann::json;

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// CSV rendering of ConditionedReport lists (discrete and grid1d kinds).
std::string reports_to_csv(const ordered_json& reports) {
    std::ostringstream out;
    out << "quantity,event,given,value,route_definition,route_trace,discrepancy,"
           "tolerance,verdict\n";
    for (const auto& r : reports) {
        out << r.at("quantity").get<std::string>() << ",\""
            << r.at("event").get<std::string>() << "\",\""
            << r.at("given").get<std::string>() << "\","
            << format_double(r.at("value").get<double>()) << ","
            << format_double(r.at("route_definition").get<double>()) << ","
            << format_double(r.at("route_trace").get<double>()) << ","
            << format_double(r.at("discrepancy").get<double>()) << ","
            << format_double(r.at("tolerance").get<double>()) << ","
            << r.at("verdict").get<std::string>() << "\n";
    }
    return out.str();
}

ordered_json report_to_json(const ConditionedReport& r, bool timing) {
    ordered_json j;
    j["quantity"] = to_string(r.quantity);
    j["event"] = r.event_desc;
    j["given"] = r.given_desc;
    j["value"] = r.value;
    j["route_definition"] = r.route_definition;
    j["route_trace"] = r.route_trace;
    j["discrepancy"] = r.discrepancy;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.ok ? "ok" : "mismatch";
    if (timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

struct RunState {
    bool any_mismatch = false;
};

// ---------------------------------------------------------------- discrete

DiscreteState build_discrete_system(const json& sys) {
    const std::string where = "system";
    if (sys.contains("preset")) {
        allow_keys(sys, {"preset", "levels", "hbar_omega", "recipe", "beta", "alpha"}, where);
        const std::string preset = string_at(sys, "preset", where);
        if (preset != "harmonic-oscillator") {
            throw ConfigError(where + ".preset: unknown discrete preset '" + preset + "'");
        }
        const std::size_t levels = count_or(sys, "levels", 8, where);
        const double hbar_omega = number_or(sys, "hbar_omega", 1.0, where);
        const std::string recipe =
            sys.contains("recipe") ? string_at(sys, "recipe", where) : "ground";
        if (recipe == "ground") {
            return harmonic_oscillator_state(levels, hbar_omega, OscillatorRecipe::ground);
        }
        if (recipe == "thermal") {
            return harmonic_oscillator_state(levels, hbar_omega, OscillatorRecipe::thermal,
                                             number_at(sys, "beta", where));
        }
        if (recipe == "coherent") {
            return harmonic_oscillator_state(levels, hbar_omega, OscillatorRecipe::coherent,
                                             number_at(sys, "alpha", where));
        }
        throw ConfigError(where + ".recipe: unknown recipe '" + recipe + "'");
    }
    allow_keys(sys, {"eigenvalues", "amplitudes"}, where);
    auto eps = real_vector(require_key(sys, "eigenvalues", where), where + ".eigenvalues");
    auto amps = complex_vector(require_key(sys, "amplitudes", where), where + ".amplitudes");
    if (eps.size() != amps.size()) {
        throw ConfigError(where + ": eigenvalues and amplitudes differ in length");
    }
    return DiscreteState(std::move(eps), std::move(amps));
}

void run_discrete(const json& doc, ordered_json& envelope, RunState& state, bool timing) {
    const DiscreteState system = build_discrete_system(require_key(doc, "system", "config"));
    const json& requests = require_key(doc, "requests", "config");
    if (!requests.is_array()) throw ConfigError("requests: expected an array");

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const std::string where = "requests[" + std::to_string(i) + "]";
        const json& req = requests[i];
        allow_keys(req, {"quantity", "event", "given"}, where);
        const std::string quantity = string_at(req, "quantity", where);
        const Event a =
            parse_event_discrete(require_key(req, "event", where), system, where + ".event");

        const auto t0 = std::chrono::steady_clock::now();
        ConditionedReport r;
        if (quantity == "CE") {
            r = ce_report(system, a);
        } else if (quantity == "AP") {
            r = ap_report(system, a);
        } else if (quantity == "CP") {
            const Event b = parse_event_discrete(require_key(req, "given", where), system,
                                                 where + ".given");
            r = cp_report(system, a, b);
        } else {
            throw ConfigError(where + ".quantity: unknown quantity '" + quantity + "'");
        }
        r.elapsed_ms = elapsed_ms(t0);
        if (!r.ok) state.any_mismatch = true;
        reports.push_back(report_to_json(r, timing));
    }
    envelope["reports"] = std::move(reports);
}

// ------------------------------------------------------------------ grid1d

GridState1D build_grid1d_system(const json& sys) {
    const std::string where = "system";
    if (sys.contains("file")) {
        allow_keys(sys, {"file"}, where);
        return load_grid_state_1d(string_at(sys, "file", where));
    }
    allow_keys(sys, {"preset", "center", "sigma", "k0", "halfwidth", "n"}, where);
    const std::string preset = string_at(sys, "preset", where);
    if (preset != "gaussian") {
        throw ConfigError(where + ".preset: unknown grid preset '" + preset + "'");
    }
    const Gaussian1D g{number_or(sys, "center", 0.0, where),
                       number_or(sys, "sigma", 1.0, where),
                       number_or(sys, "k0", 0.0, where)};
    const double halfwidth = number_or(sys, "halfwidth", 8.0 * g.sigma, where);
    const std::size_t n = count_or(sys, "n", 4096, where);
    return sample_gaussian_1d(g, halfwidth, n);
}

void run_grid1d(const json& doc, ordered_json& envelope, RunState& state, bool timing) {
    const GridState1D system = build_grid1d_system(require_key(doc, "system", "config"));
    const json& requests = require_key(doc, "requests", "config");
    if (!requests.is_array()) throw ConfigError("requests: expected an array");

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const std::string where = "requests[" + std::to_string(i) + "]";
        const json& req = requests[i];
        allow_keys(req, {"quantity", "event", "given"}, where);
        const std::string quantity = string_at(req, "quantity", where);
        const Event a = parse_event_grid1d(require_key(req, "event", where), where + ".event");

        const auto t0 = std::chrono::steady_clock::now();
        ConditionedReport r;
        if (quantity == "CE") {
            r = ce_report_1d(system, a);
        } else if (quantity == "AP") {
            r = ap_report_1d(system, a);
        } else if (quantity == "CP") {
            const Event b =
                parse_event_grid1d(require_key(req, "given", where), where + ".given");
            r = cp_report_1d(system, a, b);
        } else {
            throw ConfigError(where + ".quantity: unknown quantity '" + quantity + "'");
        }
        r.elapsed_ms = elapsed_ms(t0);
        if (!r.ok) state.any_mismatch = true;
        reports.push_back(report_to_json(r, timing));
    }
    envelope["reports"] = std::move(reports);
}

// ------------------------------------------------------------------ grid2d

GridState2D build_grid2d_system(const json& sys) {
    const std::string where = "system";
    const std::string preset = string_at(sys, "preset", where);
    if (preset == "bivariate-normal") {
        allow_keys(sys, {"preset", "sigma_x", "sigma_y", "correlation", "halfwidth", "n"},
                   where);
        const BivariateNormal b{number_or(sys, "sigma_x", 1.0, where),
                                number_or(sys, "sigma_y", 1.0, where),
                                number_or(sys, "correlation", 0.0, where)};
        const std::size_t n = count_or(sys, "n", 257, where);
        return sample_bivariate_normal(b, number_or(sys, "halfwidth", 8.0, where), n, n);
    }
    if (preset == "product-gaussian") {
        allow_keys(sys, {"preset", "x", "y", "halfwidth", "n"}, where);
        const auto axis = [&](const char* key) {
            const json& a = require_key(sys, key, where);
            const std::string aw = where + "." + key;
            allow_keys(a, {"center", "sigma", "k0"}, aw);
            return Gaussian1D{number_or(a, "center", 0.0, aw), number_or(a, "sigma", 1.0, aw),
                              number_or(a, "k0", 0.0, aw)};
        };
        const std::size_t n = count_or(sys, "n", 129, where);
        return sample_product_gaussian(axis("x"), axis("y"),
                                       number_or(sys, "halfwidth", 8.0, where), n, n);
    }
    if (preset == "box2d") {
        allow_keys(sys, {"preset", "lx", "ly", "nx_quantum", "ny_quantum", "n"}, where);
        const Box2D b{int(count_or(sys, "nx_quantum", 1, where)),
                      int(count_or(sys, "ny_quantum", 1, where)),
                      number_or(sys, "lx", 1.0, where), number_or(sys, "ly", 1.0, where)};
        const std::size_t n = count_or(sys, "n", 128, where);
        return sample_box2d(b, n, n);
    }
    throw ConfigError(where + ".preset: unknown 2D preset '" + preset + "'");
}

std::function<double(double, double)> borel_function(const std::string& name,
                                                     const std::string& where) {
    if (name == "one") return [](double, double) { return 1.0; };
    if (name == "x") return [](double x, double) { return x; };
    if (name == "y") return [](double, double y) { return y; };
    if (name == "xy") return [](double x, double y) { return x * y; };
    if (name == "x2") return [](double x, double) { return x * x; };
    if (name == "y2") return [](double, double y) { return y * y; };
    if (name == "r2") return [](double x, double y) { return x * x + y * y; };
    throw ConfigError(where + ".g: unknown observable '" + name +
                      "' (want one|x|y|xy|x2|y2|r2)");
}

void run_grid2d(const json& doc, ordered_json& envelope, RunState& state, bool timing) {
    const GridState2D system = build_grid2d_system(require_key(doc, "system", "config"));
    const json& requests = require_key(doc, "requests", "config");
    if (!requests.is_array()) throw ConfigError("requests: expected an array");

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const std::string where = "requests[" + std::to_string(i) + "]";
        const json& req = requests[i];
        const std::string quantity = string_at(req, "quantity", where);
        const auto t0 = std::chrono::steady_clock::now();
        ordered_json r;
        r["quantity"] = quantity;

        if (quantity == "CE") {
            allow_keys(req, {"quantity", "g", "event"}, where);
            const std::string g_name =
                req.contains("g") ? string_at(req, "g", where) : "one";
            const Event a =
                parse_event_grid2d(require_key(req, "event", where), where + ".event");
            r["g"] = g_name;
            r["event"] = a.describe();
            r["value"] = ce_borel_2d(system, borel_function(g_name, where), a);
        } else if (quantity == "AP") {
            allow_keys(req, {"quantity", "event"}, where);
            const Event a =
                parse_event_grid2d(require_key(req, "event", where), where + ".event");
            r["event"] = a.describe();
            r["value"] = absolute_probability_2d(system, a);
        } else if (quantity == "CP") {
            allow_keys(req, {"quantity", "event", "given"}, where);
            const Event a =
                parse_event_grid2d(require_key(req, "event", where), where + ".event");
            const Event b =
                parse_event_grid2d(require_key(req, "given", where), where + ".given");
            r["event"] = a.describe();
            r["given"] = b.describe();
            r["value"] = conditional_probability_2d(system, a, b);
        } else if (quantity == "CE_AXIS") {
            allow_keys(req, {"quantity", "axis", "event"}, where);
            const std::string axis_name = string_at(req, "axis", where);
            if (axis_name != "x" && axis_name != "y") {
                throw ConfigError(where + ".axis: expected 'x' or 'y'");
            }
            const Event a =
                parse_event_grid2d(require_key(req, "event", where), where + ".event");
            r["axis"] = axis_name;
            r["event"] = a.describe();
            r["value"] = axis_conditional_expectation(
                system, axis_name == "x" ? Axis::x : Axis::y, a);
        } else if (quantity == "CE_POINT") {
            allow_keys(req, {"quantity", "y"}, where);
            const double y = number_at(req, "y", where);
            r["y"] = y;
            r["value"] = ce_given_point(system, y);
        } else if (quantity == "CP_POINT") {
            allow_keys(req, {"quantity", "x", "y"}, where);
            const double x = number_at(req, "x", where);
            const double y = number_at(req, "y", where);
            r["x"] = x;
            r["y"] = y;
            r["value"] = cp_given_point(system, x, y);
        } else if (quantity == "MARGINALS") {
            allow_keys(req, {"quantity"}, where);
            const Marginals m = marginals_2d(system);
            r["px"] = m.px;
            r["py"] = m.py;
        } else if (quantity == "INDEPENDENCE") {
            allow_keys(req, {"quantity", "tolerance"}, where);
            const double tol = number_or(req, "tolerance", 1e-8, where);
            const auto check = independence_check(system, tol);
            r["tolerance"] = check.tolerance;
            r["independent"] = check.independent;
            r["max_deviation"] = check.max_deviation;
        } else {
            throw ConfigError(where + ".quantity: unknown quantity '" + quantity + "'");
        }
        if (timing) r["elapsed_ms"] = elapsed_ms(t0);
        reports.push_back(std::move(r));
    }
    (void)state;
    envelope["reports"] = std::move(reports);
}

// -------------------------------------------------------------------- fock

FockEnsemble build_fock_system(const json& sys) {
    const std::string where = "system";
    if (sys.contains("preset")) {
        allow_keys(sys, {"preset"}, where);
        const std::string preset = string_at(sys, "preset", where);
        if (preset == "fermion-three-mode") {
            return FockEnsemble::fermions({0.0, 1.0, 2.0}, 1.0, 0.0);
        }
        throw ConfigError(where + ".preset: unknown fock preset '" + preset + "'");
    }
    allow_keys(sys,
               {"mode_energies", "beta", "temperature", "k_boltzmann", "mu", "statistics",
                "n_max"},
               where);
    auto eps =
        real_vector(require_key(sys, "mode_energies", where), where + ".mode_energies");
    double beta;
    if (sys.contains("beta")) {
        if (sys.contains("temperature")) {
            throw ConfigError(where + ": give either 'beta' or 'temperature', not both");
        }
        beta = number_at(sys, "beta", where);
    } else {
        const double t = number_at(sys, "temperature", where);
        const double k = number_or(sys, "k_boltzmann", 1.0, where);
        if (!(t > 0.0) || !(k > 0.0)) {
            throw ConfigError(where + ": temperature and k_boltzmann must be positive");
        }
        beta = 1.0 / (k * t);
    }
    const double mu = number_or(sys, "mu", 0.0, where);
    const std::string stats = string_at(sys, "statistics", where);
    if (stats == "fermion") return FockEnsemble::fermions(std::move(eps), beta, mu);
    if (stats == "boson") {
        return FockEnsemble::bosons(std::move(eps), beta, mu,
                                    count_or(sys, "n_max", 50, where));
    }
    throw ConfigError(where + ".statistics: expected 'fermion' or 'boson'");
}

void run_fock(const json& doc, ordered_json& envelope, RunState& state, bool timing) {
    const FockEnsemble system = build_fock_system(require_key(doc, "system", "config"));
    const json& requests = require_key(doc, "requests", "config");
    if (!requests.is_array()) throw ConfigError("requests: expected an array");

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const std::string where = "requests[" + std::to_string(i) + "]";
        const json& req = requests[i];
        const std::string quantity = string_at(req, "quantity", where);
        const auto t0 = std::chrono::steady_clock::now();
        ordered_json r;
        r["quantity"] = quantity;

        if (quantity == "ZG" || quantity == "LOG_ZG") {
            allow_keys(req, {"quantity"}, where);
            const double log_z = log_grand_partition(system);
            r["log_value"] = log_z;
            if (quantity == "ZG") r["value"] = std::exp(log_z);
            // cross-check against the direct occupation-vector sum when the
            // truncated space is small enough to enumerate
            bool enumerable = true;
            std::size_t count = 0;
            try {
                count = enumeration_size(system);
            } catch (const EnumerationTooLarge&) {
                enumerable = false;
            }
            if (enumerable && count <= 100000) {
                const double direct = grand_partition_enumerated(system);
                const double rel =
                    std::abs(std::exp(log_z) - direct) / std::max(direct, 1e-300);
                r["route_factorized"] = std::exp(log_z);
                r["route_enumerated"] = direct;
                r["relative_discrepancy"] = rel;
                const bool ok = rel <= 1e-12 * tolerance_scale();
                r["verdict"] = ok ? "ok" : "mismatch";
                if (!ok) state.any_mismatch = true;
            }
        } else if (quantity == "MODE_Z") {
            allow_keys(req, {"quantity", "mode"}, where);
            const std::size_t mode = count_at(req, "mode", where);
            if (mode >= system.mode_count()) throw ConfigError(where + ".mode: out of range");
            r["mode"] = mode;
            r["value"] = mode_partition(system, mode);
        } else if (quantity == "OCCUPATION") {
            allow_keys(req, {"quantity", "mode"}, where);
            const std::size_t mode = count_at(req, "mode", where);
            if (mode >= system.mode_count()) throw ConfigError(where + ".mode: out of range");
            r["mode"] = mode;
            r["mean"] = mean_occupation(system, mode);
            ordered_json dist = ordered_json::array();
            for (std::size_t n = 0; n <= system.occupancy_cap(); ++n) {
                dist.push_back(occupation_probability(system, mode, n));
            }
            r["distribution"] = std::move(dist);
        } else if (quantity == "E") {
            allow_keys(req, {"quantity", "observable"}, where);
            const auto obs = real_vector(require_key(req, "observable", where),
                                         where + ".observable");
            r["value"] = linear_observable_expectation(system, obs);
        } else if (quantity == "CE") {
            allow_keys(req, {"quantity", "observable", "event"}, where);
            const auto obs = real_vector(require_key(req, "observable", where),
                                         where + ".observable");
            const Event a = parse_event_fock(require_key(req, "event", where),
                                             system.mode_count(), where + ".event");
            r["event"] = a.describe();
            r["value"] = fock_conditional_expectation(system, obs, a);
        } else {
            throw ConfigError(where + ".quantity: unknown quantity '" + quantity + "'");
        }
        if (timing) r["elapsed_ms"] = elapsed_ms(t0);
        reports.push_back(std::move(r));
    }
    envelope["reports"] = std::move(reports);
}

// ------------------------------------------------------------------ evolve

struct EvolveSystem {
    HamiltonianMatrix h;
    Eigen::VectorXcd initial;
    double hbar = 1.0;
};

EvolveSystem build_evolve_system(const json& sys) {
    const std::string where = "system";
    if (sys.contains("preset")) {
        allow_keys(sys, {"preset", "coupling"}, where);
        const std::string preset = string_at(sys, "preset", where);
        if (preset != "rabi") {
            throw ConfigError(where + ".preset: unknown evolve preset '" + preset + "'");
        }
        RabiSystem rabi = rabi_preset(number_or(sys, "coupling", 1.0, where));
        return EvolveSystem{std::move(rabi.hamiltonian), std::move(rabi.initial), 1.0};
    }
    allow_keys(sys, {"hamiltonian", "initial", "hbar"}, where);
    const json& hm = require_key(sys, "hamiltonian", where);
    if (!hm.is_array() || hm.empty()) {
        throw ConfigError(where + ".hamiltonian: expected a non-empty matrix");
    }
    const std::size_t dim = hm.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        const auto row = complex_vector(hm[r], where + ".hamiltonian[" + std::to_string(r) + "]");
        if (row.size() != dim) throw ConfigError(where + ".hamiltonian: matrix must be square");
        for (std::size_t c = 0; c < dim; ++c) h(Eigen::Index(r), Eigen::Index(c)) = row[c];
    }
    const auto init =
        complex_vector(require_key(sys, "initial", where), where + ".initial");
    if (init.size() != dim) {
        throw ConfigError(where + ".initial: length does not match the Hamiltonian");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(dim));
    for (std::size_t k = 0; k < dim; ++k) v[Eigen::Index(k)] = init[k];
    v.normalize();
    try {
        return EvolveSystem{HamiltonianMatrix(h), std::move(v),
                            number_or(sys, "hbar", 1.0, where)};
    } catch (const NonHermitian& e) {
        throw ConfigError(where + ".hamiltonian: " + e.what());
    }
}

std::string evolve_csv(const std::vector<TimePoint>& series) {
    std::ostringstream out;
    out << "t,CE,AP,CP\n";
    for (const auto& p : series) {
        out << format_double(p.t) << "," << format_double(p.ce) << ","
            << format_double(p.ap) << "," << format_double(p.cp) << "\n";
    }
    return out.str();
}

void run_evolve(const json& doc, ordered_json& envelope, std::string& csv_out,
                const Options& opt) {
    const EvolveSystem sys = build_evolve_system(require_key(doc, "system", "config"));
    const std::size_t dim = sys.h.dim();

    const auto obs =
        real_vector(require_key(doc, "observable", "config"), "config.observable");
    if (obs.size() != dim) {
        throw ConfigError("observable: length does not match the Hamiltonian dimension");
    }

    // events are index sets in the measurement basis
    const auto parse_ev = [&](const json& j, const std::string& where) {
        allow_keys(j, {"indices", "all"}, where);
        if (j.contains("all")) return Event::discrete_range(0, dim);
        std::vector<std::size_t> idx;
        for (const auto& v : require_key(j, "indices", where)) {
            if (!v.is_number_unsigned() || v.get<std::size_t>() >= dim) {
                throw ConfigError(where + ".indices: indices must lie below " +
                                  std::to_string(dim));
            }
            idx.push_back(v.get<std::size_t>());
        }
        return Event::discrete(std::move(idx));
    };
    const Event a = parse_ev(require_key(doc, "event", "config"), "config.event");
    std::optional<Event> given;
    if (doc.contains("given")) given = parse_ev(doc["given"], "config.given");

    const json& times = require_key(doc, "times", "config");
    allow_keys(times, {"t0", "t1", "steps"}, "config.times");
    const double t0 = number_or(times, "t0", 0.0, "config.times");
    const double t1 = number_at(times, "t1", "config.times");
    const std::size_t steps = count_or(times, "steps", 1000, "config.times");

    const auto series = time_series(sys.initial, sys.h, obs, a,
                                    given ? &*given : nullptr, t0, t1, steps, sys.hbar);

    if (opt.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& p : series) {
            ordered_json row;
            row["t"] = p.t;
            row["ce"] = p.ce;
            row["ap"] = p.ap;
            row["cp"] = p.cp;
            rows.push_back(std::move(row));
        }
        envelope["series"] = std::move(rows);
    } else {
        csv_out = evolve_csv(series);
    }
}

// ----------------------------------------------------------------- noncomm

struct NoncommSystem {
    Gaussian1D gaussian;
    double halfwidth = 8.0;
    std::size_t n = 1025;
};

NoncommSystem build_noncomm_system(const json& sys) {
    const std::string where = "system";
    allow_keys(sys, {"preset", "center", "sigma", "k0", "halfwidth", "n"}, where);
    const std::string preset = string_at(sys, "preset", where);
    if (preset != "gaussian") {
        throw ConfigError(where + ".preset: the noncommutative diagnostics need an "
                          "analytic preset (resampled per refinement); got '" +
                          preset + "'");
    }
    NoncommSystem out;
    out.gaussian = Gaussian1D{number_or(sys, "center", 0.0, where),
                              number_or(sys, "sigma", 1.0, where),
                              number_or(sys, "k0", 0.0, where)};
    out.halfwidth = number_or(sys, "halfwidth", 8.0 * out.gaussian.sigma, where);
    out.n = count_or(sys, "n", 1025, where);
    return out;
}

ordered_json divergence_to_json(const DivergenceReport& rep) {
    ordered_json j;
    j["x"] = rep.x;
    ordered_json samples = ordered_json::array();
    for (const auto& s : rep.samples) {
        ordered_json row;
        row["n"] = s.n;
        row["dx"] = s.dx;
        row["snapped_x"] = s.snapped_x;
        row["value"] = ordered_json::array({s.value.real(), s.value.imag()});
        row["magnitude"] = s.magnitude;
        row["finite_part"] =
            ordered_json::array({s.finite_part.real(), s.finite_part.imag()});
        samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    j["growth"] = rep.growth;
    j["verdict"] = to_string(rep.verdict);
    return j;
}

void run_noncomm(const json& doc, ordered_json& envelope, bool timing) {
    const NoncommSystem sys = build_noncomm_system(require_key(doc, "system", "config"));
    const auto psi = [g = sys.gaussian](double x) { return gaussian_wavefunction(g, x); };
    const json& requests = require_key(doc, "requests", "config");
    if (!requests.is_array()) throw ConfigError("requests: expected an array");

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const std::string where = "requests[" + std::to_string(i) + "]";
        const json& req = requests[i];
        const std::string quantity = string_at(req, "quantity", where);
        const auto t0 = std::chrono::steady_clock::now();
        ordered_json r;
        r["quantity"] = quantity;

        if (quantity == "DIVERGENCE") {
            allow_keys(req, {"quantity", "x", "refinements"}, where);
            const double x = number_at(req, "x", where);
            const std::size_t refinements = count_or(req, "refinements", 4, where);
            const std::size_t base_n = sys.n >= 3 ? sys.n | 1u : 257;  // odd base grid
            const auto rep =
                ce_momentum_given_position(psi, sys.halfwidth, base_n, x, refinements);
            r["report"] = divergence_to_json(rep);
        } else if (quantity == "QUASI_CP") {
            allow_keys(req, {"quantity", "x"}, where);
            const double x = number_at(req, "x", where);
            const auto s = sample_gaussian_1d(sys.gaussian, sys.halfwidth, sys.n);
            const auto q = quasi_cp_momentum_given_position(s, x);
            r["x"] = x;
            r["snapped_x"] = q.snapped_x;
            r["p0"] = q.grid.p0;
            r["dp"] = q.grid.dp;
            r["unit_integral"] =
                ordered_json::array({q.unit_integral.real(), q.unit_integral.imag()});
            ordered_json values = ordered_json::array();
            for (const cplx& v : q.values) {
                values.push_back(ordered_json::array({v.real(), v.imag()}));
            }
            r["values"] = std::move(values);
        } else if (quantity == "COMMUTATOR") {
            allow_keys(req, {"quantity"}, where);
            const auto s = sample_gaussian_1d(sys.gaussian, sys.halfwidth, sys.n);
            const MomentumOperator p(s.grid(), 1.0, Boundary::zero);
            const cplx c = position_momentum_commutator_expectation(p, s);
            r["value"] = ordered_json::array({c.real(), c.imag()});
            r["error_vs_i_hbar"] = std::abs(c - cplx(0.0, 1.0));
        } else if (quantity == "WINDOW_CE") {
            allow_keys(req, {"quantity", "center", "halfwidth"}, where);
            const double center = number_at(req, "center", where);
            const double hw = number_at(req, "halfwidth", where);
            const auto s = sample_gaussian_1d(sys.gaussian, sys.halfwidth, sys.n);
            const cplx v = ce_momentum_given_window(s, Event::interval(center - hw, center + hw));
            r["window"] = ordered_json::array({center - hw, center + hw});
            r["value"] = ordered_json::array({v.real(), v.imag()});
            r["note"] = "window-smeared experiment; no point-conditioning limit implied";
        } else {
            throw ConfigError(where + ".quantity: unknown quantity '" + quantity + "'");
        }
        if (timing) r["elapsed_ms"] = elapsed_ms(t0);
        reports.push_back(std::move(r));
    }
    envelope["reports"] = std::move(reports);
}

}  // namespace

int run_command(const std::string& kind, const Options& opt) {
    try {
        const LoadedConfig cfg = load_config(opt.config_path);
        expect_object(cfg.doc, "config");
        if (kind == "evolve") {
            allow_keys(cfg.doc, {"kind", "system", "observable", "event", "given", "times", "seed"},
                       "config");
        } else {
            allow_keys(cfg.doc, {"kind", "system", "requests", "seed"}, "config");
        }
        const std::string declared =
            cfg.doc.contains("kind") ? string_at(cfg.doc, "kind", "config") : kind;
        if (declared != kind) {
            throw ConfigError("config.kind: '" + declared +
                              "' does not match the subcommand '" + kind + "'");
        }
        const std::uint64_t seed =
            cfg.doc.contains("seed") && !opt.seed_set
                ? std::uint64_t(count_at(cfg.doc, "seed", "config"))
                : opt.seed;

        ordered_json envelope = report_envelope(kind, config_hash(cfg.raw_bytes), seed);
        RunState state;
        std::string csv_out;

        if (kind == "discrete") {
            run_discrete(cfg.doc, envelope, state, opt.timing);
        } else if (kind == "grid1d") {
            run_grid1d(cfg.doc, envelope, state, opt.timing);
        } else if (kind == "grid2d") {
            run_grid2d(cfg.doc, envelope, state, opt.timing);
        } else if (kind == "fock") {
            run_fock(cfg.doc, envelope, state, opt.timing);
        } else if (kind == "evolve") {
            run_evolve(cfg.doc, envelope, csv_out, opt);
        } else if (kind == "noncomm") {
            run_noncomm(cfg.doc, envelope, opt.timing);
        } else {
            throw ConfigError("unknown system kind: " + kind);
        }

        if (opt.format == "csv" && csv_out.empty()) {
            if (kind != "discrete" && kind != "grid1d") {
                throw ConfigError("--format csv is supported for the discrete, grid1d "
                                  "and evolve kinds only");
            }
            csv_out = reports_to_csv(envelope["reports"]);
        }
        if (!csv_out.empty()) {
            write_output(csv_out, opt.out_path);
        } else {
            write_output(envelope.dump(2) + "\n", opt.out_path);
        }
        return state.any_mismatch ? 1 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}
