#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "qprob/discrete.hpp"
#include "qprob/event.hpp"

namespace qprob::cli {

// Schema violations; turned into exit code 2 with a diagnostic naming the
// offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedConfig {
    nlohmann::json doc;
    std::string raw_bytes;  // hashed verbatim for reproducibility
};

LoadedConfig load_config(const std::string& path);

// Strict-schema helpers; `where` is the JSON-pointer-ish location used in
// diagnostics. Unknown fields are rejected.
const nlohmann::json& expect_object(const nlohmann::json& j, const std::string& where);
void allow_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                const std::string& where);
const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                  const std::string& where);
double number_at(const nlohmann::json& j, const char* key, const std::string& where);
double number_or(const nlohmann::json& j, const char* key, double fallback,
                 const std::string& where);
std::size_t count_at(const nlohmann::json& j, const char* key, const std::string& where);
std::size_t count_or(const nlohmann::json& j, const char* key, std::size_t fallback,
                     const std::string& where);
std::string string_at(const nlohmann::json& j, const char* key, const std::string& where);

std::vector<double> real_vector(const nlohmann::json& j, const std::string& where);
// [[re, im], ...]
std::vector<cplx> complex_vector(const nlohmann::json& j, const std::string& where);

// Event parsers; the accepted forms depend on the system kind.
Event parse_event_discrete(const nlohmann::json& j, const DiscreteState& s,
                           const std::string& where);
Event parse_event_grid1d(const nlohmann::json& j, const std::string& where);
Event parse_event_grid2d(const nlohmann::json& j, const std::string& where);
Event parse_event_fock(const nlohmann::json& j, std::size_t modes,
                       const std::string& where);

}
