#pragma once

#include <json.hpp>
#include <string>

namespace qprob::cli {

using ordered_json = nlohmann::ordered_json;

// 64-bit FNV-1a of the raw config bytes, as "fnv1a64:<hex>".
std::string config_hash(const std::string& bytes);

// "%.17g"; NaN prints as "nan".
std::string format_double(double v);

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& text, const std::string& out_path);

ordered_json report_envelope(const std::string& kind, const std::string& hash,
                             std::uint64_t seed);

}
