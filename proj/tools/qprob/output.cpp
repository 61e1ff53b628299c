#include "output.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qprob/errors.hpp"
#include "qprob/version.hpp"

namespace qprob::cli {

std::string config_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + out_path);
    out << text;
}

ordered_json report_envelope(const std::string& kind, const std::string& hash,
                             std::uint64_t seed) {
    ordered_json j;
    j["tool"] = k_tool_name;
    j["version"] = k_tool_version;
    j["config_hash"] = hash;
    j["kind"] = kind;
    j["seed"] = seed;
    return j;
}

}
