#include "qprob/numeric.hpp"

#include <cmath>
#include <cstdlib>

#include "qprob/errors.hpp"

namespace qprob {

double tolerance_scale() {
    static const double scale = [] {
        const char* env = std::getenv("QPROB_TOLERANCE_SCALE");
        if (env == nullptr) return 1.0;
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || !std::isfinite(v) || v < 1.0) return 1.0;
        return v;
    }();
    return scale;
}

double norm_squared(std::span<const cplx> amps, double weight) {
    KahanSum s;
    for (const cplx& a : amps) s.add(std::norm(a));
    return s.value() * weight;
}

double normalize_amplitudes(std::span<cplx> amps, double weight) {
    const double n2 = norm_squared(amps, weight);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw Error("cannot normalize amplitude vector with zero or non-finite norm");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amps) a *= inv;
    return n2;
}

}
