#include "qprob/discrete.hpp"

#include <cassert>
#include <cmath>

namespace qprob {

namespace {
constexpr double k_route_tol = 1e-12;
}

DiscreteState::DiscreteState(std::vector<double> eigenvalues, std::vector<cplx> amplitudes)
    : eigenvalues_(std::move(eigenvalues)), rho_(std::move(amplitudes)) {
    if (eigenvalues_.size() != rho_.dim()) {
        throw DimensionMismatch("eigenvalue and amplitude vectors differ in length");
    }
    for (double e : eigenvalues_) {
        if (!std::isfinite(e)) throw Error("eigenvalues must be finite");
    }
}

namespace {

// Probability-space route: direct weighted sums over the event indices.
struct MaskedSums {
    double weighted = 0.0;  // sum eps_i |c_i|^2 over the event
    double total = 0.0;     // sum |c_i|^2 over the event
};

MaskedSums masked_sums(const DiscreteState& s, const std::vector<std::uint8_t>& mask) {
    KahanSum num, den;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (!mask[i]) continue;
        const double w = s.weight(i);
        num.add(s.eigenvalue(i) * w);
        den.add(w);
    }
    return {num.value(), den.value()};
}

double ce_definition_route(const DiscreteState& s, const Event& a) {
    const auto sums = masked_sums(s, a.mask(s.dim()));
    if (sums.total <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return sums.weighted / sums.total;
}

// Trace route through the conditional density operator.
double ce_trace_route(const DiscreteState& s, const Event& a) {
    const ConditionalDensityOperator rho_a = cdo(s.density(), a);
    if (rho_a.trace() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    const double num = observable_indicator_trace(s.density(), s.eigenvalues(), a);
    return num / rho_a.trace();
}

double ap_definition_route(const DiscreteState& s, const Event& a) {
    const auto mask = a.mask(s.dim());
    KahanSum sum;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (mask[i]) sum.add(s.weight(i));
    }
    return sum.value();
}

double cp_definition_route(const DiscreteState& s, const Event& a, const Event& b) {
    const double pb = ap_definition_route(s, b);
    if (pb <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return ap_definition_route(s, event_intersect(a, b)) / pb;
}

double cp_trace_route(const DiscreteState& s, const Event& a, const Event& b) {
    const double denom = cdo(s.density(), b).trace();
    if (denom <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return cdo(s.density(), event_intersect(a, b)).trace() / denom;
}

}  // namespace

double expectation(const DiscreteState& s) {
    KahanSum sum;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        sum.add(s.eigenvalue(i) * s.weight(i));
    }
    const double value = sum.value();
#ifndef NDEBUG
    const double trace_route =
        observable_indicator_trace(s.density(), s.eigenvalues(),
                                   Event::discrete_range(0, s.dim()));
    assert(std::abs(value - trace_route) < k_route_tol * tolerance_scale());
#endif
    return value;
}

double conditional_expectation(const DiscreteState& s, const Event& a) {
    const double value = ce_definition_route(s, a);
#ifndef NDEBUG
    assert(std::abs(value - ce_trace_route(s, a)) < k_route_tol * tolerance_scale());
#endif
    return value;
}

double absolute_probability(const DiscreteState& s, const Event& a) {
    return ap_definition_route(s, a);
}

double conditional_probability(const DiscreteState& s, const Event& a, const Event& b) {
    return cp_definition_route(s, a, b);
}

Event event_from_value_range(const DiscreteState& s, double lo, double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const double e = s.eigenvalue(i);
        if (e >= lo && e <= hi) idx.push_back(i);
    }
    return Event::discrete(std::move(idx));
}

ConditionedReport ce_report(const DiscreteState& s, const Event& a) {
    return make_report(Quantity::ce, ce_definition_route(s, a), ce_trace_route(s, a),
                       k_route_tol, a.describe());
}

ConditionedReport ap_report(const DiscreteState& s, const Event& a) {
    return make_report(Quantity::ap, ap_definition_route(s, a),
                       indicator_trace(s.density(), a), k_route_tol, a.describe());
}

ConditionedReport cp_report(const DiscreteState& s, const Event& a, const Event& b) {
    return make_report(Quantity::cp, cp_definition_route(s, a, b), cp_trace_route(s, a, b),
                       k_route_tol, a.describe(), b.describe());
}

}
