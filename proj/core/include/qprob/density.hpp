#pragma once

#include <span>
#include <vector>

#include "qprob/event.hpp"

namespace qprob {

/// Pure-state density operator stored as its amplitude vector. Every trace
/// formula over a diagonal observable reduces to a weighted sum of |c_i|^2,
/// so the full matrix is never materialized.
class DensityOperator {
public:
    /// Normalizes on construction; throws Error on a zero vector.
    explicit DensityOperator(std::vector<cplx> amplitudes);

    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }

    /// Born weight |c_i|^2.
    double weight(std::size_t i) const;

    /// Sum of |c_i|^2 (1 up to rounding).
    double trace() const;

    /// Trace of the squared operator; equals trace()^2 for a rank-1 state.
    double purity_trace() const;

private:
    std::vector<cplx> amps_;
};

/// Conditional density operator: the base state restricted to an event.
/// Not unit trace; its trace equals the absolute probability of the event.
class ConditionalDensityOperator {
public:
    ConditionalDensityOperator(DensityOperator base, Event event);

    const DensityOperator& base() const { return base_; }
    const Event& event() const { return event_; }
    double trace() const { return trace_; }

private:
    DensityOperator base_;
    Event event_;
    double trace_;
};

/// Trace of the density operator against the event indicator: the absolute
/// probability of the event. Empty events give 0.
double indicator_trace(const DensityOperator& rho, const Event& a);

ConditionalDensityOperator cdo(const DensityOperator& rho, Event a);

/// Trace against the indicator of X composed with the indicator of Y,
/// divided by the trace against the indicator of Y alone; the conditional
/// probability of X given Y. Throws ZeroConditionEvent when Y carries no
/// probability.
double normalized_cdo_trace(const DensityOperator& rho, const Event& x, const Event& y);

/// Trace of (diagonal observable) x (density) x (event indicator); the
/// numerator of the trace-route conditional expectation.
double observable_indicator_trace(const DensityOperator& rho, std::span<const double> obs,
                                  const Event& a);

}
