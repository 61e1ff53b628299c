#pragma once

#include "qprob/density.hpp"
#include "qprob/report.hpp"

namespace qprob {

/// One discrete observable: eigenvalues with complex amplitudes in the
/// orthonormal eigenbasis. Amplitudes are normalized on construction;
/// degenerate eigenvalues are allowed and need no special handling because
/// events are index sets, not value sets.
class DiscreteState {
public:
    DiscreteState(std::vector<double> eigenvalues, std::vector<cplx> amplitudes);

    std::size_t dim() const { return eigenvalues_.size(); }
    std::span<const double> eigenvalues() const { return eigenvalues_; }
    double eigenvalue(std::size_t i) const { return eigenvalues_[i]; }
    const DensityOperator& density() const { return rho_; }
    double weight(std::size_t i) const { return rho_.weight(i); }

private:
    std::vector<double> eigenvalues_;
    DensityOperator rho_;
};

/// Mean of the observable: sum of eigenvalue * weight. Debug builds also
/// evaluate the trace route and assert agreement.
double expectation(const DiscreteState& s);

/// Mean of the observable restricted to an event, normalized by the event
/// probability. Throws ZeroConditionEvent below the zero threshold.
double conditional_expectation(const DiscreteState& s, const Event& a);

double absolute_probability(const DiscreteState& s, const Event& a);

/// Probability of A given B. Throws ZeroConditionEvent when B carries no
/// probability.
double conditional_probability(const DiscreteState& s, const Event& a, const Event& b);

/// Event collecting every index whose eigenvalue lies in [lo, hi] (closed
/// on both ends); degenerate levels contribute all matching indices.
Event event_from_value_range(const DiscreteState& s, double lo, double hi);

// Report variants always evaluate both routes and record the discrepancy.
ConditionedReport ce_report(const DiscreteState& s, const Event& a);
ConditionedReport ap_report(const DiscreteState& s, const Event& a);
ConditionedReport cp_report(const DiscreteState& s, const Event& a, const Event& b);

}
