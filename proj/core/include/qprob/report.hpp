#pragma once

#include <cmath>
#include <string>

namespace qprob {

enum class Quantity { ce, ap, cp };

const char* to_string(Quantity q);

/// One computed quantity together with both derivation routes and their
/// discrepancy. The probability-space (definition) route and the
/// density-operator (trace) route must agree; the verdict records whether
/// they did at the stated tolerance.
struct ConditionedReport {
    Quantity quantity = Quantity::ce;
    double value = 0.0;             // definition-route value
    double route_definition = 0.0;
    double route_trace = 0.0;
    double discrepancy = 0.0;       // |route_definition - route_trace|
    double tolerance = 0.0;
    bool ok = false;
    std::string event_desc;
    std::string given_desc;         // empty when conditioning on the full space
    double elapsed_ms = 0.0;        // filled by callers that time the computation
};

ConditionedReport make_report(Quantity q, double route_definition, double route_trace,
                              double tolerance, std::string event_desc,
                              std::string given_desc = {});

}
