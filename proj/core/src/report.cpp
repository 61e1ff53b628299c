#include "qprob/report.hpp"

#include "qprob/numeric.hpp"

namespace qprob {

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::ce: return "CE";
        case Quantity::ap: return "AP";
        case Quantity::cp: return "CP";
    }
    return "?";
}

ConditionedReport make_report(Quantity q, double route_definition, double route_trace,
                              double tolerance, std::string event_desc,
                              std::string given_desc) {
    ConditionedReport r;
    r.quantity = q;
    r.route_definition = route_definition;
    r.route_trace = route_trace;
    r.value = route_definition;
    r.discrepancy = std::abs(route_definition - route_trace);
    r.tolerance = tolerance * tolerance_scale();
    r.ok = r.discrepancy <= r.tolerance;
    r.event_desc = std::move(event_desc);
    r.given_desc = std::move(given_desc);
    return r;
}

}
