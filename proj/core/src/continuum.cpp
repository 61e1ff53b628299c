#include "qprob/continuum.hpp"

#include <cassert>
#include <cmath>

namespace qprob {

namespace {

constexpr double k_route_tol_grid = 1e-10;

double masked_weight_sum(const GridState1D& s, const std::vector<std::uint8_t>& mask) {
    KahanSum sum;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (mask[j]) sum.add(s.cell_weight(j));
    }
    return sum.value();
}

double masked_position_sum(const GridState1D& s, const std::vector<std::uint8_t>& mask) {
    KahanSum sum;
    const UniformGrid& g = s.grid();
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (mask[j]) sum.add(g.point(j) * s.cell_weight(j));
    }
    return sum.value();
}

double ce_definition_route_1d(const GridState1D& s, const Event& a) {
    const auto mask = a.mask(s.grid());
    KahanSum num, den;
    const UniformGrid& g = s.grid();
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!mask[j]) continue;
        const double w = s.cell_weight(j);
        num.add(g.point(j) * w);
        den.add(w);
    }
    if (den.value() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return num.value() / den.value();
}

// Trace route: position observable against the conditional density operator.
double ce_trace_route_1d(const GridState1D& s, const Event& a) {
    const auto mask = a.mask(s.grid());
    const double trace = masked_weight_sum(s, mask);
    if (trace <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return masked_position_sum(s, mask) / trace;
}

double cp_definition_route_1d(const GridState1D& s, const Event& a, const Event& b) {
    const double pb = masked_weight_sum(s, b.mask(s.grid()));
    if (pb <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return masked_weight_sum(s, event_intersect(a, b).mask(s.grid())) / pb;
}

double cp_trace_route_1d(const GridState1D& s, const Event& a, const Event& b) {
    const auto ma = indicator(a, s.grid());
    const auto mb = indicator(b, s.grid());
    const double denom = masked_weight_sum(s, mb.flags);
    if (denom <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return masked_weight_sum(s, ma.compose(mb).flags) / denom;
}

double masked_weight_sum_2d(const GridState2D& s, const std::vector<std::uint8_t>& mask) {
    KahanSum sum;
    const double area = s.cell_area();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) sum.add(std::norm(s.psi()[i]) * area);
    }
    return sum.value();
}

std::size_t snap_row(const GridState2D& s, double y) { return s.grid_y().nearest_index(y); }

double row_mass(const GridState2D& s, std::size_t k) {
    KahanSum sum;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        sum.add(s.density(j, k) * s.grid_x().dx);
    }
    return sum.value();
}

}  // namespace

double expectation_1d(const GridState1D& s) {
    KahanSum sum;
    for (std::size_t j = 0; j < s.size(); ++j) {
        sum.add(s.grid().point(j) * s.cell_weight(j));
    }
    return sum.value();
}

double conditional_expectation_1d(const GridState1D& s, const Event& a) {
    const double value = ce_definition_route_1d(s, a);
#ifndef NDEBUG
    assert(std::abs(value - ce_trace_route_1d(s, a)) <
           k_route_tol_grid * tolerance_scale());
#endif
    return value;
}

double absolute_probability_1d(const GridState1D& s, const Event& a) {
    return masked_weight_sum(s, a.mask(s.grid()));
}

double conditional_probability_1d(const GridState1D& s, const Event& a, const Event& b) {
    return cp_definition_route_1d(s, a, b);
}

ConditionedReport ce_report_1d(const GridState1D& s, const Event& a) {
    return make_report(Quantity::ce, ce_definition_route_1d(s, a), ce_trace_route_1d(s, a),
                       k_route_tol_grid, a.describe());
}

ConditionedReport ap_report_1d(const GridState1D& s, const Event& a) {
    const auto mask = a.mask(s.grid());
    // definition route sums cell weights; trace route composes the
    // indicator with the full-space mask before summing
    const double definition = masked_weight_sum(s, mask);
    const auto full = indicator(Event::full_line(), s.grid());
    const double trace = masked_weight_sum(s, indicator(a, s.grid()).compose(full).flags);
    return make_report(Quantity::ap, definition, trace, k_route_tol_grid, a.describe());
}

ConditionedReport cp_report_1d(const GridState1D& s, const Event& a, const Event& b) {
    return make_report(Quantity::cp, cp_definition_route_1d(s, a, b),
                       cp_trace_route_1d(s, a, b), k_route_tol_grid, a.describe(),
                       b.describe());
}

double ce_borel_2d(const GridState2D& s, const std::function<double(double, double)>& g,
                   const Event& a) {
    const auto mask = a.mask(s.grid_x(), s.grid_y());
    KahanSum num, den;
    const double area = s.cell_area();
    for (std::size_t j = 0; j < s.nx(); ++j) {
        const double x = s.grid_x().point(j);
        for (std::size_t k = 0; k < s.ny(); ++k) {
            if (!mask[j * s.ny() + k]) continue;
            const double w = std::norm(s.psi()[j * s.ny() + k]) * area;
            const double gv = g(x, s.grid_y().point(k));
            if (!std::isfinite(gv)) throw Error("observable g(x,y) is not finite on the grid");
            num.add(gv * w);
            den.add(w);
        }
    }
    if (den.value() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return num.value() / den.value();
}

double absolute_probability_2d(const GridState2D& s, const Event& a) {
    return masked_weight_sum_2d(s, a.mask(s.grid_x(), s.grid_y()));
}

double conditional_probability_2d(const GridState2D& s, const Event& a, const Event& b) {
    const double pb = absolute_probability_2d(s, b);
    if (pb <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + b.describe());
    }
    return absolute_probability_2d(s, event_intersect(a, b)) / pb;
}

Marginals marginals_2d(const GridState2D& s) {
    Marginals m;
    m.px.assign(s.nx(), 0.0);
    m.py.assign(s.ny(), 0.0);
    for (std::size_t j = 0; j < s.nx(); ++j) {
        KahanSum row;
        for (std::size_t k = 0; k < s.ny(); ++k) {
            row.add(s.density(j, k) * s.grid_y().dx);
        }
        m.px[j] = row.value();
    }
    for (std::size_t k = 0; k < s.ny(); ++k) {
        KahanSum col;
        for (std::size_t j = 0; j < s.nx(); ++j) {
            col.add(s.density(j, k) * s.grid_x().dx);
        }
        m.py[k] = col.value();
    }
    return m;
}

IndependenceReport independence_check(const GridState2D& s, double tol) {
    const Marginals m = marginals_2d(s);
    double max_dev = 0.0;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < s.ny(); ++k) {
            const double dev = std::abs(s.density(j, k) - m.px[j] * m.py[k]);
            if (dev > max_dev) max_dev = dev;
        }
    }
    return IndependenceReport{max_dev <= tol, max_dev, tol};
}

double axis_conditional_expectation(const GridState2D& s, Axis axis, const Event& a) {
    const auto mask = a.mask(s.grid_x(), s.grid_y());
    KahanSum num, den;
    const double area = s.cell_area();
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < s.ny(); ++k) {
            if (!mask[j * s.ny() + k]) continue;
            const double w = std::norm(s.psi()[j * s.ny() + k]) * area;
            const double coord =
                axis == Axis::x ? s.grid_x().point(j) : s.grid_y().point(k);
            num.add(coord * w);
            den.add(w);
        }
    }
    if (den.value() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("conditioning event has probability <= 1e-14: " + a.describe());
    }
    return num.value() / den.value();
}

double ce_given_point(const GridState2D& s, double y) {
    const std::size_t k = snap_row(s, y);
    const double mass = row_mass(s, k);
    if (mass <= k_zero_condition_tol) {
        throw ZeroConditionEvent("grid row nearest y carries no probability mass");
    }
    KahanSum num;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        num.add(s.grid_x().point(j) * s.density(j, k) * s.grid_x().dx);
    }
    return num.value() / mass;
}

double cp_given_point(const GridState2D& s, double x, double y) {
    const std::size_t k = snap_row(s, y);
    const double mass = row_mass(s, k);
    if (mass <= k_zero_condition_tol) {
        throw ZeroConditionEvent("grid row nearest y carries no probability mass");
    }
    const std::size_t j = s.grid_x().nearest_index(x);
    return s.density(j, k) / mass;
}

std::vector<double> conditional_density_given_point(const GridState2D& s, double y) {
    const std::size_t k = snap_row(s, y);
    const double mass = row_mass(s, k);
    if (mass <= k_zero_condition_tol) {
        throw ZeroConditionEvent("grid row nearest y carries no probability mass");
    }
    std::vector<double> row(s.nx());
    for (std::size_t j = 0; j < s.nx(); ++j) {
        row[j] = s.density(j, k) / mass;
    }
    return row;
}

}
