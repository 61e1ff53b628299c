#pragma once

#include <functional>

#include "qprob/event.hpp"
#include "qprob/report.hpp"

namespace qprob {

// All integrals below are midpoint-rule quadratures: each grid point
// contributes |psi_j|^2 * dx, and interval events select points by
// cell-center inclusion.

double expectation_1d(const GridState1D& s);
double conditional_expectation_1d(const GridState1D& s, const Event& a);
double absolute_probability_1d(const GridState1D& s, const Event& a);
double conditional_probability_1d(const GridState1D& s, const Event& a, const Event& b);

ConditionedReport ce_report_1d(const GridState1D& s, const Event& a);
ConditionedReport ap_report_1d(const GridState1D& s, const Event& a);
ConditionedReport cp_report_1d(const GridState1D& s, const Event& a, const Event& b);

/// Conditional expectation of g(X, Y) given the event.
double ce_borel_2d(const GridState2D& s, const std::function<double(double, double)>& g,
                   const Event& a);

double absolute_probability_2d(const GridState2D& s, const Event& a);
double conditional_probability_2d(const GridState2D& s, const Event& a, const Event& b);

struct Marginals {
    std::vector<double> px;  // density per x grid point
    std::vector<double> py;  // density per y grid point
};

/// Row/column quadrature sums of the joint density; each marginal times its
/// spacing sums to 1.
Marginals marginals_2d(const GridState2D& s);

struct IndependenceReport {
    bool independent = false;
    double max_deviation = 0.0;  // max |P(x,y) - P(x) P(y)| over the grid
    double tolerance = 0.0;
};

/// Tests whether the joint density factorizes into the product of its
/// marginals within tol.
IndependenceReport independence_check(const GridState2D& s, double tol);

enum class Axis { x, y };

/// Conditional expectation of one coordinate given a 2D event.
double axis_conditional_expectation(const GridState2D& s, Axis axis, const Event& a);

/// E[X | Y = y] from the grid row nearest to y (nearest-point snapping; no
/// interpolation). Throws ZeroConditionEvent when the row carries no mass.
double ce_given_point(const GridState2D& s, double y);

/// Conditional density value P(x | Y = y); integrating over x (times dx)
/// gives 1.
double cp_given_point(const GridState2D& s, double x, double y);

/// Whole conditional density row at Y = y (one value per x grid point).
std::vector<double> conditional_density_given_point(const GridState2D& s, double y);

}
