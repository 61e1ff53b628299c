#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qprob/grid.hpp"

namespace qprob {

/// Sorted, duplicate-free set of basis indices.
struct DiscreteSet {
    std::vector<std::size_t> indices;
};

/// Disjoint union of closed intervals, sorted by left endpoint. Touching
/// intervals are merged at construction, so normalization is idempotent.
struct IntervalUnion {
    std::vector<std::array<double, 2>> intervals;
};

/// Explicit 0/1 mask over grid points (1D length n, 2D length nx*ny
/// row-major over x).
struct GridMaskEvent {
    std::vector<std::uint8_t> flags;
};

/// Rectangle-like region: independent interval unions per axis.
struct ProductEvent {
    IntervalUnion x;
    IntervalUnion y;
};

struct FockRange {
    long lo = 0;
    long hi = 0;
    bool empty() const { return lo > hi; }
};

/// Constraints on occupation vectors: optional per-mode ranges n_j in
/// [lo, hi] plus an optional bound on the total occupation sum.
struct FockPredicate {
    std::vector<std::optional<FockRange>> per_mode;
    std::optional<FockRange> total;
};

/// A measurable set of outcomes. Immutable after construction; all set
/// algebra is normalized up front so invariants hold for the lifetime of
/// the value.
class Event {
public:
    using Variant = std::variant<DiscreteSet, IntervalUnion, GridMaskEvent,
                                 ProductEvent, FockPredicate>;

    static Event discrete(std::vector<std::size_t> indices);
    /// Indices first..last-1 (a discrete Omega when covering the basis).
    static Event discrete_range(std::size_t first, std::size_t last);
    static Event intervals(std::vector<std::array<double, 2>> intervals);
    static Event interval(double lo, double hi);
    /// (-inf, inf): the continuous Omega.
    static Event full_line();
    static Event grid_mask(std::vector<std::uint8_t> flags);
    /// Product of two interval-union axis events.
    static Event product(IntervalUnion x_axis, IntervalUnion y_axis);
    static Event fock(FockPredicate p);

    const Variant& value() const { return v_; }

    bool holds_discrete() const { return std::holds_alternative<DiscreteSet>(v_); }
    bool holds_intervals() const { return std::holds_alternative<IntervalUnion>(v_); }
    bool holds_fock() const { return std::holds_alternative<FockPredicate>(v_); }

    /// Structurally empty set (no indices / no intervals / all-false mask).
    bool surely_empty() const;

    std::string describe() const;

    /// Indicator mask over a discrete basis of the given dimension.
    std::vector<std::uint8_t> mask(std::size_t dim) const;
    /// Indicator mask over 1D grid points (interval events include a point
    /// iff some closed interval contains it).
    std::vector<std::uint8_t> mask(const UniformGrid& g) const;
    /// Indicator mask over a 2D grid, row-major over x.
    std::vector<std::uint8_t> mask(const UniformGrid& gx, const UniformGrid& gy) const;

    /// Fock-predicate membership test for an occupation vector.
    bool admits(std::span<const std::size_t> occupation) const;

private:
    explicit Event(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Normalized intersection of two events of the same variant (Product
/// events intersect axis-wise). Throws IncompatibleEvents otherwise.
Event event_intersect(const Event& a, const Event& b);

/// Diagonal 0/1 projector onto an event in a fixed basis. Idempotent by
/// construction; composition is the elementwise product of masks.
struct IndicatorMask {
    std::vector<std::uint8_t> flags;

    IndicatorMask compose(const IndicatorMask& other) const;
    /// Zeroes the excluded components in place.
    void apply(std::span<cplx> v) const;
    bool all_ones() const;
    std::size_t count() const;
};

IndicatorMask indicator(const Event& e, std::size_t dim);
IndicatorMask indicator(const Event& e, const UniformGrid& g);
IndicatorMask indicator(const Event& e, const UniformGrid& gx, const UniformGrid& gy);

}
