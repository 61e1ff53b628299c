#include "qprob/event.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qprob {

namespace {

void sort_unique(std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Sort by left endpoint and merge overlapping or touching closed intervals.
IntervalUnion normalize_intervals(std::vector<std::array<double, 2>> iv) {
    for (const auto& [lo, hi] : iv) {
        if (std::isnan(lo) || std::isnan(hi)) throw Error("interval endpoint is NaN");
        if (lo > hi) throw Error("interval with lo > hi");
    }
    std::sort(iv.begin(), iv.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    std::vector<std::array<double, 2>> merged;
    for (const auto& cur : iv) {
        if (!merged.empty() && cur[0] <= merged.back()[1]) {
            merged.back()[1] = std::max(merged.back()[1], cur[1]);
        } else {
            merged.push_back(cur);
        }
    }
    return IntervalUnion{std::move(merged)};
}

bool interval_union_contains(const IntervalUnion& u, double x) {
    for (const auto& [lo, hi] : u.intervals) {
        if (x < lo) return false;  // sorted; later intervals start further right
        if (x <= hi) return true;
    }
    return false;
}

IntervalUnion intersect_interval_unions(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<std::array<double, 2>> out;
    std::size_t i = 0, j = 0;
    while (i < a.intervals.size() && j < b.intervals.size()) {
        const double lo = std::max(a.intervals[i][0], b.intervals[j][0]);
        const double hi = std::min(a.intervals[i][1], b.intervals[j][1]);
        if (lo <= hi) out.push_back({lo, hi});
        if (a.intervals[i][1] < b.intervals[j][1]) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalUnion{std::move(out)};
}

FockRange intersect_ranges(const FockRange& a, const FockRange& b) {
    return FockRange{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::vector<std::uint8_t> interval_mask(const IntervalUnion& u, const UniformGrid& g) {
    std::vector<std::uint8_t> m(g.n, 0);
    for (std::size_t j = 0; j < g.n; ++j) {
        m[j] = interval_union_contains(u, g.point(j)) ? 1 : 0;
    }
    return m;
}

std::string format_number(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

Event Event::discrete(std::vector<std::size_t> indices) {
    sort_unique(indices);
    return Event(DiscreteSet{std::move(indices)});
}

Event Event::discrete_range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> idx;
    for (std::size_t i = first; i < last; ++i) idx.push_back(i);
    return Event(DiscreteSet{std::move(idx)});
}

Event Event::intervals(std::vector<std::array<double, 2>> iv) {
    return Event(normalize_intervals(std::move(iv)));
}

Event Event::interval(double lo, double hi) {
    return intervals({{lo, hi}});
}

Event Event::full_line() {
    const double inf = std::numeric_limits<double>::infinity();
    return interval(-inf, inf);
}

Event Event::grid_mask(std::vector<std::uint8_t> flags) {
    for (auto& f : flags) f = f ? 1 : 0;
    return Event(GridMaskEvent{std::move(flags)});
}

Event Event::product(IntervalUnion x_axis, IntervalUnion y_axis) {
    return Event(ProductEvent{normalize_intervals(std::move(x_axis.intervals)),
                              normalize_intervals(std::move(y_axis.intervals))});
}

Event Event::fock(FockPredicate p) {
    return Event(std::move(p));
}

bool Event::surely_empty() const {
    return std::visit(
        [](const auto& e) -> bool {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, DiscreteSet>) {
                return e.indices.empty();
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                return e.intervals.empty();
            } else if constexpr (std::is_same_v<T, GridMaskEvent>) {
                return std::all_of(e.flags.begin(), e.flags.end(),
                                   [](std::uint8_t f) { return f == 0; });
            } else if constexpr (std::is_same_v<T, ProductEvent>) {
                return e.x.intervals.empty() || e.y.intervals.empty();
            } else {
                const FockPredicate& p = e;
                if (p.total && p.total->empty()) return true;
                for (const auto& r : p.per_mode) {
                    if (r && r->empty()) return true;
                }
                return false;
            }
        },
        v_);
}

std::string Event::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, DiscreteSet>) {
                os << "indices{";
                const std::size_t shown = std::min<std::size_t>(e.indices.size(), 8);
                for (std::size_t i = 0; i < shown; ++i) {
                    if (i) os << ",";
                    os << e.indices[i];
                }
                if (e.indices.size() > shown) os << ",..(" << e.indices.size() << " total)";
                os << "}";
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                if (e.intervals.empty()) {
                    os << "intervals{}";
                    return;
                }
                os << "intervals";
                for (std::size_t i = 0; i < e.intervals.size(); ++i) {
                    if (i) os << "u";
                    os << "[" << format_number(e.intervals[i][0]) << ","
                       << format_number(e.intervals[i][1]) << "]";
                }
            } else if constexpr (std::is_same_v<T, GridMaskEvent>) {
                const std::size_t on = std::size_t(
                    std::count(e.flags.begin(), e.flags.end(), std::uint8_t(1)));
                os << "mask(" << on << " of " << e.flags.size() << ")";
            } else if constexpr (std::is_same_v<T, ProductEvent>) {
                os << "product(x:" << Event::intervals(e.x.intervals).describe()
                   << ", y:" << Event::intervals(e.y.intervals).describe() << ")";
            } else {
                const FockPredicate& p = e;
                os << "fock(";
                bool first = true;
                for (std::size_t j = 0; j < p.per_mode.size(); ++j) {
                    if (!p.per_mode[j]) continue;
                    if (!first) os << ",";
                    first = false;
                    os << "n" << j << " in [" << p.per_mode[j]->lo << ","
                       << p.per_mode[j]->hi << "]";
                }
                if (p.total) {
                    if (!first) os << ",";
                    os << "total in [" << p.total->lo << "," << p.total->hi << "]";
                }
                os << ")";
            }
        },
        v_);
    return os.str();
}

std::vector<std::uint8_t> Event::mask(std::size_t dim) const {
    if (const auto* d = std::get_if<DiscreteSet>(&v_)) {
        std::vector<std::uint8_t> m(dim, 0);
        for (std::size_t i : d->indices) {
            if (i >= dim) {
                throw IncompatibleEvents("event index " + std::to_string(i) +
                                         " outside basis dimension " + std::to_string(dim));
            }
            m[i] = 1;
        }
        return m;
    }
    if (const auto* g = std::get_if<GridMaskEvent>(&v_)) {
        if (g->flags.size() != dim) {
            throw IncompatibleEvents("mask length does not match basis dimension");
        }
        return g->flags;
    }
    throw IncompatibleEvents("event variant has no mask over a discrete basis");
}

std::vector<std::uint8_t> Event::mask(const UniformGrid& g) const {
    if (const auto* iv = std::get_if<IntervalUnion>(&v_)) {
        return interval_mask(*iv, g);
    }
    if (const auto* d = std::get_if<DiscreteSet>(&v_)) {
        // exact grid-cell point events
        std::vector<std::uint8_t> m(g.n, 0);
        for (std::size_t i : d->indices) {
            if (i >= g.n) throw IncompatibleEvents("grid-cell index outside grid");
            m[i] = 1;
        }
        return m;
    }
    if (const auto* gm = std::get_if<GridMaskEvent>(&v_)) {
        if (gm->flags.size() != g.n) {
            throw IncompatibleEvents("mask length does not match grid size");
        }
        return gm->flags;
    }
    throw IncompatibleEvents("event variant has no mask over a 1D grid");
}

std::vector<std::uint8_t> Event::mask(const UniformGrid& gx, const UniformGrid& gy) const {
    if (const auto* p = std::get_if<ProductEvent>(&v_)) {
        const auto mx = interval_mask(p->x, gx);
        const auto my = interval_mask(p->y, gy);
        std::vector<std::uint8_t> m(gx.n * gy.n, 0);
        for (std::size_t j = 0; j < gx.n; ++j) {
            if (!mx[j]) continue;
            for (std::size_t k = 0; k < gy.n; ++k) {
                m[j * gy.n + k] = my[k];
            }
        }
        return m;
    }
    if (const auto* gm = std::get_if<GridMaskEvent>(&v_)) {
        if (gm->flags.size() != gx.n * gy.n) {
            throw IncompatibleEvents("mask length does not match 2D grid size");
        }
        return gm->flags;
    }
    throw IncompatibleEvents("event variant has no mask over a 2D grid");
}

bool Event::admits(std::span<const std::size_t> occupation) const {
    const auto* p = std::get_if<FockPredicate>(&v_);
    if (p == nullptr) throw IncompatibleEvents("event is not an occupation predicate");
    for (std::size_t j = 0; j < p->per_mode.size(); ++j) {
        if (!p->per_mode[j]) continue;
        if (j >= occupation.size()) return false;
        const long nj = long(occupation[j]);
        if (nj < p->per_mode[j]->lo || nj > p->per_mode[j]->hi) return false;
    }
    if (p->total) {
        long total = 0;
        for (std::size_t nj : occupation) total += long(nj);
        if (total < p->total->lo || total > p->total->hi) return false;
    }
    return true;
}

Event event_intersect(const Event& a, const Event& b) {
    const auto& va = a.value();
    const auto& vb = b.value();

    if (const auto* da = std::get_if<DiscreteSet>(&va)) {
        const auto* db = std::get_if<DiscreteSet>(&vb);
        if (db == nullptr) throw IncompatibleEvents("cannot intersect discrete set with other variant");
        std::vector<std::size_t> out;
        std::set_intersection(da->indices.begin(), da->indices.end(),
                              db->indices.begin(), db->indices.end(),
                              std::back_inserter(out));
        return Event::discrete(std::move(out));
    }
    if (const auto* ia = std::get_if<IntervalUnion>(&va)) {
        const auto* ib = std::get_if<IntervalUnion>(&vb);
        if (ib == nullptr) throw IncompatibleEvents("cannot intersect interval union with other variant");
        return Event::intervals(intersect_interval_unions(*ia, *ib).intervals);
    }
    if (const auto* ga = std::get_if<GridMaskEvent>(&va)) {
        const auto* gb = std::get_if<GridMaskEvent>(&vb);
        if (gb == nullptr || gb->flags.size() != ga->flags.size()) {
            throw IncompatibleEvents("grid masks must have matching length");
        }
        std::vector<std::uint8_t> m(ga->flags.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ga->flags[i] & gb->flags[i];
        return Event::grid_mask(std::move(m));
    }
    if (const auto* pa = std::get_if<ProductEvent>(&va)) {
        const auto* pb = std::get_if<ProductEvent>(&vb);
        if (pb == nullptr) throw IncompatibleEvents("cannot intersect product event with other variant");
        return Event::product(intersect_interval_unions(pa->x, pb->x),
                              intersect_interval_unions(pa->y, pb->y));
    }
    const auto* fa = std::get_if<FockPredicate>(&va);
    const auto* fb = std::get_if<FockPredicate>(&vb);
    if (fa == nullptr || fb == nullptr) {
        throw IncompatibleEvents("cannot intersect occupation predicate with other variant");
    }
    FockPredicate out;
    out.per_mode.resize(std::max(fa->per_mode.size(), fb->per_mode.size()));
    for (std::size_t j = 0; j < out.per_mode.size(); ++j) {
        const auto& ra = j < fa->per_mode.size() ? fa->per_mode[j] : std::nullopt;
        const auto& rb = j < fb->per_mode.size() ? fb->per_mode[j] : std::nullopt;
        if (ra && rb) {
            out.per_mode[j] = intersect_ranges(*ra, *rb);
        } else {
            out.per_mode[j] = ra ? ra : rb;
        }
    }
    if (fa->total && fb->total) {
        out.total = intersect_ranges(*fa->total, *fb->total);
    } else {
        out.total = fa->total ? fa->total : fb->total;
    }
    return Event::fock(std::move(out));
}

IndicatorMask IndicatorMask::compose(const IndicatorMask& other) const {
    if (flags.size() != other.flags.size()) {
        throw IncompatibleEvents("indicator masks must have matching length");
    }
    IndicatorMask out;
    out.flags.resize(flags.size());
    for (std::size_t i = 0; i < flags.size(); ++i) {
        out.flags[i] = flags[i] & other.flags[i];
    }
    return out;
}

void IndicatorMask::apply(std::span<cplx> v) const {
    if (v.size() != flags.size()) {
        throw DimensionMismatch("vector length does not match indicator mask");
    }
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (!flags[i]) v[i] = cplx(0.0, 0.0);
    }
}

bool IndicatorMask::all_ones() const {
    return std::all_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f == 1; });
}

std::size_t IndicatorMask::count() const {
    return std::size_t(std::count(flags.begin(), flags.end(), std::uint8_t(1)));
}

IndicatorMask indicator(const Event& e, std::size_t dim) {
    return IndicatorMask{e.mask(dim)};
}

IndicatorMask indicator(const Event& e, const UniformGrid& g) {
    return IndicatorMask{e.mask(g)};
}

IndicatorMask indicator(const Event& e, const UniformGrid& gx, const UniformGrid& gy) {
    return IndicatorMask{e.mask(gx, gy)};
}

}
