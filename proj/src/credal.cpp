#include "imc/credal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace imc {

namespace {

constexpr double kBoundTol = 1e-12;

double sum(const Distribution& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double dot(const Distribution& p, const Gamble& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += p[i] * f[i];
    }
    return s;
}

void check_dims(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw Error(ErrorKind::DimensionMismatch, "dimension mismatch: expected " +
                                                      std::to_string(expected) + ", got " +
                                                      std::to_string(got));
    }
}

void validate_mass(const Distribution& p, double tol) {
    for (double v : p) {
        if (!std::isfinite(v) || v < -tol) {
            throw Error(ErrorKind::InvalidArgument, "mass function has a negative entry");
        }
    }
    if (std::abs(sum(p) - 1.0) > tol) {
        throw Error(ErrorKind::InvalidArgument, "mass function does not sum to one");
    }
}

// Greedy allocation: start from the lower bounds and hand out the remaining
// mass to the states with the largest f first. Ties keep input order.
double interval_upper(const IntervalRow& row, const Gamble& f) {
    const std::size_t n = row.lower.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
    double remaining = 1.0 - sum(row.lower);
    double value = dot(row.lower, f);
    for (auto i : order) {
        if (remaining <= 0.0) {
            break;
        }
        const double add = std::min(row.upper[i] - row.lower[i], remaining);
        value += add * f[i];
        remaining -= add;
    }
    return value;
}

std::vector<Distribution> interval_extreme_points(const IntervalRow& row, const Config& cfg) {
    const std::size_t n = row.lower.size();
    if (n > 22) {
        throw Error(ErrorKind::VertexBudgetExceeded,
                    "interval row over " + std::to_string(n) + " states is too large to enumerate");
    }
    // A point of {l <= p <= u, sum p = 1} is extreme iff all but at most one
    // coordinate sit at a bound. Enumerate the free coordinate and the bound
    // pattern of the others.
    std::vector<Distribution> points;
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    for (std::size_t free = 0; free < n; ++free) {
        for (std::uint64_t pat = 0; pat < patterns; ++pat) {
            Distribution p(n);
            double rest = 0.0;
            std::size_t bit = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == free) {
                    continue;
                }
                p[j] = ((pat >> bit) & 1U) ? row.upper[j] : row.lower[j];
                rest += p[j];
                ++bit;
            }
            const double pf = 1.0 - rest;
            if (pf < row.lower[free] - kBoundTol || pf > row.upper[free] + kBoundTol) {
                continue;
            }
            p[free] = std::clamp(pf, row.lower[free], row.upper[free]);
            points.push_back(std::move(p));
        }
        if (n == 1) {
            break;
        }
    }
    auto unique = dedupe_points(std::move(points), kBoundTol);
    if (unique.size() > cfg.max_vertices) {
        throw Error(ErrorKind::VertexBudgetExceeded,
                    "interval row has " + std::to_string(unique.size()) +
                        " extreme points, cap is " + std::to_string(cfg.max_vertices));
    }
    return unique;
}

StateSet mass_support(const Distribution& p, double eps) {
    StateSet s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > eps) {
            s.insert(i);
        }
    }
    return s;
}

} // namespace

std::vector<Distribution> dedupe_points(std::vector<Distribution> points, double tol) {
    std::sort(points.begin(), points.end());
    std::vector<Distribution> kept;
    kept.reserve(points.size());
    for (auto& p : points) {
        bool duplicate = false;
        // kept is sorted by first coordinate; only scan the tail within tol
        for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
            if (!p.empty() && (*it)[0] < p[0] - tol) {
                break;
            }
            double diff = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                diff = std::max(diff, std::abs(p[i] - (*it)[i]));
            }
            if (diff <= tol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            kept.push_back(std::move(p));
        }
    }
    return kept;
}

CredalRow CredalRow::from_vertices(std::vector<Distribution> vertices, double tol) {
    if (vertices.empty()) {
        throw Error(ErrorKind::EmptyCredalSet, "vertex row has no vertices");
    }
    const std::size_t n = vertices.front().size();
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "vertex of length zero");
    }
    for (auto& v : vertices) {
        check_dims(n, v.size());
        validate_mass(v, tol);
        for (auto& x : v) {
            x = std::max(x, 0.0);
        }
    }
    return CredalRow(VertexRow{std::move(vertices)});
}

CredalRow CredalRow::from_interval(Distribution lower, Distribution upper) {
    check_dims(lower.size(), upper.size());
    if (lower.empty()) {
        throw Error(ErrorKind::InvalidArgument, "interval row of length zero");
    }
    return CredalRow(coherence_normalize(IntervalRow{std::move(lower), std::move(upper)}));
}

std::size_t CredalRow::size() const {
    return std::visit(
        [](const auto& r) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, VertexRow>) {
                return r.vertices.front().size();
            } else {
                return r.lower.size();
            }
        },
        form_);
}

std::optional<Distribution> CredalRow::precise_mass(double tol) const {
    if (const auto* v = std::get_if<VertexRow>(&form_)) {
        auto unique = dedupe_points(v->vertices, tol);
        if (unique.size() == 1) {
            return unique.front();
        }
        return std::nullopt;
    }
    const auto& r = std::get<IntervalRow>(form_);
    for (std::size_t i = 0; i < r.lower.size(); ++i) {
        if (r.upper[i] - r.lower[i] > tol) {
            return std::nullopt;
        }
    }
    return r.lower;
}

IntervalRow coherence_normalize(const IntervalRow& row) {
    check_dims(row.lower.size(), row.upper.size());
    const std::size_t n = row.lower.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double l = row.lower[i];
        const double u = row.upper[i];
        if (!std::isfinite(l) || !std::isfinite(u) || l < -kBoundTol || u > 1.0 + kBoundTol ||
            l > u + kBoundTol) {
            throw Error(ErrorKind::InvalidArgument,
                        "interval bounds must satisfy 0 <= lower <= upper <= 1");
        }
    }
    const double sl = sum(row.lower);
    const double su = sum(row.upper);
    if (sl > 1.0 + kBoundTol) {
        throw Error(ErrorKind::EmptyCredalSet, "sum of lower bounds exceeds one");
    }
    if (su < 1.0 - kBoundTol) {
        throw Error(ErrorKind::EmptyCredalSet, "sum of upper bounds is below one");
    }
    IntervalRow out{Distribution(n), Distribution(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double l = std::clamp(row.lower[i], 0.0, 1.0);
        const double u = std::clamp(row.upper[i], 0.0, 1.0);
        out.lower[i] = std::max(l, 1.0 - (su - row.upper[i]));
        out.upper[i] = std::min(u, 1.0 - (sl - row.lower[i]));
        if (out.lower[i] > out.upper[i] + kBoundTol) {
            throw Error(ErrorKind::EmptyCredalSet, "tightened bounds are inconsistent");
        }
        out.lower[i] = std::clamp(out.lower[i], 0.0, 1.0);
        out.upper[i] = std::clamp(std::max(out.upper[i], out.lower[i]), 0.0, 1.0);
    }
    return out;
}

double row_upper(const CredalRow& row, const Gamble& f) {
    check_dims(row.size(), f.size());
    if (const auto* v = std::get_if<VertexRow>(&row.form())) {
        double best = -INFINITY;
        for (const auto& p : v->vertices) {
            best = std::max(best, dot(p, f));
        }
        return best;
    }
    return interval_upper(std::get<IntervalRow>(row.form()), f);
}

double row_lower(const CredalRow& row, const Gamble& f) { return -row_upper(row, -f); }

VertexRow row_vertices(const CredalRow& row, const Config& cfg) {
    if (const auto* v = std::get_if<VertexRow>(&row.form())) {
        return *v;
    }
    return VertexRow{interval_extreme_points(std::get<IntervalRow>(row.form()), cfg)};
}

bool can_concentrate(const CredalRow& row, StateSet target, const Config& cfg) {
    const std::size_t n = row.size();
    if (const auto* v = std::get_if<VertexRow>(&row.form())) {
        return std::any_of(v->vertices.begin(), v->vertices.end(), [&](const Distribution& p) {
            return mass_support(p, cfg.eps_pos).subset_of(target);
        });
    }
    const auto& r = std::get<IntervalRow>(row.form());
    double outside_lower = 0.0;
    double inside_upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (target.contains(i)) {
            inside_upper += r.upper[i];
        } else {
            outside_lower += r.lower[i];
        }
    }
    return outside_lower <= cfg.eps_pos && inside_upper >= 1.0 - cfg.eps_one;
}

// ---------------------------------------------------------------------------
// Unconditional functionals

IefHandle IefHandle::precise(Distribution mass) {
    validate_mass(mass, 1e-12);
    return IefHandle(PreciseIef{std::move(mass)});
}

IefHandle IefHandle::point_mass(std::size_t n, std::size_t state) {
    Distribution m(n, 0.0);
    m.at(state) = 1.0;
    return IefHandle(PreciseIef{std::move(m)});
}

IefHandle IefHandle::vertex_set(std::vector<Distribution> vertices) {
    auto row = CredalRow::from_vertices(std::move(vertices));
    return IefHandle(VertexSetIef{std::get<VertexRow>(row.form())});
}

IefHandle IefHandle::interval_set(Distribution lower, Distribution upper) {
    auto row = CredalRow::from_interval(std::move(lower), std::move(upper));
    return IefHandle(IntervalSetIef{std::get<IntervalRow>(row.form())});
}

IefHandle IefHandle::vacuous_on(std::size_t n, StateSet on) {
    if (on.empty()) {
        throw Error(ErrorKind::InvalidArgument, "vacuous functional on an empty set");
    }
    if (!on.subset_of(StateSet::full(n))) {
        throw Error(ErrorKind::UnknownState, "vacuous support outside the state space");
    }
    return IefHandle(VacuousIef{n, on});
}

IefHandle IefHandle::mixture(std::vector<double> weights, std::vector<IefHandle> parts) {
    if (weights.size() != parts.size() || parts.empty()) {
        throw Error(ErrorKind::InvalidArgument, "mixture needs one weight per component");
    }
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "mixture weights must be nonnegative");
        }
    }
    if (std::abs(sum(weights) - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "mixture weights must sum to one");
    }
    for (const auto& p : parts) {
        check_dims(parts.front().size(), p.size());
    }
    return IefHandle(MixtureIef{std::move(weights), std::move(parts)});
}

IefHandle IefHandle::iterated_limit(std::shared_ptr<const LimitEvaluator> limit) {
    if (!limit) {
        throw Error(ErrorKind::InvalidArgument, "null limit evaluator");
    }
    return IefHandle(IteratedLimitIef{std::move(limit)});
}

std::size_t IefHandle::size() const {
    struct {
        std::size_t operator()(const PreciseIef& e) const { return e.mass.size(); }
        std::size_t operator()(const VertexSetIef& e) const { return e.set.vertices.front().size(); }
        std::size_t operator()(const IntervalSetIef& e) const { return e.set.lower.size(); }
        std::size_t operator()(const VacuousIef& e) const { return e.n; }
        std::size_t operator()(const MixtureIef& e) const { return e.parts.front().size(); }
        std::size_t operator()(const IteratedLimitIef& e) const { return e.limit->size(); }
    } visitor;
    return std::visit(visitor, form_);
}

bool IefHandle::is_explicit() const {
    if (std::holds_alternative<IteratedLimitIef>(form_)) {
        return false;
    }
    if (const auto* m = std::get_if<MixtureIef>(&form_)) {
        return std::all_of(m->parts.begin(), m->parts.end(),
                            [](const IefHandle& p) { return p.is_explicit(); });
    }
    return true;
}

double ief_upper(const IefHandle& e, const Gamble& f) {
    check_dims(e.size(), f.size());
    struct {
        const Gamble& f;
        double operator()(const PreciseIef& p) const { return dot(p.mass, f); }
        double operator()(const VertexSetIef& p) const {
            double best = -INFINITY;
            for (const auto& v : p.set.vertices) {
                best = std::max(best, dot(v, f));
            }
            return best;
        }
        double operator()(const IntervalSetIef& p) const { return interval_upper(p.set, f); }
        double operator()(const VacuousIef& p) const { return f.max_over(p.on); }
        double operator()(const MixtureIef& p) const {
            double s = 0.0;
            for (std::size_t i = 0; i < p.parts.size(); ++i) {
                s += p.weights[i] * ief_upper(p.parts[i], f);
            }
            return s;
        }
        double operator()(const IteratedLimitIef& p) const { return p.limit->upper(f); }
    } visitor{f};
    return std::visit(visitor, e.form());
}

double ief_lower(const IefHandle& e, const Gamble& f) { return -ief_upper(e, -f); }

StateSet support(const IefHandle& e, const Config& cfg) {
    StateSet s;
    for (std::size_t x = 0; x < e.size(); ++x) {
        if (cfg.positive(ief_upper(e, indicator(e.size(), StateSet::single(x))))) {
            s.insert(x);
        }
    }
    return s;
}

namespace {
void require_explicit(const IefHandle& e, const char* what) {
    if (!e.is_explicit()) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " requires an explicit functional");
    }
}
} // namespace

double ess_max(const IefHandle& e, const Gamble& f, const Config& cfg) {
    require_explicit(e, "ess_max");
    check_dims(e.size(), f.size());
    auto levels = f.vector();
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double a : levels) {
        StateSet at_least;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] >= a) {
                at_least.insert(i);
            }
        }
        if (cfg.positive(ief_lower(e, indicator(f.size(), at_least)))) {
            return a;
        }
    }
    return levels.back();
}

double m_value(const IefHandle& e, const Config& cfg) {
    require_explicit(e, "m_value");
    const std::size_t n = e.size();
    require_lattice_budget(n, cfg, "m_value");
    double best = INFINITY;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const double lo = ief_lower(e, indicator(n, StateSet(mask)));
        if (cfg.positive(lo)) {
            best = std::min(best, lo);
        }
    }
    return best;
}

} // namespace imc
