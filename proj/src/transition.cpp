#include "imc/transition.hpp"

#include <algorithm>
#include <cmath>

namespace imc {

Ito::Ito(StateSpace space, std::vector<CredalRow> rows) : space_(std::move(space)), rows_(std::move(rows)) {
    if (rows_.size() != space_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "operator needs one row per state");
    }
    for (const auto& r : rows_) {
        if (r.size() != space_.size()) {
            throw Error(ErrorKind::DimensionMismatch, "row length differs from the state count");
        }
    }
}

namespace {
void check_size(const Ito& t, const Gamble& f) {
    if (f.size() != t.size()) {
        throw Error(ErrorKind::DimensionMismatch, "gamble size differs from the state count");
    }
}
} // namespace

Gamble apply_upper(const Ito& t, const Gamble& f) {
    check_size(t, f);
    std::vector<double> out(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        out[x] = row_upper(t.row(x), f);
    }
    return Gamble(std::move(out));
}

Gamble apply_lower(const Ito& t, const Gamble& f) {
    check_size(t, f);
    std::vector<double> out(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        out[x] = row_lower(t.row(x), f);
    }
    return Gamble(std::move(out));
}

GambleInterval apply_interval(const Ito& t, const GambleInterval& g) {
    return GambleInterval(apply_lower(t, g.lower), apply_upper(t, g.upper));
}

GambleInterval power_apply(const Ito& t, std::size_t n, const Gamble& f) {
    check_size(t, f);
    auto g = GambleInterval::degenerate(f);
    for (std::size_t k = 0; k < n; ++k) {
        g = apply_interval(t, g);
    }
    return g;
}

std::pair<double, double> evolve(const IefHandle& e0, const Ito& t, std::size_t n, const Gamble& f) {
    if (!e0.is_explicit()) {
        throw Error(ErrorKind::InvalidArgument, "evolve requires an explicit initial functional");
    }
    const auto g = power_apply(t, n, f);
    return {ief_lower(e0, g.lower), ief_upper(e0, g.upper)};
}

Ito MaterializedPower::as_ito(const StateSpace& space) const {
    std::vector<CredalRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(CredalRow::from_vertices(r.vertices, 1e-10));
    }
    return Ito(space, std::move(out));
}

namespace {

constexpr double kDedupeTol = 1e-12;

// All points sum_y p(y) * q_y with q_y ranging over prev[y], for y in supp(p).
void expand_vertex(const Distribution& p, const std::vector<VertexRow>& prev, std::size_t cap,
                   std::vector<Distribution>& out) {
    const std::size_t n = p.size();
    std::vector<std::size_t> active;
    for (std::size_t y = 0; y < n; ++y) {
        if (p[y] > 0.0) {
            active.push_back(y);
        }
    }
    std::vector<std::size_t> choice(active.size(), 0);
    while (true) {
        Distribution q(n, 0.0);
        for (std::size_t k = 0; k < active.size(); ++k) {
            const auto y = active[k];
            const auto& v = prev[y].vertices[choice[k]];
            for (std::size_t z = 0; z < n; ++z) {
                q[z] += p[y] * v[z];
            }
        }
        out.push_back(std::move(q));
        if (out.size() > cap) {
            throw Error(ErrorKind::VertexBudgetExceeded,
                        "materialized power exceeds the vertex cap of " + std::to_string(cap));
        }
        std::size_t k = 0;
        for (; k < active.size(); ++k) {
            if (++choice[k] < prev[active[k]].vertices.size()) {
                break;
            }
            choice[k] = 0;
        }
        if (k == active.size()) {
            break;
        }
    }
}

} // namespace

MaterializedPower materialize_power(const Ito& t, std::size_t r, const Config& cfg) {
    if (r == 0) {
        throw Error(ErrorKind::InvalidArgument, "materialized power needs r >= 1");
    }
    if (r > cfg.max_power_r) {
        throw Error(ErrorKind::PowerCapExceeded, "power " + std::to_string(r) +
                                                     " exceeds max_power_r = " +
                                                     std::to_string(cfg.max_power_r));
    }
    std::vector<VertexRow> base;
    base.reserve(t.size());
    for (const auto& row : t.rows()) {
        base.push_back(row_vertices(row, cfg));
    }
    MaterializedPower out{1, base};
    // Raw candidates may exceed the vertex cap before deduplication.
    const std::size_t raw_cap = cfg.max_vertices * 64;
    for (std::size_t step = 2; step <= r; ++step) {
        std::vector<VertexRow> next(t.size());
        for (std::size_t x = 0; x < t.size(); ++x) {
            std::vector<Distribution> candidates;
            for (const auto& p : base[x].vertices) {
                expand_vertex(p, out.rows, raw_cap, candidates);
            }
            auto unique = dedupe_points(std::move(candidates), kDedupeTol);
            if (unique.size() > cfg.max_vertices) {
                throw Error(ErrorKind::VertexBudgetExceeded,
                            "row " + t.space().label(x) + " of power " + std::to_string(step) +
                                " has " + std::to_string(unique.size()) + " vertices");
            }
            next[x].vertices = std::move(unique);
        }
        out.rows = std::move(next);
        out.r = step;
    }
    return out;
}

MaterializedPower restrict_to_class(const Ito& t, StateSet cls, std::size_t r, const Config& cfg) {
    if (cls.empty() || !cls.subset_of(t.space().full_set())) {
        throw Error(ErrorKind::InvalidArgument, "restriction class must be a non-empty subset");
    }
    if (r == 0) {
        throw Error(ErrorKind::InvalidArgument, "restriction needs r >= 1");
    }
    if (r > cfg.max_power_r) {
        throw Error(ErrorKind::PowerCapExceeded,
                    "power " + std::to_string(r) + " exceeds max_power_r = " + std::to_string(cfg.max_power_r));
    }
    const std::size_t n = t.size();
    std::vector<VertexRow> base;
    for (const auto& row : t.rows()) {
        base.push_back(row_vertices(row, cfg));
    }
    // certain[y]: k-step rows of y that put all mass in cls. Requiring no
    // mass outside cls selects a face of the k-step credal set, so its
    // extreme points come from extreme points of the factors that are
    // themselves certain. Masses at most eps_pos may leak, as in can_concentrate.
    std::vector<VertexRow> certain(n);
    for (auto y : cls.indices()) {
        Distribution d(n, 0.0);
        d[y] = 1.0;
        certain[y].vertices.push_back(std::move(d));
    }
    const std::size_t raw_cap = cfg.max_vertices * 64;
    for (std::size_t step = 1; step <= r; ++step) {
        std::vector<VertexRow> next(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<Distribution> candidates;
            for (const auto& p : base[x].vertices) {
                std::vector<VertexRow> pieces(n);
                bool feasible = true;
                for (std::size_t y = 0; y < n && feasible; ++y) {
                    if (p[y] <= 0.0) {
                        continue;
                    }
                    if (!certain[y].vertices.empty()) {
                        pieces[y] = certain[y];
                    } else if (p[y] <= cfg.eps_pos) {
                        Distribution d(n, 0.0);
                        d[y] = 1.0;
                        pieces[y].vertices.push_back(std::move(d));
                    } else {
                        feasible = false;
                    }
                }
                if (feasible) {
                    expand_vertex(p, pieces, raw_cap, candidates);
                }
            }
            auto unique = dedupe_points(std::move(candidates), kDedupeTol);
            if (unique.size() > cfg.max_vertices) {
                throw Error(ErrorKind::VertexBudgetExceeded,
                            "restricted row " + t.space().label(x) + " of power " + std::to_string(step) +
                                " has " + std::to_string(unique.size()) + " vertices");
            }
            next[x].vertices = std::move(unique);
        }
        certain = std::move(next);
    }
    MaterializedPower out{r, std::move(certain)};
    for (std::size_t x = 0; x < n; ++x) {
        if (out.rows[x].vertices.empty()) {
            if (cls.contains(x)) {
                throw Error(ErrorKind::EmptyRestriction,
                            "state " + t.space().label(x) + " cannot keep its mass inside the class");
            }
            // Never reached from the class; any row will do.
            Distribution d(n, 0.0);
            d[x] = 1.0;
            out.rows[x].vertices.push_back(std::move(d));
        }
    }
    return out;
}

} // namespace imc
