#include "imc/strong_access.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace imc {

Antichain minimize(Antichain sets) {
    std::sort(sets.begin(), sets.end(), [](StateSet a, StateSet b) {
        if (a.count() != b.count()) {
            return a.count() < b.count();
        }
        return set_order_less(a, b);
    });
    Antichain kept;
    for (auto s : sets) {
        const bool dominated =
            std::any_of(kept.begin(), kept.end(), [&](StateSet k) { return k.subset_of(s); });
        if (!dominated) {
            kept.push_back(s);
        }
    }
    return kept;
}

SetFunction::SetFunction(std::size_t n, Antichain minimal) : n_(n), minimal_(minimize(std::move(minimal))) {}

bool SetFunction::operator()(StateSet a) const {
    return std::any_of(minimal_.begin(), minimal_.end(), [&](StateSet m) { return m.subset_of(a); });
}

SetRelation::SetRelation(std::size_t n, std::vector<Antichain> by_source) : n_(n), by_source_(std::move(by_source)) {
    if (by_source_.size() != (std::size_t{1} << n_)) {
        throw Error(ErrorKind::DimensionMismatch, "set relation needs one entry per subset");
    }
    for (auto& a : by_source_) {
        a = minimize(std::move(a));
    }
}

bool SetRelation::operator()(StateSet a, StateSet b) const {
    const auto& t = targets(a);
    return std::any_of(t.begin(), t.end(), [&](StateSet m) { return m.subset_of(b); });
}

Antichain min_certain_supports(const Ito& t, std::size_t x, const Config& cfg) {
    require_lattice_budget(t.size(), cfg, "min_certain_supports");
    const auto& row = t.row(x);
    const std::size_t n = t.size();
    Antichain found;
    if (const auto* v = std::get_if<VertexRow>(&row.form())) {
        for (const auto& p : v->vertices) {
            StateSet s;
            for (std::size_t y = 0; y < n; ++y) {
                if (p[y] > cfg.eps_pos) {
                    s.insert(y);
                }
            }
            found.push_back(s);
        }
        return minimize(std::move(found));
    }
    const auto& r = std::get<IntervalRow>(row.form());
    StateSet forced;
    for (std::size_t y = 0; y < n; ++y) {
        if (r.lower[y] > cfg.eps_pos) {
            forced.insert(y);
        }
    }
    // every certain support contains the forced states; try all extensions
    const auto optional = forced.complement(n).indices();
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << optional.size()); ++pick) {
        StateSet s = forced;
        for (std::size_t k = 0; k < optional.size(); ++k) {
            if ((pick >> k) & 1U) {
                s.insert(optional[k]);
            }
        }
        if (can_concentrate(row, s, cfg)) {
            found.push_back(s);
        }
    }
    return minimize(std::move(found));
}

bool tau(const Ito& t, StateSet a, StateSet b, const Config& cfg) {
    require_lattice_budget(t.size(), cfg, "tau");
    for (auto x : a.indices()) {
        if (!can_concentrate(t.row(x), b, cfg)) {
            return false;
        }
    }
    return true;
}

namespace {

Antichain join(const Antichain& left, const Antichain& right) {
    Antichain out;
    out.reserve(left.size() * right.size());
    for (auto l : left) {
        for (auto r : right) {
            out.push_back(l | r);
        }
    }
    return minimize(std::move(out));
}

} // namespace

SetRelation tau_relation(const Ito& t, const Config& cfg) {
    const std::size_t n = t.size();
    require_lattice_budget(n, cfg, "tau_relation");
    std::vector<Antichain> per_state;
    for (std::size_t x = 0; x < n; ++x) {
        per_state.push_back(min_certain_supports(t, x, cfg));
    }
    // τ(A, ·) is the join of the per-state families over x in A.
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<Antichain> by_source(subsets);
    by_source[0] = {StateSet{}};
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        const auto lowest = static_cast<std::size_t>(std::countr_zero(mask));
        by_source[mask] = join(by_source[mask & (mask - 1)], per_state[lowest]);
    }
    return SetRelation(n, std::move(by_source));
}

bool psi(const IefHandle& e, StateSet a, const Config& cfg) {
    return cfg.is_one(ief_upper(e, indicator(e.size(), a)));
}

SetFunction psi_function(const IefHandle& e, const Config& cfg) {
    const std::size_t n = e.size();
    require_lattice_budget(n, cfg, "psi_function");
    Antichain found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (psi(e, StateSet(mask), cfg)) {
            found.push_back(StateSet(mask));
        }
    }
    return SetFunction(n, std::move(found));
}

SetFunction star(const SetFunction& psi_fn, const SetRelation& tau_rel) {
    if (psi_fn.size() != tau_rel.size()) {
        throw Error(ErrorKind::DimensionMismatch, "star product over different spaces");
    }
    // τ is antitone in its source, so minimal sources suffice.
    Antichain out;
    for (auto a : psi_fn.minimal()) {
        const auto& t = tau_rel.targets(a);
        out.insert(out.end(), t.begin(), t.end());
    }
    return SetFunction(psi_fn.size(), std::move(out));
}

SetRelation star(const SetRelation& first, const SetRelation& second) {
    if (first.size() != second.size()) {
        throw Error(ErrorKind::DimensionMismatch, "star product over different spaces");
    }
    const std::size_t subsets = std::size_t{1} << first.size();
    std::vector<Antichain> by_source(subsets);
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        Antichain out;
        for (auto c : first.targets(StateSet(mask))) {
            const auto& t = second.targets(c);
            out.insert(out.end(), t.begin(), t.end());
        }
        by_source[mask] = std::move(out);
    }
    return SetRelation(first.size(), std::move(by_source));
}

SetRelation star_power(const SetRelation& tau_rel, std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "star power needs n >= 1");
    }
    auto out = tau_rel;
    for (std::size_t k = 1; k < n; ++k) {
        out = star(out, tau_rel);
    }
    return out;
}

StrongAccess::StrongAccess(const Ito& t, const Config& cfg) : n_(t.size()), tau_(tau_relation(t, cfg)) {}

bool StrongAccess::leads(StateSet a, StateSet b, std::optional<std::size_t> steps) const {
    if (!steps) {
        const auto reached = reachable(a);
        return std::any_of(reached.begin(), reached.end(), [&](StateSet r) { return r.subset_of(b); });
    }
    if (*steps == 0) {
        throw Error(ErrorKind::InvalidArgument, "strong accessibility needs n >= 1");
    }
    // Antichain frontier; the sequence is eventually periodic.
    auto advance = [&](const Antichain& front) {
        Antichain next;
        for (auto c : front) {
            const auto& t = tau_.targets(c);
            next.insert(next.end(), t.begin(), t.end());
        }
        return minimize(std::move(next));
    };
    auto key = [](const Antichain& f) {
        std::vector<std::uint64_t> k;
        for (auto s : f) {
            k.push_back(s.mask());
        }
        return k;
    };
    Antichain front = tau_.targets(a);
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::size_t k = 1;
    while (k < *steps) {
        auto [it, fresh] = seen.emplace(key(front), k);
        if (!fresh) {
            const std::size_t period = k - it->second;
            for (std::size_t i = 0; i < (*steps - k) % period; ++i) {
                front = advance(front);
            }
            k = *steps;
            break;
        }
        front = advance(front);
        ++k;
    }
    return std::any_of(front.begin(), front.end(), [&](StateSet r) { return r.subset_of(b); });
}

std::vector<StateSet> StrongAccess::reachable(StateSet a) const {
    std::unordered_set<std::uint64_t> seen;
    std::vector<StateSet> order;
    std::vector<StateSet> queue(tau_.targets(a).begin(), tau_.targets(a).end());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto c = queue[head];
        if (!seen.insert(c.mask()).second) {
            continue;
        }
        order.push_back(c);
        for (auto d : tau_.targets(c)) {
            if (!seen.count(d.mask())) {
                queue.push_back(d);
            }
        }
    }
    return order;
}

std::vector<StateSet> StrongAccess::minimal_permanent_classes() const {
    std::vector<StateSet> candidates;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n_); ++mask) {
        candidates.emplace_back(mask);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](StateSet a, StateSet b) { return a.count() < b.count(); });
    std::vector<StateSet> found;
    for (auto b : candidates) {
        const bool has_smaller =
            std::any_of(found.begin(), found.end(), [&](StateSet f) { return f.subset_of(b); });
        if (!has_smaller && leads(b, b)) {
            found.push_back(b);
        }
    }
    std::sort(found.begin(), found.end(), set_order_less);
    return found;
}

bool StrongAccess::is_permanent(StateSet a) const {
    if (a.empty()) {
        return false;
    }
    const auto classes = minimal_permanent_classes();
    return std::any_of(classes.begin(), classes.end(), [&](StateSet b) { return leads(b, a); });
}

bool strongly_leads(const Ito& t, StateSet a, StateSet b, std::optional<std::size_t> steps,
                    const Config& cfg) {
    return StrongAccess(t, cfg).leads(a, b, steps);
}

bool is_permanent(const Ito& t, StateSet a, const Config& cfg) {
    return StrongAccess(t, cfg).is_permanent(a);
}

std::vector<StateSet> minimal_permanent_classes(const Ito& t, const Config& cfg) {
    auto classes = StrongAccess(t, cfg).minimal_permanent_classes();
    const auto comps = strongly_connected_components(access_graph(t, cfg));
    for (auto b : classes) {
        const bool inside = std::any_of(comps.begin(), comps.end(), [&](StateSet c) { return b.subset_of(c); });
        if (!inside) {
            throw Error(ErrorKind::InvalidArgument,
                        "minimal permanent class spans several communication classes; "
                        "eps_pos and eps_one are inconsistent for this model");
        }
    }
    return classes;
}

std::size_t find_regularity_r(const Ito& t, StateSet cls, const Config& cfg) {
    const std::size_t n = t.size();
    const auto members = cls.indices();
    std::vector<Gamble> singles;
    for (auto y : members) {
        singles.push_back(indicator(n, StateSet::single(y)));
    }
    auto whole = indicator(n, cls);
    for (std::size_t r = 1; r <= cfg.max_power_r; ++r) {
        for (auto& g : singles) {
            g = apply_upper(t, g);
        }
        whole = apply_upper(t, whole);
        bool ok = true;
        for (auto x : members) {
            ok = ok && cfg.is_one(whole[x]);
            for (const auto& g : singles) {
                ok = ok && cfg.positive(g[x]);
            }
        }
        if (ok) {
            return r;
        }
    }
    throw Error(ErrorKind::RegularityCapExceeded,
                "no r <= max_power_r makes the class regular under the r-step operator");
}

} // namespace imc
