#include "imc/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace imc {

StateSet s_of(const IefHandle& e, const Ito& t, const Config& cfg) {
    const auto graph = access_graph(t, cfg);
    const auto s = closure(graph, support(e, cfg));
    if (!is_absorbing(graph, s)) {
        throw Error(ErrorKind::AbsorbingViolation, "closure of the support is not absorbing");
    }
    return s;
}

std::size_t calm_iterations(std::size_t n) { return n + 2; }

bool SettleRule::feed(double step, double scale) {
    const double noise = 1e-14 * scale;
    bool calm = step <= noise;
    if (!calm && step <= tol_ && previous_ > step) {
        const double rho = step / previous_;
        calm = step * rho / (1.0 - rho) <= tol_;
    }
    previous_ = step;
    calm_ = calm ? calm_ + 1 : 0;
    return calm_ >= needed_;
}

LimitFunctional::LimitFunctional(StateSet base, std::vector<Stage> chain, Config cfg, std::size_t phases)
    : base_(base), chain_(std::move(chain)), cfg_(cfg), phases_(phases) {
    if (phases_ == 0) {
        throw Error(ErrorKind::InvalidArgument, "limit functional needs at least one phase");
    }
    if (chain_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "limit functional needs at least one stage");
    }
    if (base_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "limit functional over an empty set");
    }
}

LimitFunctional::Stats LimitFunctional::stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
}

double LimitFunctional::upper(const Gamble& f) const {
    if (f.size() != size()) {
        throw Error(ErrorKind::DimensionMismatch, "gamble size differs from the state count");
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(f.vector()); it != cache_.end()) {
            return it->second;
        }
    }
    std::size_t iterations = 0;
    double step = 0.0;
    double value = evaluate(chain_.size() - 1, f, iterations, step);
    Gamble shifted = f;
    for (std::size_t j = 1; j < phases_; ++j) {
        shifted = apply_upper(chain_.back().op, shifted);
        std::size_t phase_iterations = 0;
        double phase_step = 0.0;
        value = std::max(value, evaluate(chain_.size() - 1, shifted, phase_iterations, phase_step));
        iterations = std::max(iterations, phase_iterations);
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(f.vector(), value);
    stats_.evaluations += 1;
    stats_.max_iterations = std::max(stats_.max_iterations, iterations);
    stats_.last_step = step;
    return value;
}

double LimitFunctional::evaluate(std::size_t level, const Gamble& g, std::size_t& iterations,
                                 double& step) const {
    const auto& stage = chain_[level];
    auto value_of = [&](const Gamble& h) {
        if (level == 0) {
            return h.max_over(base_);
        }
        std::size_t inner_iterations = 0;
        double inner_step = 0.0;
        return evaluate(level - 1, h, inner_iterations, inner_step);
    };
    Gamble current = g;
    double value = value_of(current);
    SettleRule settle(stage.tol, calm_iterations(size()));
    for (std::size_t k = 1; k <= cfg_.max_iter; ++k) {
        for (std::size_t s = 0; s < stage.steps; ++s) {
            current = apply_upper(stage.op, current);
        }
        const double next = value_of(current);
        const double scale = 1.0 + std::max(std::abs(current.max()), std::abs(current.min()));
        const double slack = stage.direction == Direction::NonIncreasing
                                 ? 1e-12 + cfg_.eps_pos * scale
                                 : 1e-12 + 10.0 * cfg_.eps_conv * scale;
        const bool wrong_way = stage.direction == Direction::NonIncreasing ? next > value + slack
                                                                           : next < value - slack;
        if (wrong_way) {
            throw Error(ErrorKind::AbsorbingViolation,
                        "limit iteration is not monotone; the base set is not absorbing");
        }
        step = std::abs(next - value);
        value = next;
        if (settle.feed(step, scale)) {
            iterations = k;
            return value;
        }
    }
    throw NonConvergentError("limit iteration did not settle within max_iter", value - step,
                             value + step, cfg_.max_iter);
}

LimitPtr least_committal_invariant(const Ito& t, StateSet absorbing, const Config& cfg) {
    if (absorbing.empty() || !absorbing.subset_of(t.space().full_set())) {
        throw Error(ErrorKind::InvalidArgument, "least committal invariant needs a non-empty subset");
    }
    if (!is_absorbing(access_graph(t, cfg), absorbing)) {
        throw Error(ErrorKind::AbsorbingViolation, "set is not absorbing");
    }
    std::vector<LimitFunctional::Stage> chain{
        {t, 1, LimitFunctional::Direction::NonIncreasing, cfg.eps_conv}};
    return std::make_shared<const LimitFunctional>(absorbing, std::move(chain), cfg);
}

bool is_extremal(const IefHandle& e, const std::vector<StateSet>& classes, const Config& cfg) {
    return std::all_of(classes.begin(), classes.end(), [&](StateSet b) {
        const double u = ief_upper(e, indicator(e.size(), b));
        return u <= cfg.eps_one || cfg.is_one(u);
    });
}

LimitPtr invariant_on_class(const Ito& t, StateSet cls, const Config& cfg) {
    const std::size_t r = find_regularity_r(t, cls, cfg);
    const auto restricted = restrict_to_class(t, cls, r, cfg).as_ito(t.space());
    std::vector<LimitFunctional::Stage> chain{
        {restricted, 1, LimitFunctional::Direction::NonIncreasing, cfg.eps_conv},
        {t, r, LimitFunctional::Direction::NonDecreasing, 10.0 * cfg.eps_conv},
    };
    // The blocked limit is only T^r-invariant; its envelope over the r phases
    // is T-invariant and coincides with it when it already is.
    return std::make_shared<const LimitFunctional>(cls, std::move(chain), cfg, r);
}

std::vector<Gamble> test_family(std::size_t n, const Config& cfg) {
    std::vector<Gamble> family;
    if (n <= cfg.max_strong_states) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            family.push_back(indicator(n, StateSet(mask)));
        }
    }
    std::mt19937_64 rng(0x5eed'1234ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 32; ++k) {
        std::vector<double> v(n);
        for (auto& x : v) {
            x = unit(rng);
        }
        family.emplace_back(std::move(v));
    }
    return family;
}

double invariance_residual(const LimitEvaluator& m, const Ito& t, const std::vector<Gamble>& family) {
    double worst = 0.0;
    for (const auto& f : family) {
        worst = std::max(worst, std::abs(m.upper(apply_upper(t, f)) - m.upper(f)));
    }
    return worst;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "0";
    case Verdict::One: return "1";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

double direct_limit_upper(const IefHandle& e0, const Ito& t, const Gamble& f, const Config& cfg) {
    Gamble g = f;
    double value = ief_upper(e0, g);
    double step = 0.0;
    SettleRule settle(cfg.eps_conv, calm_iterations(t.size()));
    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        g = apply_upper(t, g);
        const double next = ief_upper(e0, g);
        step = std::abs(next - value);
        value = next;
        if (settle.feed(step, 1.0 + std::max(std::abs(g.max()), std::abs(g.min())))) {
            return value;
        }
    }
    throw NonConvergentError("upper expectation sequence did not settle within max_iter",
                             value - step, value + step, cfg.max_iter);
}

ConvergenceReport classify_convergence(const IefHandle& e0, const Ito& t, const Config& cfg) {
    if (!e0.is_explicit()) {
        throw Error(ErrorKind::InvalidArgument, "classify_convergence needs an explicit initial functional");
    }
    const std::size_t n = t.size();
    ConvergenceReport report;
    report.s_e = s_of(e0, t, cfg);
    const auto classes = minimal_permanent_classes(t, cfg);

    // A class outside S never receives mass. A class inside S cannot tend to
    // zero, so a zero verdict is only given to classes outside S.
    struct Tracker {
        Gamble g;
        std::size_t streak = 0;
        bool done = false;
    };
    std::vector<Tracker> trackers;
    for (auto b : classes) {
        ClassVerdict v;
        v.cls = b;
        v.inside_s = b.subset_of(report.s_e);
        report.classes.push_back(v);
        trackers.push_back({indicator(n, b)});
    }
    constexpr std::size_t kStable = 3;
    report.extremal_in_window = true;
    std::size_t open = classes.size();
    std::size_t step = 0;
    while (open > 0 && step <= cfg.max_iter) {
        bool extremal_now = true;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            auto& tr = trackers[c];
            auto& v = report.classes[c];
            const double u = ief_upper(e0, tr.g);
            extremal_now = extremal_now && (u <= cfg.eps_one || cfg.is_one(u));
            if (tr.done) {
                continue;
            }
            v.last_upper = u;
            v.iterations = step;
            const bool in_band = v.inside_s ? cfg.is_one(u) : u <= cfg.eps_one;
            tr.streak = in_band ? tr.streak + 1 : 0;
            if (tr.streak == kStable) {
                v.verdict = v.inside_s ? Verdict::One : Verdict::Zero;
                tr.done = true;
                --open;
            }
        }
        report.extremal_in_window = report.extremal_in_window && extremal_now;
        report.window = step + 1;
        if (open == 0) {
            break;
        }
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (!trackers[c].done) {
                trackers[c].g = apply_upper(t, trackers[c].g);
            }
        }
        ++step;
    }

    for (const auto& v : report.classes) {
        if (v.verdict == Verdict::Indeterminate) {
            report.warnings.push_back("class verdict indeterminate after max_iter");
        }
    }
    if (!report.extremal_in_window) {
        report.warnings.push_back("initial functional is not extremal at every observed step");
    }
    const bool decided = std::none_of(report.classes.begin(), report.classes.end(), [](const ClassVerdict& v) {
        return v.verdict == Verdict::Indeterminate;
    });
    if (!decided) {
        return report;
    }
    report.limit = least_committal_invariant(t, report.s_e, cfg);
    const auto family = test_family(n, cfg);
    report.invariance_residual = invariance_residual(*report.limit, t, family);
    for (const auto& f : family) {
        report.direct_agreement =
            std::max(report.direct_agreement, std::abs(direct_limit_upper(e0, t, f, cfg) - report.limit->upper(f)));
    }
    return report;
}

std::vector<ExtremalInvariant> extremal_invariants(const Ito& t, const Config& cfg) {
    const std::size_t n = t.size();
    require_lattice_budget(n, cfg, "extremal_invariants");
    const auto graph = access_graph(t, cfg);
    const auto classes = minimal_permanent_classes(t, cfg);

    std::set<std::uint64_t> closures;
    for (std::size_t x = 0; x < n; ++x) {
        const auto cx = closure(graph, StateSet::single(x));
        std::vector<std::uint64_t> grown;
        for (auto c : closures) {
            grown.push_back(c | cx.mask());
        }
        closures.insert(grown.begin(), grown.end());
        closures.insert(cx.mask());
    }

    std::map<std::vector<std::uint64_t>, StateSet> best;
    for (auto mask : closures) {
        const StateSet s(mask);
        std::vector<std::uint64_t> key;
        for (auto b : classes) {
            if (b.subset_of(s)) {
                key.push_back(b.mask());
            }
        }
        auto it = best.find(key);
        const bool better = it == best.end() || s.count() < it->second.count() ||
                            (s.count() == it->second.count() && set_order_less(s, it->second));
        if (better) {
            best[key] = s;
        }
    }

    std::vector<ExtremalInvariant> out;
    for (const auto& [key, s] : best) {
        ExtremalInvariant inv;
        for (auto m : key) {
            inv.family.emplace_back(m);
        }
        inv.closure = s;
        inv.limit = least_committal_invariant(t, s, cfg);
        out.push_back(std::move(inv));
    }
    std::sort(out.begin(), out.end(), [](const ExtremalInvariant& a, const ExtremalInvariant& b) {
        if (a.family.size() != b.family.size()) {
            return a.family.size() < b.family.size();
        }
        return std::lexicographical_compare(a.family.begin(), a.family.end(), b.family.begin(), b.family.end(),
                                            set_order_less);
    });
    return out;
}

} // namespace imc
