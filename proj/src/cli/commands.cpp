#include "imc/cli/commands.hpp"

#include "imc/invariant.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

namespace imc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EmptyCredalSet:
        return kExitEmptyCredal;
    case ErrorKind::VertexBudgetExceeded:
    case ErrorKind::StateBudgetExceeded:
    case ErrorKind::PowerCapExceeded:
    case ErrorKind::RegularityCapExceeded:
    case ErrorKind::EmptyRestriction:
    case ErrorKind::BudgetExceeded:
        return kExitBudget;
    case ErrorKind::NonConvergent:
        return kExitNonConvergent;
    default:
        return kExitData;
    }
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"validate", "classify",    "permanent", "evolve",
                                                "invariant", "convergence", "report"};
    return names;
}

namespace {

bool is_budget(const Error& e) { return exit_code_for(e.kind()) == kExitBudget; }

struct Context {
    Model model;
    Config cfg;
    std::vector<std::string> warnings;
    bool capped = false;

    const StateSpace& space() const { return model.ito.space(); }
    const Ito& ito() const { return model.ito; }

    void cap(const Error& e, const std::string& block) {
        warnings.push_back(block + ": " + to_string(e.kind()) + ": " + e.what());
        capped = true;
    }
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config file: ") + e.what());
    }
}

Context load(const CommandOptions& opt) {
    Context ctx{load_model(opt.model_path), Config{}, {}, false};
    // defaults < IMC_CONFIG file < model "config" < flags
    if (opt.config_path) {
        apply_config(ctx.cfg, read_json_file(*opt.config_path));
    }
    apply_config(ctx.cfg, ctx.model.config_overrides);
    if (opt.tol) {
        ctx.cfg.eps_conv = *opt.tol;
    }
    if (opt.max_iter) {
        ctx.cfg.max_iter = *opt.max_iter;
    }
    if (opt.max_strong_states) {
        ctx.cfg.max_strong_states = *opt.max_strong_states;
    }
    ctx.cfg.validate();
    return ctx;
}

ordered_json labels(const StateSpace& space, StateSet set) { return space.labels_of(set); }

ordered_json num(double v) { return report_number(v); }

IefHandle initial_of(const Context& ctx, const CommandOptions& opt, bool required) {
    if (opt.initial) {
        return parse_initial(ctx.space(), *opt.initial);
    }
    if (ctx.model.initial) {
        return *ctx.model.initial;
    }
    if (required) {
        throw Error(ErrorKind::InvalidArgument, "no initial functional in the model and no --initial given");
    }
    return IefHandle::vacuous_on(ctx.space().size(), ctx.space().full_set());
}

/// Upper and lower values of `m` on every non-empty subset indicator.
ordered_json indicator_values(const Context& ctx, const std::function<double(const Gamble&)>& upper) {
    const std::size_t n = ctx.space().size();
    ordered_json out = ordered_json::array();
    std::vector<StateSet> sets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        sets.emplace_back(mask);
    }
    std::sort(sets.begin(), sets.end(), set_order_less);
    for (auto s : sets) {
        const auto f = indicator(n, s);
        out.push_back({{"set", labels(ctx.space(), s)}, {"upper", num(upper(f))}, {"lower", num(-upper(-f))}});
    }
    return out;
}

ordered_json classification_block(Context& ctx) {
    const auto c = classify(ctx.ito(), ctx.cfg);
    ordered_json classes = ordered_json::array();
    for (const auto& cls : c.classes) {
        classes.push_back({
            {"states", labels(ctx.space(), cls.states)},
            {"has_cycle", cls.has_cycle},
            {"period", cls.period},
            {"regular", cls.regular},
            {"regularity_witness", cls.regularity_witness ? json(*cls.regularity_witness) : json(nullptr)},
            {"maximal", cls.maximal},
            {"closure", labels(ctx.space(), cls.closure)},
        });
    }
    ordered_json edges = ordered_json::array();
    for (auto [from, to] : c.leads_to) {
        edges.push_back({from, to});
    }
    return {
        {"eps_pos", c.eps_pos},
        {"classes", classes},
        {"leads_to", edges},
        {"top_class", c.top_class ? json(*c.top_class) : json(nullptr)},
        {"regularly_absorbing", c.regularly_absorbing},
        {"absorption_witness", c.absorption_witness ? json(*c.absorption_witness) : json(nullptr)},
    };
}

ordered_json permanent_block(Context& ctx) {
    ordered_json out = ordered_json::array();
    for (auto b : minimal_permanent_classes(ctx.ito(), ctx.cfg)) {
        ordered_json r = nullptr;
        try {
            r = find_regularity_r(ctx.ito(), b, ctx.cfg);
        } catch (const Error& e) {
            if (!is_budget(e)) {
                throw;
            }
            ctx.cap(e, "permanent");
        }
        out.push_back({{"states", labels(ctx.space(), b)}, {"regularity_r", r}});
    }
    return out;
}

ordered_json convergence_block(Context& ctx, const IefHandle& e0) {
    const auto report = classify_convergence(e0, ctx.ito(), ctx.cfg);
    ordered_json classes = ordered_json::array();
    for (const auto& v : report.classes) {
        classes.push_back({
            {"states", labels(ctx.space(), v.cls)},
            {"verdict", to_string(v.verdict)},
            {"inside_s", v.inside_s},
            {"last_upper", num(v.last_upper)},
            {"iterations", v.iterations},
        });
        if (v.verdict == Verdict::Indeterminate) {
            ctx.capped = true;
        }
    }
    for (const auto& w : report.warnings) {
        ctx.warnings.push_back("convergence: " + w);
    }
    ordered_json limit = nullptr;
    if (report.limit) {
        const auto& m = *report.limit;
        limit = {
            {"base", labels(ctx.space(), m.base())},
            {"invariance_residual", num(report.invariance_residual)},
            {"direct_agreement", num(report.direct_agreement)},
            {"certificate", "agreement on test family"},
            {"values", indicator_values(ctx, [&](const Gamble& f) { return m.upper(f); })},
        };
    }
    return {
        {"s_e", labels(ctx.space(), report.s_e)},
        {"extremal_in_window", report.extremal_in_window},
        {"window", report.window},
        {"classes", classes},
        {"limit", limit},
    };
}

ordered_json invariants_block(Context& ctx) {
    ordered_json out = ordered_json::array();
    const auto family = test_family(ctx.space().size(), ctx.cfg);
    for (const auto& inv : extremal_invariants(ctx.ito(), ctx.cfg)) {
        ordered_json fam = ordered_json::array();
        for (auto b : inv.family) {
            fam.push_back(labels(ctx.space(), b));
        }
        const auto& m = *inv.limit;
        out.push_back({
            {"family", fam},
            {"closure", labels(ctx.space(), inv.closure)},
            {"invariance_residual", num(invariance_residual(m, ctx.ito(), family))},
            {"certificate", "agreement on test family"},
            {"values", indicator_values(ctx, [&](const Gamble& f) { return m.upper(f); })},
        });
    }
    return out;
}

ordered_json header(const std::string& command, const Context& ctx) {
    return {{"command", command}, {"config", config_to_json(ctx.cfg)}};
}

void finish(ordered_json& doc, const Context& ctx) {
    doc["warnings"] = ctx.warnings;
}

/// Runs a block and records budget errors as warnings instead of failing.
template <class F>
void guarded(ordered_json& doc, const char* key, Context& ctx, F&& block) {
    try {
        doc[key] = block();
    } catch (const Error& e) {
        if (!is_budget(e)) {
            throw;
        }
        ctx.cap(e, key);
        doc[key] = nullptr;
    }
}

ordered_json dispatch(const std::string& name, const CommandOptions& opt, Context& ctx) {
    if (name == "validate") {
        return model_to_json(ctx.model);
    }
    ordered_json doc = header(name, ctx);
    if (name == "classify") {
        doc["classification"] = classification_block(ctx);
    } else if (name == "permanent") {
        doc["minimal_permanent_classes"] = permanent_block(ctx);
    } else if (name == "evolve") {
        if (!opt.gamble) {
            throw Error(ErrorKind::InvalidArgument, "evolve needs --gamble");
        }
        const auto e0 = initial_of(ctx, opt, true);
        const auto f = parse_gamble(ctx.space(), *opt.gamble);
        const std::size_t steps = opt.steps.value_or(1);
        ordered_json trajectory = ordered_json::array();
        for (std::size_t n = 0; n <= steps; ++n) {
            const auto [lo, hi] = evolve(e0, ctx.ito(), n, f);
            trajectory.push_back({{"n", n}, {"lower", num(lo)}, {"upper", num(hi)}});
        }
        doc["gamble"] = f.vector();
        doc["steps"] = steps;
        doc["lower"] = trajectory.back()["lower"];
        doc["upper"] = trajectory.back()["upper"];
        doc["trajectory"] = trajectory;
    } else if (name == "invariant") {
        doc["extremal_invariants"] = invariants_block(ctx);
    } else if (name == "convergence") {
        doc["convergence"] = convergence_block(ctx, initial_of(ctx, opt, false));
    } else if (name == "report") {
        doc["classification"] = classification_block(ctx);
        guarded(doc, "minimal_permanent_classes", ctx, [&] { return permanent_block(ctx); });
        const auto e0 = initial_of(ctx, opt, false);
        guarded(doc, "convergence", ctx, [&] { return convergence_block(ctx, e0); });
        guarded(doc, "extremal_invariants", ctx, [&] { return invariants_block(ctx); });
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
    }
    finish(doc, ctx);
    return doc;
}

} // namespace

CommandResult run_command(const std::string& name, const CommandOptions& options) {
    CommandResult result;
    if (std::find(command_names().begin(), command_names().end(), name) == command_names().end()) {
        result.exit_code = kExitUsage;
        result.error = "unknown command '" + name + "'";
        return result;
    }
    try {
        Context ctx = load(options);
        const auto doc = dispatch(name, options, ctx);
        result.output = doc.dump(2) + "\n";
        result.exit_code = ctx.capped ? kExitBudget : kExitOk;
        for (const auto& w : ctx.warnings) {
            result.error += "warning: " + w + "\n";
        }
    } catch (const NonConvergentError& e) {
        result.exit_code = kExitNonConvergent;
        result.error = std::string("error: NonConvergent: ") + e.what() + " (last values in [" +
                       std::to_string(e.low()) + ", " + std::to_string(e.high()) + "] after " +
                       std::to_string(e.iterations()) + " iterations)";
    } catch (const Error& e) {
        result.exit_code = exit_code_for(e.kind());
        result.error = std::string("error: ") + to_string(e.kind()) + ": " + e.what();
    }
    return result;
}

} // namespace imc::cli
