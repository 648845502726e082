#include "imc/weak_access.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace imc {

bool AccessGraph::has_edge(std::size_t x, std::size_t y) const {
    const auto& s = successors.at(x);
    return std::binary_search(s.begin(), s.end(), y);
}

StateSet AccessGraph::step(StateSet from) const {
    StateSet out;
    for (auto x : from.indices()) {
        for (auto y : successors.at(x)) {
            out.insert(y);
        }
    }
    return out;
}

AccessGraph access_graph(const Ito& t, const Config& cfg) {
    const std::size_t n = t.size();
    AccessGraph g;
    g.successors.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (cfg.positive(row_upper(t.row(x), indicator(n, StateSet::single(y))))) {
                g.successors[x].push_back(y);
            }
        }
    }
    return g;
}

bool accessible(const AccessGraph& g, std::size_t x, std::size_t y, std::optional<std::size_t> steps) {
    if (x >= g.size() || y >= g.size()) {
        throw Error(ErrorKind::UnknownState, "state index outside the access graph");
    }
    if (!steps) {
        return closure(g, StateSet::single(x)).contains(y);
    }
    // The frontier sequence is eventually periodic; skip ahead once a repeat shows up.
    std::map<std::uint64_t, std::size_t> seen;
    StateSet frontier = StateSet::single(x);
    std::size_t k = 0;
    const std::size_t target = *steps;
    while (k < target) {
        auto [it, fresh] = seen.emplace(frontier.mask(), k);
        if (!fresh) {
            const std::size_t period = k - it->second;
            const std::size_t remaining = (target - k) % period;
            for (std::size_t i = 0; i < remaining; ++i) {
                frontier = g.step(frontier);
            }
            return frontier.contains(y);
        }
        frontier = g.step(frontier);
        ++k;
    }
    return frontier.contains(y);
}

StateSet closure(const AccessGraph& g, StateSet from) {
    StateSet reached = from;
    StateSet frontier = from;
    while (!frontier.empty()) {
        frontier = g.step(frontier).minus(reached);
        reached = reached | frontier;
    }
    return reached;
}

bool is_absorbing(const AccessGraph& g, StateSet set) { return g.step(set).subset_of(set); }

std::vector<StateSet> strongly_connected_components(const AccessGraph& g) {
    // Tarjan's algorithm, iterative.
    const std::size_t n = g.size();
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<StateSet> comps;
    std::size_t counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) {
            continue;
        }
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge < g.successors[v].size()) {
                const auto w = g.successors[v][edge++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                StateSet comp;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.insert(w);
                } while (w != v);
                comps.push_back(comp);
            }
            const auto finished = v;
            call.pop_back();
            if (!call.empty()) {
                auto parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](StateSet a, StateSet b) { return a.indices().front() < b.indices().front(); });
    return comps;
}

namespace {

// gcd of cycle lengths inside a strongly connected class, via BFS levels.
std::size_t class_period(const AccessGraph& g, StateSet cls) {
    const auto members = cls.indices();
    std::map<std::size_t, long> level;
    std::vector<std::size_t> queue{members.front()};
    level[members.front()] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto u = queue[head];
        for (auto v : g.successors[u]) {
            if (cls.contains(v) && !level.count(v)) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    long period = 0;
    for (auto u : members) {
        for (auto v : g.successors[u]) {
            if (cls.contains(v)) {
                period = std::gcd(period, std::abs(level[u] + 1 - level[v]));
            }
        }
    }
    return static_cast<std::size_t>(period);
}

std::optional<std::size_t> primitive_exponent(const AccessGraph& g, StateSet cls) {
    const auto members = cls.indices();
    const std::size_t m = members.size();
    const std::size_t cap = (m - 1) * (m - 1) + 1; // Wielandt bound
    std::vector<StateSet> reach;
    for (auto x : members) {
        reach.push_back(g.step(StateSet::single(x)) & cls);
    }
    for (std::size_t k = 1; k <= cap; ++k) {
        if (std::all_of(reach.begin(), reach.end(), [&](StateSet s) { return s == cls; })) {
            return k;
        }
        for (auto& s : reach) {
            s = g.step(s) & cls;
        }
    }
    return std::nullopt;
}

} // namespace

Classification classify(const Ito& t, const Config& cfg) {
    const auto g = access_graph(t, cfg);
    const std::size_t n = t.size();
    Classification out;
    out.eps_pos = cfg.eps_pos;

    const auto comps = strongly_connected_components(g);
    std::vector<std::size_t> class_of(n);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (auto x : comps[c].indices()) {
            class_of[x] = c;
        }
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        CommunicationClass cc;
        cc.states = comps[c];
        const auto members = comps[c].indices();
        cc.has_cycle = members.size() > 1 || g.has_edge(members.front(), members.front());
        if (cc.has_cycle) {
            cc.period = class_period(g, comps[c]);
            cc.regular = cc.period == 1;
            if (cc.regular) {
                cc.regularity_witness = primitive_exponent(g, comps[c]);
            }
        }
        cc.closure = closure(g, comps[c]);
        cc.maximal = cc.closure == comps[c];
        out.classes.push_back(cc);

        std::vector<std::size_t> targets;
        for (auto x : members) {
            for (auto y : g.successors[x]) {
                if (class_of[y] != c) {
                    targets.push_back(class_of[y]);
                }
            }
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (auto d : targets) {
            out.leads_to.emplace_back(c, d);
        }
    }

    std::vector<std::size_t> maximal;
    for (std::size_t c = 0; c < out.classes.size(); ++c) {
        if (out.classes[c].maximal) {
            maximal.push_back(c);
        }
    }
    if (maximal.size() == 1) {
        out.top_class = maximal.front();
    }
    if (out.top_class && out.classes[*out.top_class].regular) {
        // T̲^k 1_R is non-decreasing in k, so its positive set stabilizes within n steps.
        const StateSet top = out.classes[*out.top_class].states;
        const StateSet outside = top.complement(n);
        auto g_k = indicator(n, top);
        for (std::size_t k = 1; k <= n; ++k) {
            g_k = apply_lower(t, g_k);
            bool all_positive = true;
            for (auto y : outside.indices()) {
                all_positive = all_positive && cfg.positive(g_k[y]);
            }
            if (all_positive) {
                out.regularly_absorbing = true;
                out.absorption_witness = k;
                break;
            }
        }
    }
    return out;
}

} // namespace imc
