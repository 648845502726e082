#include "imc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace imc::oracle {

namespace {

constexpr std::size_t kMaxStates = 4;

void budget(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::BudgetExceeded, "oracle budget exceeded: " + what);
    }
}

} // namespace

VertexMatrixSet VertexMatrixSet::from(const Ito& t, const Config& cfg) {
    VertexMatrixSet out;
    for (const auto& row : t.rows()) {
        out.rows.push_back(row_vertices(row, cfg).vertices);
    }
    return out;
}

namespace {

/// Drops gambles that are pointwise dominated by another one.
std::set<std::vector<double>> pareto(const std::set<std::vector<double>>& level) {
    std::set<std::vector<double>> kept;
    for (const auto& g : level) {
        bool dominated = false;
        for (const auto& h : level) {
            if (&g == &h) {
                continue;
            }
            bool below = true;
            for (std::size_t x = 0; x < g.size() && below; ++x) {
                below = g[x] <= h[x];
            }
            if (below) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            kept.insert(g);
        }
    }
    return kept;
}

} // namespace

Gamble brute_power_upper(const Ito& t, std::size_t n, const Gamble& f, const Config& cfg,
                         const BruteBudget& limits) {
    budget(t.size() <= limits.states, "more than " + std::to_string(limits.states) + " states");
    budget(n <= limits.steps, "more than " + std::to_string(limits.steps) + " steps");
    const auto set = VertexMatrixSet::from(t, cfg);
    for (const auto& r : set.rows) {
        budget(r.size() <= limits.vertices,
               "more than " + std::to_string(limits.vertices) + " vertices in a row");
    }
    const std::size_t size = t.size();

    // Every precise operator in the product set, as a full matrix.
    std::vector<std::vector<Distribution>> matrices;
    std::vector<std::size_t> pick(size, 0);
    while (true) {
        std::vector<Distribution> m;
        for (std::size_t x = 0; x < size; ++x) {
            m.push_back(set.rows[x][pick[x]]);
        }
        matrices.push_back(std::move(m));
        std::size_t x = 0;
        for (; x < size; ++x) {
            if (++pick[x] < set.rows[x].size()) {
                break;
            }
            pick[x] = 0;
        }
        if (x == size) {
            break;
        }
    }

    // t_1 ... t_n f for every selection sequence; identical gambles are merged.
    std::set<std::vector<double>> level{f.vector()};
    for (std::size_t k = 0; k < n; ++k) {
        std::set<std::vector<double>> next;
        for (const auto& g : level) {
            for (const auto& m : matrices) {
                std::vector<double> h(size, 0.0);
                for (std::size_t x = 0; x < size; ++x) {
                    for (std::size_t y = 0; y < size; ++y) {
                        h[x] += m[x][y] * g[y];
                    }
                }
                next.insert(std::move(h));
            }
        }
        level = pareto(next);
    }
    std::vector<double> best(size, -HUGE_VAL);
    for (const auto& g : level) {
        for (std::size_t x = 0; x < size; ++x) {
            best[x] = std::max(best[x], g[x]);
        }
    }
    return Gamble(std::move(best));
}

SubsetTable brute_tau(const Ito& t, std::size_t n, const Config& cfg) {
    budget(t.size() <= kMaxStates, "more than 4 states");
    const std::size_t size = t.size();
    const std::size_t subsets = std::size_t{1} << size;
    std::vector<Gamble> up;
    for (std::uint64_t b = 0; b < subsets; ++b) {
        up.push_back(brute_power_upper(t, n, indicator(size, StateSet(b)), cfg));
    }
    SubsetTable table(subsets, std::vector<bool>(subsets, false));
    for (std::uint64_t a = 0; a < subsets; ++a) {
        for (std::uint64_t b = 0; b < subsets; ++b) {
            bool all = true;
            for (auto x : StateSet(a).indices()) {
                all = all && up[b][x] >= 1.0 - cfg.eps_one;
            }
            table[a][b] = all;
        }
    }
    return table;
}

std::vector<StateSet> brute_minimal_permanent(const Ito& t, const Config& cfg) {
    const auto one = brute_tau(t, 1, cfg);
    const std::size_t subsets = one.size();
    auto multiply = [&](const SubsetTable& a, const SubsetTable& b) {
        SubsetTable c(subsets, std::vector<bool>(subsets, false));
        for (std::size_t i = 0; i < subsets; ++i) {
            for (std::size_t k = 0; k < subsets; ++k) {
                if (!a[i][k]) {
                    continue;
                }
                for (std::size_t j = 0; j < subsets; ++j) {
                    if (b[k][j]) {
                        c[i][j] = true;
                    }
                }
            }
        }
        return c;
    };
    // A cycle through B in the subset graph has length at most 2^|X|.
    std::vector<bool> self(subsets, false);
    auto power = one;
    for (std::size_t k = 1; k <= subsets; ++k) {
        for (std::size_t b = 1; b < subsets; ++b) {
            if (power[b][b]) {
                self[b] = true;
            }
        }
        power = multiply(power, one);
    }
    std::vector<StateSet> out;
    for (std::uint64_t b = 1; b < subsets; ++b) {
        if (!self[b]) {
            continue;
        }
        bool minimal = true;
        for (std::uint64_t sub = (b - 1) & b; sub != 0; sub = (sub - 1) & b) {
            if (self[sub]) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            out.emplace_back(b);
        }
    }
    std::sort(out.begin(), out.end(), set_order_less);
    return out;
}

namespace {

std::vector<std::vector<bool>> precise_reachability(const Ito& t) {
    const std::size_t n = t.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) {
        const auto mass = t.row(x).precise_mass();
        if (!mass) {
            throw Error(ErrorKind::NotPrecise, "row " + t.space().label(x) + " is not precise");
        }
        reach[x][x] = true;
        for (std::size_t y = 0; y < n; ++y) {
            if ((*mass)[y] > 1e-12) {
                reach[x][y] = true;
            }
        }
    }
    // Floyd-Warshall transitive closure
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) {
                    reach[i][j] = true;
                }
            }
        }
    }
    return reach;
}

} // namespace

std::vector<StateSet> classical_recurrent_classes(const Ito& t) {
    const auto reach = precise_reachability(t);
    const std::size_t n = t.size();
    std::vector<StateSet> out;
    for (std::size_t x = 0; x < n; ++x) {
        bool closed = true;
        StateSet cls;
        for (std::size_t y = 0; y < n; ++y) {
            if (reach[x][y] && !reach[y][x]) {
                closed = false;
            }
            if (reach[x][y] && reach[y][x]) {
                cls.insert(y);
            }
        }
        if (closed && std::find(out.begin(), out.end(), cls) == out.end()) {
            out.push_back(cls);
        }
    }
    std::sort(out.begin(), out.end(), set_order_less);
    return out;
}

StateSet classical_transient_states(const Ito& t) {
    StateSet recurrent;
    for (auto c : classical_recurrent_classes(t)) {
        recurrent = recurrent | c;
    }
    return recurrent.complement(t.size());
}

} // namespace imc::oracle
