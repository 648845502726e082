#pragma once

// Fixtures and random instance generators shared by the unit tests and the
// acceptance suite.

#include "imc/invariant.hpp"

#include <random>
#include <string>

namespace imc::testing {

inline StateSpace letters(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    return StateSpace(labels);
}

/// a stays at a; b moves to a or b with probability one half each.
inline Ito two_state() {
    return Ito(letters(2), {CredalRow::precise({1, 0}), CredalRow::precise({0.5, 0.5})});
}

/// Deterministic swap between a and b.
inline Ito swap_chain() {
    return Ito(letters(2), {CredalRow::precise({0, 1}), CredalRow::precise({1, 0})});
}

/// Precise averaging on {a, b}; c and d keep 0.3 to 0.7 on each of c, d and
/// may leak up to 0.2 to each of a, b.
inline Ito example1() {
    const Distribution lo{0, 0, 0.3, 0.3};
    const Distribution hi{0.2, 0.2, 0.7, 0.7};
    return Ito(letters(4), {CredalRow::precise({0.5, 0.5, 0, 0}), CredalRow::precise({0.5, 0.5, 0, 0}),
                            CredalRow::from_interval(lo, hi), CredalRow::from_interval(lo, hi)});
}

/// Three isolated precise blocks {a,b}, {c,d}, {e,f}, each averaging.
inline Ito three_blocks() {
    std::vector<CredalRow> rows;
    for (std::size_t block = 0; block < 3; ++block) {
        for (int k = 0; k < 2; ++k) {
            Distribution p(6, 0.0);
            p[2 * block] = 0.5;
            p[2 * block + 1] = 0.5;
            rows.push_back(CredalRow::precise(p));
        }
    }
    return Ito(letters(6), std::move(rows));
}

/// Transient states a, b leak with lower probability at least 0.1 per step
/// into the regular block {c, d}; a and b are imprecise among themselves.
inline Ito block_triangular() {
    return Ito(letters(4), {
        CredalRow::from_interval({0.2, 0.2, 0.1, 0.0}, {0.6, 0.7, 0.4, 0.3}),
        CredalRow::from_interval({0.1, 0.3, 0.0, 0.1}, {0.5, 0.8, 0.3, 0.4}),
        CredalRow::from_interval({0, 0, 0.2, 0.3}, {0, 0, 0.7, 0.8}),
        CredalRow::from_interval({0, 0, 0.4, 0.1}, {0, 0, 0.9, 0.6}),
    });
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p) { return uniform() < p; }

    /// Random mass function; each entry is zeroed with probability `sparsity`.
    Distribution mass(std::size_t n, double sparsity = 0.4) {
        Distribution p(n, 0.0);
        double total = 0.0;
        for (auto& x : p) {
            x = coin(sparsity) ? 0.0 : uniform(0.05, 1.0);
            total += x;
        }
        if (total == 0.0) {
            p[index(n)] = 1.0;
            return p;
        }
        for (auto& x : p) {
            x /= total;
        }
        return p;
    }

    CredalRow vertex_row(std::size_t n, std::size_t max_vertices) {
        std::vector<Distribution> vs;
        const std::size_t k = 1 + index(max_vertices);
        for (std::size_t i = 0; i < k; ++i) {
            vs.push_back(mass(n));
        }
        return CredalRow::from_vertices(dedupe_points(std::move(vs), 1e-9));
    }

    /// Interval row around a random mass function; some entries pinned at zero.
    CredalRow interval_row(std::size_t n) {
        const auto centre = mass(n);
        Distribution lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (centre[i] == 0.0) {
                lo[i] = 0.0;
                hi[i] = coin(0.5) ? 0.0 : uniform(0.0, 0.3);
            } else {
                lo[i] = centre[i] * uniform(0.3, 1.0);
                hi[i] = std::min(1.0, centre[i] + uniform(0.0, 0.4));
            }
        }
        return CredalRow::from_interval(lo, hi);
    }

    /// Random operator; interval rows are redrawn until their vertex count
    /// fits `max_vertices`.
    Ito ito(std::size_t n, std::size_t max_vertices = 3, double interval_share = 0.4) {
        const Config cfg;
        std::vector<CredalRow> rows;
        for (std::size_t x = 0; x < n; ++x) {
            if (coin(interval_share)) {
                while (true) {
                    auto row = interval_row(n);
                    if (row_vertices(row, cfg).vertices.size() <= max_vertices) {
                        rows.push_back(std::move(row));
                        break;
                    }
                }
            } else {
                rows.push_back(vertex_row(n, max_vertices));
            }
        }
        return Ito(letters(n), std::move(rows));
    }

    Ito precise_chain(std::size_t n, double sparsity = 0.6) {
        std::vector<CredalRow> rows;
        for (std::size_t x = 0; x < n; ++x) {
            rows.push_back(CredalRow::precise(mass(n, sparsity)));
        }
        return Ito(letters(n), std::move(rows));
    }

    Gamble gamble(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::vector<double> v(n);
        for (auto& x : v) {
            x = uniform(lo, hi);
        }
        return Gamble(std::move(v));
    }

    StateSet subset(std::size_t n) { return StateSet(index(std::size_t{1} << n)); }

    IefHandle ief(std::size_t n) {
        switch (index(3)) {
        case 0:
            return IefHandle::precise(mass(n));
        case 1:
            return IefHandle::vertex_set({mass(n), mass(n)});
        default: {
            StateSet on = subset(n);
            if (on.empty()) {
                on = StateSet::single(index(n));
            }
            return IefHandle::vacuous_on(n, on);
        }
        }
    }

private:
    std::mt19937_64 rng_;
};

} // namespace imc::testing
