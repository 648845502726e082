#pragma once

// Brute-force reference implementations. Exponential in everything and
// gated by hard budgets; used by the test suites only.

#include "imc/transition.hpp"

namespace imc::oracle {

/// Per-state vertex lists; the admissible precise operators are all row
/// combinations.
struct VertexMatrixSet {
    std::vector<std::vector<Distribution>> rows;

    static VertexMatrixSet from(const Ito& t, const Config& cfg);
    std::size_t size() const { return rows.size(); }
};

/// Size limits for brute_power_upper. The defaults are the standard budget.
struct BruteBudget {
    std::size_t states = 4;
    std::size_t vertices = 3; ///< per row
    std::size_t steps = 4;
};

/// Maximum of (t_1 ... t_n f)(x) over every sequence of vertex matrices.
/// Gambles dominated by another candidate are dropped between steps, which
/// is exact because stochastic matrices are monotone. Throws BudgetExceeded.
Gamble brute_power_upper(const Ito& t, std::size_t n, const Gamble& f, const Config& cfg,
                         const BruteBudget& budget = {});

/// Full table over subset pairs, indexed [A mask][B mask], of n-step strong
/// accessibility, from brute_power_upper on indicators.
using SubsetTable = std::vector<std::vector<bool>>;
SubsetTable brute_tau(const Ito& t, std::size_t n, const Config& cfg);

/// Ground-truth minimal permanent classes by exhaustive chains of the
/// one-step table, up to 2^|X| steps.
std::vector<StateSet> brute_minimal_permanent(const Ito& t, const Config& cfg);

/// Closed classes of the positive-entry graph of a precise chain. Throws NotPrecise.
std::vector<StateSet> classical_recurrent_classes(const Ito& t);

/// Transient states of a precise chain (not in any closed class).
StateSet classical_transient_states(const Ito& t);

} // namespace imc::oracle
