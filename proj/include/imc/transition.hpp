#pragma once

#include "imc/credal.hpp"

#include <utility>

namespace imc {

/// Imprecise transition operator: one separately specified credal row per state.
class Ito {
public:
    Ito(StateSpace space, std::vector<CredalRow> rows);

    const StateSpace& space() const { return space_; }
    std::size_t size() const { return space_.size(); }
    const std::vector<CredalRow>& rows() const { return rows_; }
    const CredalRow& row(std::size_t x) const { return rows_.at(x); }

private:
    StateSpace space_;
    std::vector<CredalRow> rows_;
};

Gamble apply_upper(const Ito& t, const Gamble& f);
Gamble apply_lower(const Ito& t, const Gamble& f);
GambleInterval apply_interval(const Ito& t, const GambleInterval& g);

/// n-fold interval application starting from [f, f].
GambleInterval power_apply(const Ito& t, std::size_t n, const Gamble& f);

/// [lower, upper] expectation of f at time n for initial functional e0.
std::pair<double, double> evolve(const IefHandle& e0, const Ito& t, std::size_t n, const Gamble& f);

/// Explicit vertex form of the r-step operator.
struct MaterializedPower {
    std::size_t r = 0;
    std::vector<VertexRow> rows;

    /// The power viewed as a one-step operator on the same space.
    Ito as_ito(const StateSpace& space) const;
};

/// Throws PowerCapExceeded, VertexBudgetExceeded.
MaterializedPower materialize_power(const Ito& t, std::size_t r, const Config& cfg);

/// r-step operators that keep all mass of every state of `cls` inside `cls`.
/// Rows of states outside `cls` hold whatever certain r-step rows they have,
/// or a self loop; they never influence values on `cls`. Throws
/// EmptyRestriction, PowerCapExceeded, VertexBudgetExceeded.
MaterializedPower restrict_to_class(const Ito& t, StateSet cls, std::size_t r, const Config& cfg);

} // namespace imc
