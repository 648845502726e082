#pragma once

#include "imc/weak_access.hpp"

#include <optional>

namespace imc {

/// Inclusion-minimal family of subsets, sorted by (size, index order).
using Antichain = std::vector<StateSet>;

/// Keeps the inclusion-minimal members of `sets`.
Antichain minimize(Antichain sets);

/// Upward-closed Boolean function on subsets, stored by its minimal true sets.
class SetFunction {
public:
    SetFunction(std::size_t n, Antichain minimal);

    std::size_t size() const { return n_; }
    const Antichain& minimal() const { return minimal_; }
    bool operator()(StateSet a) const;

    friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
    std::size_t n_;
    Antichain minimal_;
};

/// Boolean relation on subset pairs, monotone in both arguments: for each
/// source A, the minimal targets B with value one.
class SetRelation {
public:
    SetRelation(std::size_t n, std::vector<Antichain> by_source);

    std::size_t size() const { return n_; }
    const Antichain& targets(StateSet a) const { return by_source_.at(a.mask()); }
    bool operator()(StateSet a, StateSet b) const;

    friend bool operator==(const SetRelation&, const SetRelation&) = default;

private:
    std::size_t n_;
    std::vector<Antichain> by_source_;
};

/// Minimal sets on which row x can concentrate all its mass.
Antichain min_certain_supports(const Ito& t, std::size_t x, const Config& cfg);

/// One-step strong accessibility: every state of `a` can move into `b` with upper probability one.
bool tau(const Ito& t, StateSet a, StateSet b, const Config& cfg);
SetRelation tau_relation(const Ito& t, const Config& cfg);

/// Whether the upper probability of `a` under `e` equals one.
bool psi(const IefHandle& e, StateSet a, const Config& cfg);
SetFunction psi_function(const IefHandle& e, const Config& cfg);

SetFunction star(const SetFunction& psi, const SetRelation& tau);
SetRelation star(const SetRelation& first, const SetRelation& second);
SetRelation star_power(const SetRelation& tau, std::size_t n);

/// Strong accessibility over the subset lattice of one operator. The
/// one-step relation is computed once; queries run on it.
class StrongAccess {
public:
    StrongAccess(const Ito& t, const Config& cfg);

    const SetRelation& relation() const { return tau_; }

    /// a =>^n b, or a =>^n b for some n >= 1 when `steps` is empty.
    bool leads(StateSet a, StateSet b, std::optional<std::size_t> steps = std::nullopt) const;
    /// Sets reachable from `a` through chains of minimal one-step targets.
    std::vector<StateSet> reachable(StateSet a) const;

    std::vector<StateSet> minimal_permanent_classes() const;
    bool is_permanent(StateSet a) const;

private:
    std::size_t n_;
    SetRelation tau_;
};

bool strongly_leads(const Ito& t, StateSet a, StateSet b, std::optional<std::size_t> steps,
                    const Config& cfg);
bool is_permanent(const Ito& t, StateSet a, const Config& cfg);

/// Sorted by index order; each class is checked to lie inside a single
/// communication class.
std::vector<StateSet> minimal_permanent_classes(const Ito& t, const Config& cfg);

/// Smallest r <= max_power_r such that the r-step upper transition is
/// positive between all pairs of `cls` and keeps upper probability one on
/// `cls`. Throws RegularityCapExceeded.
std::size_t find_regularity_r(const Ito& t, StateSet cls, const Config& cfg);

} // namespace imc
