#pragma once

#include "imc/transition.hpp"

#include <optional>

namespace imc {

/// Edge x -> y iff the upper probability of moving from x to y in one step
/// exceeds eps_pos. Successor lists are in state order.
struct AccessGraph {
    std::vector<std::vector<std::size_t>> successors;

    std::size_t size() const { return successors.size(); }
    bool has_edge(std::size_t x, std::size_t y) const;
    /// States reachable from `from` in exactly one step.
    StateSet step(StateSet from) const;
};

AccessGraph access_graph(const Ito& t, const Config& cfg);

/// With `steps`, whether a walk of exactly that length leads from x to y;
/// otherwise the reflexive-transitive closure. Throws UnknownState.
bool accessible(const AccessGraph& g, std::size_t x, std::size_t y,
                std::optional<std::size_t> steps = std::nullopt);

/// States reachable from `from` (including `from` itself).
StateSet closure(const AccessGraph& g, StateSet from);

bool is_absorbing(const AccessGraph& g, StateSet set);

struct CommunicationClass {
    StateSet states;
    bool has_cycle = false;
    std::size_t period = 0; ///< 0 when the class has no cycle
    bool regular = false;
    /// Smallest r with walks of every length >= r between all member pairs.
    std::optional<std::size_t> regularity_witness;
    bool maximal = false;
    StateSet closure; ///< the class together with everything it leads to
};

struct Classification {
    std::vector<CommunicationClass> classes; ///< ordered by smallest member index
    std::vector<std::pair<std::size_t, std::size_t>> leads_to; ///< class DAG edges
    std::optional<std::size_t> top_class;
    bool regularly_absorbing = false;
    std::optional<std::size_t> absorption_witness;
    double eps_pos = 0.0; ///< threshold used for edges
};

Classification classify(const Ito& t, const Config& cfg);

/// Strongly connected components in order of smallest member index.
std::vector<StateSet> strongly_connected_components(const AccessGraph& g);

} // namespace imc
