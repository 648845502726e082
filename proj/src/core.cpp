#include "imc/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace imc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyCredalSet: return "EmptyCredalSet";
    case ErrorKind::VertexBudgetExceeded: return "VertexBudgetExceeded";
    case ErrorKind::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorKind::PowerCapExceeded: return "PowerCapExceeded";
    case ErrorKind::RegularityCapExceeded: return "RegularityCapExceeded";
    case ErrorKind::EmptyRestriction: return "EmptyRestriction";
    case ErrorKind::AbsorbingViolation: return "AbsorbingViolation";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotPrecise: return "NotPrecise";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

StateSet::StateSet(std::initializer_list<std::size_t> indices) {
    for (auto i : indices) {
        insert(i);
    }
}

std::vector<std::size_t> StateSet::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (auto m = mask_; m != 0; m &= m - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    }
    return out;
}

bool set_order_less(StateSet a, StateSet b) {
    const auto ia = a.indices();
    const auto ib = b.indices();
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "state space must contain at least one state");
    }
    if (labels_.size() > kMaxStates) {
        throw Error(ErrorKind::StateBudgetExceeded,
                    "state space has " + std::to_string(labels_.size()) + " states, limit is 64");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate state label '" + l + "'");
        }
    }
}

std::size_t StateSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(ErrorKind::UnknownState, "unknown state '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

StateSet StateSpace::subset(const std::vector<std::string>& labels) const {
    StateSet s;
    for (const auto& l : labels) {
        s.insert(index_of(l));
    }
    return s;
}

std::vector<std::string> StateSpace::labels_of(StateSet set) const {
    std::vector<std::string> out;
    for (auto i : set.indices()) {
        out.push_back(labels_.at(i));
    }
    return out;
}

Gamble::Gamble(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::InvalidArgument, "gamble entries must be finite");
        }
    }
}

double Gamble::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Gamble::min() const { return *std::min_element(values_.begin(), values_.end()); }

double Gamble::max_over(StateSet set) const {
    double best = -INFINITY;
    for (auto i : set.indices()) {
        best = std::max(best, values_.at(i));
    }
    return best;
}

double Gamble::min_over(StateSet set) const {
    double best = INFINITY;
    for (auto i : set.indices()) {
        best = std::min(best, values_.at(i));
    }
    return best;
}

Gamble Gamble::operator-() const { return *this * -1.0; }

Gamble Gamble::operator+(const Gamble& other) const {
    if (other.size() != size()) {
        throw Error(ErrorKind::DimensionMismatch, "gamble sizes differ");
    }
    auto out = *this;
    for (std::size_t i = 0; i < size(); ++i) {
        out.values_[i] += other.values_[i];
    }
    return out;
}

Gamble Gamble::operator-(const Gamble& other) const { return *this + (-other); }

Gamble Gamble::operator*(double scale) const {
    auto out = *this;
    for (auto& v : out.values_) {
        v *= scale;
    }
    return out;
}

Gamble Gamble::plus(double shift) const {
    auto out = *this;
    for (auto& v : out.values_) {
        v += shift;
    }
    return out;
}

Gamble Gamble::masked(StateSet set) const {
    auto out = *this;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!set.contains(i)) {
            out.values_[i] = 0.0;
        }
    }
    return out;
}

GambleInterval::GambleInterval(Gamble lo, Gamble hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) {
        throw Error(ErrorKind::DimensionMismatch, "interval bounds have different sizes");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        // small slack for rounding in T̲ vs T̄
        if (lower[i] > upper[i] + 1e-12) {
            throw Error(ErrorKind::InvalidArgument, "gamble interval with lower > upper");
        }
    }
}

void Config::validate() const {
    if (!(eps_pos > 0) || !(eps_one > 0) || !(eps_conv > 0)) {
        throw Error(ErrorKind::InvalidArgument, "thresholds must be strictly positive");
    }
    if (max_iter == 0 || max_strong_states == 0 || max_power_r == 0 || max_vertices == 0) {
        throw Error(ErrorKind::InvalidArgument, "caps must be positive integers");
    }
    if (max_strong_states > 20) {
        throw Error(ErrorKind::InvalidArgument, "max_strong_states above 20 is not supported");
    }
}

Gamble indicator(const StateSpace& space, const std::vector<std::string>& labels) {
    return indicator(space.size(), space.subset(labels));
}

Gamble indicator(std::size_t n, StateSet set) {
    std::vector<double> v(n, 0.0);
    for (auto i : set.indices()) {
        if (i >= n) {
            throw Error(ErrorKind::UnknownState, "subset index outside the state space");
        }
        v[i] = 1.0;
    }
    return Gamble(std::move(v));
}

void require_lattice_budget(std::size_t n, const Config& cfg, const char* what) {
    if (n > cfg.max_strong_states) {
        throw Error(ErrorKind::StateBudgetExceeded,
                    std::string(what) + ": " + std::to_string(n) +
                        " states exceeds max_strong_states = " +
                        std::to_string(cfg.max_strong_states));
    }
}

} // namespace imc
