#pragma once

#include "imc/core.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace imc {

using Distribution = std::vector<double>;

/// Credal set given by its extreme points.
struct VertexRow {
    std::vector<Distribution> vertices;
};

/// Credal set given by per-state probability intervals.
struct IntervalRow {
    Distribution lower;
    Distribution upper;
};

/// Closed convex set of mass functions for one conditional row.
///
/// Interval input is tightened by coherence_normalize at construction, so
/// every stored bound is attained by some member of the set.
class CredalRow {
public:
    using Form = std::variant<VertexRow, IntervalRow>;

    /// Each vertex must be nonnegative and sum to one within `tol`.
    static CredalRow from_vertices(std::vector<Distribution> vertices, double tol = 1e-12);
    static CredalRow from_interval(Distribution lower, Distribution upper);
    static CredalRow precise(Distribution mass) { return from_vertices({std::move(mass)}); }

    std::size_t size() const;
    const Form& form() const { return form_; }
    bool is_interval() const { return std::holds_alternative<IntervalRow>(form_); }

    /// The single mass function of a precise row, if the row is precise.
    std::optional<Distribution> precise_mass(double tol = 1e-12) const;

private:
    explicit CredalRow(Form form) : form_(std::move(form)) {}
    Form form_;
};

/// Tightens interval bounds to their reachable values. Idempotent.
/// Throws EmptyCredalSet.
IntervalRow coherence_normalize(const IntervalRow& row);

double row_upper(const CredalRow& row, const Gamble& f);
double row_lower(const CredalRow& row, const Gamble& f);

/// Extreme points of the row, deduplicated within 1e-12.
/// Throws VertexBudgetExceeded when the count exceeds cfg.max_vertices.
VertexRow row_vertices(const CredalRow& row, const Config& cfg);

/// Whether some member of the row puts all its mass on `target`.
bool can_concentrate(const CredalRow& row, StateSet target, const Config& cfg);

/// Sorts the points lexicographically and drops those within `tol` (sup
/// norm) of a point already kept.
std::vector<Distribution> dedupe_points(std::vector<Distribution> points, double tol);

/// Upper expectation of an iterated limit functional; implemented by the
/// invariant module.
class LimitEvaluator {
public:
    virtual ~LimitEvaluator() = default;
    virtual std::size_t size() const = 0;
    virtual double upper(const Gamble& f) const = 0;
};

class IefHandle;

struct PreciseIef {
    Distribution mass;
};
struct VertexSetIef {
    VertexRow set;
};
struct IntervalSetIef {
    IntervalRow set;
};
struct VacuousIef {
    std::size_t n = 0;
    StateSet on;
};
struct MixtureIef {
    std::vector<double> weights;
    std::vector<IefHandle> parts;
};
struct IteratedLimitIef {
    std::shared_ptr<const LimitEvaluator> limit;
};

/// An unconditional imprecise expectation functional.
class IefHandle {
public:
    using Form =
        std::variant<PreciseIef, VertexSetIef, IntervalSetIef, VacuousIef, MixtureIef, IteratedLimitIef>;

    static IefHandle precise(Distribution mass);
    static IefHandle point_mass(std::size_t n, std::size_t state);
    static IefHandle vertex_set(std::vector<Distribution> vertices);
    static IefHandle interval_set(Distribution lower, Distribution upper);
    static IefHandle vacuous_on(std::size_t n, StateSet on);
    static IefHandle mixture(std::vector<double> weights, std::vector<IefHandle> parts);
    static IefHandle iterated_limit(std::shared_ptr<const LimitEvaluator> limit);

    std::size_t size() const;
    const Form& form() const { return form_; }
    /// False when the handle is, or mixes in, an iterated limit.
    bool is_explicit() const;

private:
    explicit IefHandle(Form form) : form_(std::move(form)) {}
    Form form_;
};

double ief_upper(const IefHandle& e, const Gamble& f);
double ief_lower(const IefHandle& e, const Gamble& f);

/// States with upper probability above eps_pos.
StateSet support(const IefHandle& e, const Config& cfg);

/// Largest value a of f whose level set {f >= a} has positive lower probability.
double ess_max(const IefHandle& e, const Gamble& f, const Config& cfg);

/// Smallest positive lower probability over all events. Exponential in the
/// number of states, gated by max_strong_states.
double m_value(const IefHandle& e, const Config& cfg);

} // namespace imc
