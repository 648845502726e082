#pragma once

#include "imc/strong_access.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace imc {

/// Support of e closed under weak accessibility. Always absorbing.
StateSet s_of(const IefHandle& e, const Ito& t, const Config& cfg);

/// Lazily evaluated limit of a vacuous functional pushed through a chain of
/// monotone iterations.
///
/// Stage 0 starts from the vacuous functional on `base` and iterates its
/// operator until the value settles; each later stage iterates its own
/// operator on the gamble and evaluates the previous stage on the result.
/// Upper values of a stage must be monotone in the stated direction; a
/// violation beyond rounding slack raises AbsorbingViolation. A stage stops
/// once `calm_iterations` consecutive steps are within tol and the
/// geometric tail estimate of the remaining change is within tol as well.
class LimitFunctional : public LimitEvaluator, public std::enable_shared_from_this<LimitFunctional> {
public:
    enum class Direction { NonIncreasing, NonDecreasing };

    struct Stage {
        Ito op;
        std::size_t steps = 1; ///< operator applications per iteration
        Direction direction = Direction::NonIncreasing;
        double tol = 0.0;
    };

    struct Stats {
        std::size_t evaluations = 0;
        std::size_t max_iterations = 0; ///< outermost stage
        double last_step = 0.0;         ///< final |v_k+1 - v_k| of the last evaluation
    };

    /// With `phases` > 1 the value at f is the maximum over j < phases of the
    /// chain value at T̄^j f, where T is the operator of the last stage.
    LimitFunctional(StateSet base, std::vector<Stage> chain, Config cfg, std::size_t phases = 1);

    std::size_t size() const override { return chain_.front().op.size(); }
    double upper(const Gamble& f) const override;
    double lower(const Gamble& f) const { return -upper(-f); }

    StateSet base() const { return base_; }
    std::size_t phases() const { return phases_; }
    const std::vector<Stage>& chain() const { return chain_; }
    Stats stats() const;

    /// This functional as an IefHandle (an IteratedLimit).
    IefHandle handle() const { return IefHandle::iterated_limit(shared_from_this()); }

private:
    double evaluate(std::size_t level, const Gamble& g, std::size_t& iterations, double& step) const;

    StateSet base_;
    std::vector<Stage> chain_;
    Config cfg_;
    std::size_t phases_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<double>, double> cache_;
    mutable Stats stats_;
};

using LimitPtr = std::shared_ptr<const LimitFunctional>;

/// Tracks a monotone scalar sequence and decides when it has settled.
/// Exact plateaus shorter than `calm_iterations` do not end the iteration.
class SettleRule {
public:
    SettleRule(double tol, std::size_t calm_iterations) : tol_(tol), needed_(calm_iterations) {}
    /// Feeds |v_k+1 - v_k|; returns true once the sequence counts as settled.
    bool feed(double step, double scale);

private:
    double tol_;
    std::size_t needed_;
    std::size_t calm_ = 0;
    double previous_ = -1.0;
};

/// Consecutive calm iterations required for `n` states.
std::size_t calm_iterations(std::size_t n);

/// Limit of the vacuous functional on an absorbing set under T. Throws
/// AbsorbingViolation when `absorbing` is not absorbing.
LimitPtr least_committal_invariant(const Ito& t, StateSet absorbing, const Config& cfg);

/// Whether e gives upper probability 0 or 1 to every class.
bool is_extremal(const IefHandle& e, const std::vector<StateSet>& classes, const Config& cfg);

/// Invariant functional attached to a minimal permanent class: limit under
/// the class-restricted r-step operator, then continued with T in blocks of
/// r steps, then the maximum over the r phases T̄^j f, j < r.
LimitPtr invariant_on_class(const Ito& t, StateSet cls, const Config& cfg);

/// All subset indicators (when within max_strong_states) followed by 32
/// fixed-seed random gambles with entries in [0, 1].
std::vector<Gamble> test_family(std::size_t n, const Config& cfg);

/// max over the family of |M(T̄ f) - M(f)|.
double invariance_residual(const LimitEvaluator& m, const Ito& t, const std::vector<Gamble>& family);

enum class Verdict { Zero, One, Indeterminate };
const char* to_string(Verdict v);

struct ClassVerdict {
    StateSet cls;
    Verdict verdict = Verdict::Indeterminate;
    double last_upper = 0.0; ///< upper probability at the last iteration
    std::size_t iterations = 0;
    bool inside_s = false; ///< class lies inside S of the initial functional
};

struct ConvergenceReport {
    std::vector<ClassVerdict> classes;
    StateSet s_e;
    /// Whether E0 T^n was extremal for every n in the observed window.
    bool extremal_in_window = false;
    std::size_t window = 0;
    LimitPtr limit; ///< null unless every verdict is 0 or 1
    double invariance_residual = 0.0;
    /// max over the test family of |lim E0(T̄^n f) - M(f)|: agreement on the
    /// test family, not full equality.
    double direct_agreement = 0.0;
    std::vector<std::string> warnings;
};

ConvergenceReport classify_convergence(const IefHandle& e0, const Ito& t, const Config& cfg);

/// lim E0(T̄^n f), with the same stopping rule as LimitFunctional stages.
/// Throws NonConvergent.
double direct_limit_upper(const IefHandle& e0, const Ito& t, const Gamble& f, const Config& cfg);

struct ExtremalInvariant {
    std::vector<StateSet> family; ///< minimal permanent classes inside `closure`
    StateSet closure;             ///< smallest absorbing closure realizing the family
    LimitPtr limit;
};

/// One extremal invariant per distinct family of minimal permanent classes
/// realized by closures of sets of states.
std::vector<ExtremalInvariant> extremal_invariants(const Ito& t, const Config& cfg);

} // namespace imc
