#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace imc {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    UnknownState,
    DimensionMismatch,
    InvalidArgument,
    EmptyCredalSet,
    VertexBudgetExceeded,
    StateBudgetExceeded,
    PowerCapExceeded,
    RegularityCapExceeded,
    EmptyRestriction,
    AbsorbingViolation,
    NonConvergent,
    BudgetExceeded,
    NotPrecise,
    ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by iterations that hit max_iter. `low`/`high` bracket the last
/// observed values of the sequence.
class NonConvergentError : public Error {
public:
    NonConvergentError(const std::string& what, double low, double high, std::size_t iterations)
        : Error(ErrorKind::NonConvergent, what), low_(low), high_(high), iterations_(iterations) {}

    double low() const { return low_; }
    double high() const { return high_; }
    std::size_t iterations() const { return iterations_; }

private:
    double low_;
    double high_;
    std::size_t iterations_;
};

/// Hard upper bound on the number of states. Subsets are stored as 64-bit masks.
inline constexpr std::size_t kMaxStates = 64;

/// A subset of the state space, stored as a bitmask over state indices.
class StateSet {
public:
    constexpr StateSet() = default;
    constexpr explicit StateSet(std::uint64_t mask) : mask_(mask) {}
    StateSet(std::initializer_list<std::size_t> indices);

    static StateSet full(std::size_t n) {
        return StateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static StateSet single(std::size_t i) { return StateSet(std::uint64_t{1} << i); }

    constexpr std::uint64_t mask() const { return mask_; }
    bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
    void insert(std::size_t i) { mask_ |= std::uint64_t{1} << i; }
    void erase(std::size_t i) { mask_ &= ~(std::uint64_t{1} << i); }
    bool empty() const { return mask_ == 0; }
    std::size_t count() const { return static_cast<std::size_t>(std::popcount(mask_)); }

    bool subset_of(StateSet other) const { return (mask_ & ~other.mask_) == 0; }
    bool intersects(StateSet other) const { return (mask_ & other.mask_) != 0; }

    StateSet operator|(StateSet o) const { return StateSet(mask_ | o.mask_); }
    StateSet operator&(StateSet o) const { return StateSet(mask_ & o.mask_); }
    StateSet minus(StateSet o) const { return StateSet(mask_ & ~o.mask_); }
    StateSet complement(std::size_t n) const { return full(n).minus(*this); }

    /// Member indices in increasing order.
    std::vector<std::size_t> indices() const;

    friend bool operator==(StateSet, StateSet) = default;

private:
    std::uint64_t mask_ = 0;
};

/// Orders subsets by their sorted index lists, lexicographically.
bool set_order_less(StateSet a, StateSet b);

/// Finite, labelled state space. Iteration order is input order.
class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    /// Throws UnknownState.
    std::size_t index_of(const std::string& label) const;
    StateSet subset(const std::vector<std::string>& labels) const;
    StateSet full_set() const { return StateSet::full(size()); }

    /// Labels of a subset, in input order.
    std::vector<std::string> labels_of(StateSet set) const;

    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    std::vector<std::string> labels_;
};

/// A real-valued map on the state space.
class Gamble {
public:
    Gamble() = default;
    explicit Gamble(std::vector<double> values);
    Gamble(std::initializer_list<double> values) : Gamble(std::vector<double>(values)) {}

    static Gamble constant(std::size_t n, double c) { return Gamble(std::vector<double>(n, c)); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vector() const { return values_; }

    double max() const;
    double min() const;
    double max_over(StateSet set) const;
    double min_over(StateSet set) const;

    Gamble operator-() const;
    Gamble operator+(const Gamble& other) const;
    Gamble operator-(const Gamble& other) const;
    Gamble operator*(double scale) const;
    Gamble plus(double shift) const;
    /// Pointwise product with the indicator of `set`.
    Gamble masked(StateSet set) const;

    friend bool operator==(const Gamble&, const Gamble&) = default;

private:
    std::vector<double> values_;
};

inline Gamble operator*(double scale, const Gamble& g) { return g * scale; }

/// Closed interval of gambles [lower, upper].
struct GambleInterval {
    Gamble lower;
    Gamble upper;

    GambleInterval(Gamble lo, Gamble hi);
    static GambleInterval degenerate(const Gamble& g) { return {g, g}; }
};

/// Numerical thresholds and caps shared by every module.
struct Config {
    double eps_pos = 1e-9;   ///< "strictly positive" means value > eps_pos
    double eps_one = 1e-9;   ///< "equals one" means value >= 1 - eps_one
    double eps_conv = 1e-10; ///< sup-norm convergence tolerance
    std::size_t max_iter = 100000;
    std::size_t max_strong_states = 12;
    std::size_t max_power_r = 16;
    std::size_t max_vertices = 4096; ///< cap on extreme points per row

    /// Throws InvalidArgument.
    void validate() const;

    bool positive(double v) const { return v > eps_pos; }
    bool is_one(double v) const { return v >= 1.0 - eps_one; }
};

Gamble indicator(const StateSpace& space, const std::vector<std::string>& labels);
Gamble indicator(std::size_t n, StateSet set);

/// Throws StateBudgetExceeded when the subset lattice of `n` states is over budget.
void require_lattice_budget(std::size_t n, const Config& cfg, const char* what);

} // namespace imc
