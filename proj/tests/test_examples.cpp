// Worked examples for each operation, on the small fixtures.

#include "support.hpp"

#include <doctest.h>

using namespace imc;

namespace {

const Config cfg;

CredalRow iv() { return CredalRow::from_interval({0.2, 0.3}, {0.6, 0.8}); }

bool same_points(std::vector<Distribution> a, std::vector<Distribution> b) {
    if (a.size() != b.size()) {
        return false;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (std::abs(a[i][j] - b[i][j]) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("indicator examples") {
    const auto space = testing::letters(2);
    CHECK(indicator(space, {"a"}) == Gamble{1, 0});
    CHECK(indicator(space, {}) == Gamble{0, 0});
    CHECK(indicator(space, {"a", "b"}) == Gamble{1, 1});
}

TEST_CASE("credal row examples") {
    const auto row = iv();
    const auto& r = std::get<IntervalRow>(row.form());
    CHECK(r.lower[0] == doctest::Approx(0.2));
    CHECK(r.lower[1] == doctest::Approx(0.4));
    CHECK(r.upper[0] == doctest::Approx(0.6));
    CHECK(r.upper[1] == doctest::Approx(0.8));
    const auto half = coherence_normalize({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(half.lower == Distribution{0.5, 0.5});

    const auto vr = CredalRow::from_vertices({{1, 0}, {0, 1}});
    CHECK(row_upper(vr, Gamble{3, 7}) == 7.0);
    CHECK(row_lower(vr, Gamble{3, 7}) == 3.0);
    CHECK(row_upper(iv(), Gamble{1, 0}) == doctest::Approx(0.6));
    CHECK(row_lower(iv(), Gamble{1, 0}) == doctest::Approx(0.2));
    CHECK(row_upper(iv(), Gamble{2.5, 2.5}) == doctest::Approx(2.5));
    CHECK(row_lower(iv(), Gamble{1, 1}) == doctest::Approx(1.0));

    CHECK(same_points(row_vertices(iv(), cfg).vertices, {{0.2, 0.8}, {0.6, 0.4}}));
    CHECK(same_points(row_vertices(CredalRow::from_interval({0.5, 0.5}, {0.5, 0.5}), cfg).vertices, {{0.5, 0.5}}));
    CHECK(same_points(row_vertices(vr, cfg).vertices, {{1, 0}, {0, 1}}));

    CHECK_FALSE(can_concentrate(iv(), StateSet{0}, cfg));
    CHECK(can_concentrate(iv(), StateSet{0, 1}, cfg));
    CHECK(can_concentrate(CredalRow::from_vertices({{1, 0}, {0.5, 0.5}}), StateSet{0}, cfg));
}

TEST_CASE("unconditional functional examples") {
    const auto vac = IefHandle::vacuous_on(2, StateSet{0, 1});
    CHECK(ief_upper(vac, Gamble{3, 7}) == 7.0);
    CHECK(ief_lower(vac, Gamble{3, 7}) == 3.0);
    CHECK(ief_upper(IefHandle::precise({0.5, 0.5}), Gamble{1, 0}) == 0.5);
    CHECK(ief_lower(IefHandle::precise({0.5, 0.5}), Gamble{1, 0}) == 0.5);
    const auto mix = IefHandle::mixture({0.5, 0.5}, {vac, IefHandle::precise({1, 0})});
    CHECK(ief_upper(mix, Gamble{0, 1}) == doctest::Approx(0.5));

    CHECK(support(IefHandle::vacuous_on(2, StateSet{0}), cfg) == StateSet{0});
    CHECK(support(IefHandle::precise({0.5, 0.5}), cfg) == StateSet{0, 1});
    CHECK(support(IefHandle::interval_set({0, 0.4}, {0.6, 1}), cfg) == StateSet{0, 1});

    CHECK(ess_max(IefHandle::precise({0.5, 0.5}), Gamble{3, 7}, cfg) == 7.0);
    CHECK(ess_max(vac, Gamble{3, 7}, cfg) == 3.0);
    CHECK(ess_max(vac, Gamble{2, 2}, cfg) == 2.0);

    CHECK(m_value(IefHandle::precise({0.5, 0.5}), cfg) == doctest::Approx(0.5));
    CHECK(m_value(vac, cfg) == 1.0);
    CHECK(m_value(IefHandle::precise({1, 0}), cfg) == 1.0);
}

TEST_CASE("transition examples") {
    const auto t = testing::two_state();
    CHECK(apply_upper(t, Gamble{1, 0}) == Gamble{1, 0.5});
    CHECK(apply_upper(t, Gamble{2, 2}) == Gamble{2, 2});
    const Ito mixed(testing::letters(2), {CredalRow::precise({1, 0}), iv()});
    CHECK(apply_upper(mixed, Gamble{1, 0})[1] == doctest::Approx(0.6));

    const auto one = apply_interval(t, GambleInterval::degenerate(Gamble{1, 0}));
    CHECK(one.lower == Gamble{1, 0.5});
    CHECK(one.upper == Gamble{1, 0.5});
    CHECK(power_apply(t, 0, Gamble{1, 0}).upper == Gamble{1, 0});
    CHECK(power_apply(t, 2, Gamble{1, 0}).upper == Gamble{1, 0.75});
    CHECK(power_apply(testing::example1(), 7, Gamble{1, 1, 1, 1}).lower == Gamble{1, 1, 1, 1});

    const auto [lo, hi] = evolve(IefHandle::vacuous_on(2, StateSet{0, 1}), t, 9, Gamble{1, 1});
    CHECK(lo == 1.0);
    CHECK(hi == 1.0);

    const auto sq = materialize_power(t, 2, cfg);
    CHECK(same_points(sq.rows[0].vertices, {{1, 0}}));
    CHECK(same_points(sq.rows[1].vertices, {{0.75, 0.25}}));
    const auto first = materialize_power(testing::example1(), 1, cfg);
    CHECK(same_points(first.rows[2].vertices, row_vertices(testing::example1().row(2), cfg).vertices));

    const auto self = restrict_to_class(t, StateSet{0}, 1, cfg);
    CHECK(same_points(self.rows[0].vertices, {{1, 0}}));
    const auto whole = restrict_to_class(testing::example1(), StateSet::full(4), 2, cfg);
    const auto power = materialize_power(testing::example1(), 2, cfg);
    for (std::size_t x = 0; x < 4; ++x) {
        CHECK(same_points(whole.rows[x].vertices, power.rows[x].vertices));
    }
}

TEST_CASE("weak accessibility examples") {
    const auto g = access_graph(testing::two_state(), cfg);
    CHECK(g.successors == std::vector<std::vector<std::size_t>>{{0}, {0, 1}});
    CHECK(access_graph(testing::swap_chain(), cfg).successors == std::vector<std::vector<std::size_t>>{{1}, {0}});
    const Ito vacuous(testing::letters(3), std::vector<CredalRow>(3, CredalRow::from_interval({0, 0, 0}, {1, 1, 1})));
    for (const auto& s : access_graph(vacuous, cfg).successors) {
        CHECK(s.size() == 3);
    }
    for (std::size_t n = 0; n < 6; ++n) {
        CHECK_FALSE(accessible(g, 0, 1, n));
    }
    CHECK(is_absorbing(g, StateSet{0}));
    CHECK_FALSE(is_absorbing(g, StateSet{1}));
    CHECK(is_absorbing(g, StateSet{0, 1}));
}

TEST_CASE("strong accessibility examples") {
    const auto row = CredalRow::from_vertices({{1, 0, 0}, {0, 0.5, 0.5}});
    const Ito t3(testing::letters(3), {row, row, row});
    CHECK(min_certain_supports(t3, 0, cfg) == Antichain{StateSet{0}, StateSet{1, 2}});
    CHECK(min_certain_supports(testing::two_state(), 1, cfg) == Antichain{StateSet{0, 1}});
    CHECK(min_certain_supports(testing::example1(), 2, cfg) == Antichain{StateSet{2, 3}});

    CHECK(tau(testing::swap_chain(), StateSet{0}, StateSet{1}, cfg));
    CHECK_FALSE(tau(testing::swap_chain(), StateSet{0, 1}, StateSet{0}, cfg));
    CHECK(tau(testing::example1(), StateSet{0, 2}, StateSet::full(4), cfg));

    CHECK(psi(IefHandle::vacuous_on(3, StateSet::full(3)), StateSet{1}, cfg));
    CHECK_FALSE(psi(IefHandle::precise({0.5, 0.5}), StateSet{0}, cfg));
    CHECK(psi(IefHandle::precise({0.5, 0.5}), StateSet{0, 1}, cfg));

    const auto tau2 = tau_relation(testing::two_state(), cfg);
    CHECK_FALSE(star(psi_function(IefHandle::precise({0.5, 0.5}), cfg), tau2)(StateSet{0}));
    CHECK(star(psi_function(IefHandle::vacuous_on(2, StateSet{0, 1}), cfg), tau2)(StateSet{0, 1}));
    const auto swap = tau_relation(testing::swap_chain(), cfg);
    CHECK(star(swap, swap)(StateSet{0}, StateSet{0}));

    CHECK(strongly_leads(testing::example1(), StateSet{2, 3}, StateSet{2, 3}, 1, cfg));
    CHECK(is_permanent(testing::example1(), StateSet{2, 3}, cfg));
    CHECK_FALSE(is_permanent(testing::two_state(), StateSet{1}, cfg));
    CHECK(is_permanent(testing::two_state(), StateSet{0, 1}, cfg));
    CHECK(find_regularity_r(testing::two_state(), StateSet{0}, cfg) == 1);
    CHECK(find_regularity_r(testing::example1(), StateSet{0, 1}, cfg) == 1);
}

TEST_CASE("invariant examples") {
    const auto t = testing::two_state();
    CHECK(s_of(IefHandle::precise({0, 1}), t, cfg) == StateSet{0, 1});
    CHECK(s_of(IefHandle::precise({1, 0}), t, cfg) == StateSet{0});
    CHECK(s_of(IefHandle::vacuous_on(2, StateSet{0, 1}), t, cfg) == StateSet{0, 1});

    const auto m = least_committal_invariant(t, StateSet{0, 1}, cfg);
    CHECK(m->upper(Gamble{1, 0}) == doctest::Approx(1.0));
    CHECK(m->upper(Gamble{0, 1}) == doctest::Approx(0.0));
    CHECK(least_committal_invariant(t, StateSet{0}, cfg)->upper(Gamble{0.4, 9}) == doctest::Approx(0.4));
    CHECK(least_committal_invariant(testing::example1(), StateSet::full(4), cfg)->upper(Gamble{1, 1, 1, 1}) == 1.0);

    const auto classes = minimal_permanent_classes(testing::example1(), cfg);
    CHECK_FALSE(is_extremal(IefHandle::precise({0.25, 0.25, 0.25, 0.25}), classes, cfg));
    CHECK(is_extremal(IefHandle::point_mass(4, 2), {StateSet{2, 3}}, cfg));

    CHECK(invariant_on_class(t, StateSet{0}, cfg)->upper(Gamble{0.3, 5}) == doctest::Approx(0.3));
    CHECK(invariant_on_class(testing::example1(), StateSet{0, 1}, cfg)->upper(indicator(4, StateSet{0})) ==
          doctest::Approx(0.5));
    const auto cd = invariant_on_class(testing::example1(), StateSet{2, 3}, cfg);
    const auto reference = least_committal_invariant(
        testing::example1(), s_of(IefHandle::vacuous_on(4, StateSet{2, 3}), testing::example1(), cfg), cfg);
    CHECK(cd->upper(indicator(4, StateSet{0, 1})) == doctest::Approx(1.0));
    for (const auto& f : test_family(4, cfg)) {
        CHECK(cd->upper(f) == doctest::Approx(reference->upper(f)).epsilon(1e-6));
    }

    const auto report = classify_convergence(IefHandle::precise({0.5, 0.5}), t, cfg);
    REQUIRE(report.classes.size() == 1);
    CHECK(report.classes[0].verdict == Verdict::One);
    CHECK(report.limit->upper(Gamble{0.2, 0.9}) == doctest::Approx(0.2));
    const auto ab = classify_convergence(IefHandle::point_mass(4, 0), testing::example1(), cfg);
    CHECK(ab.limit->upper(indicator(4, StateSet{0})) == doctest::Approx(0.5));

    const auto two = extremal_invariants(t, cfg);
    REQUIRE(two.size() == 1);
    CHECK(two[0].family == std::vector<StateSet>{StateSet{0}});
}
