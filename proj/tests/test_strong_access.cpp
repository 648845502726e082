#include "support.hpp"

#include "imc/oracle.hpp"

#include <doctest.h>

using namespace imc;
using imc::testing::Generator;

TEST_CASE("antichains keep minimal sets in canonical order") {
    const auto m = minimize({StateSet{0, 1}, StateSet{1}, StateSet{0, 2}, StateSet{1}, StateSet{2, 3}});
    CHECK(m == Antichain{StateSet{1}, StateSet{0, 2}, StateSet{2, 3}});
}

TEST_CASE("one-step strong accessibility") {
    const Config cfg;
    const auto t = testing::example1();
    CHECK(tau(t, StateSet{2, 3}, StateSet{2, 3}, cfg));
    CHECK_FALSE(tau(t, StateSet{2}, StateSet{2}, cfg));
    CHECK(tau(t, StateSet{0}, StateSet{0, 1}, cfg));
    CHECK_FALSE(tau(t, StateSet{0}, StateSet{0}, cfg));
    CHECK(tau(t, StateSet{}, StateSet{}, cfg));
    CHECK_FALSE(tau(t, StateSet{0}, StateSet{}, cfg));
    CHECK(min_certain_supports(t, 2, cfg) == Antichain{StateSet{2, 3}});
    const auto rel = tau_relation(t, cfg);
    CHECK(rel.targets(StateSet{0, 2}) == Antichain{StateSet{0, 1, 2, 3}});
}

TEST_CASE("upper probability one functions") {
    const Config cfg;
    const auto e = IefHandle::precise({0.5, 0.5});
    CHECK(psi(e, StateSet{0, 1}, cfg));
    CHECK_FALSE(psi(e, StateSet{0}, cfg));
    const auto v = IefHandle::vertex_set({{1, 0}, {0, 1}});
    CHECK(psi(v, StateSet{0}, cfg));
    CHECK(psi(v, StateSet{1}, cfg));
    CHECK(psi_function(v, cfg).minimal() == Antichain{StateSet{0}, StateSet{1}});
}

TEST_CASE("swap chain: a set can lead to itself while its superset cannot reach it") {
    const Config cfg;
    const StrongAccess s(testing::swap_chain(), cfg);
    CHECK(s.leads(StateSet{0}, StateSet{0}));
    CHECK(s.leads(StateSet{0}, StateSet{0}, 2));
    CHECK_FALSE(s.leads(StateSet{0}, StateSet{0}, 1));
    for (std::size_t k = 1; k <= 4; ++k) {
        CHECK_FALSE(s.leads(StateSet{0, 1}, StateSet{0}, k));
    }
    CHECK_FALSE(s.leads(StateSet{0, 1}, StateSet{0}));
    CHECK(s.minimal_permanent_classes() == std::vector<StateSet>{StateSet{0}, StateSet{1}});
    CHECK(s.is_permanent(StateSet{0}));
    CHECK(s.is_permanent(StateSet{0, 1}));
    CHECK(find_regularity_r(testing::swap_chain(), StateSet{0}, cfg) == 2);
}

TEST_CASE("leads with many steps skips around cycles") {
    const Config cfg;
    const StrongAccess s(testing::swap_chain(), cfg);
    CHECK(s.leads(StateSet{0}, StateSet{0}, 1000000));
    CHECK_FALSE(s.leads(StateSet{0}, StateSet{0}, 1000001));
    CHECK(s.leads(StateSet{0}, StateSet{1}, 1000001));
}

TEST_CASE("minimal permanent classes of the fixtures") {
    const Config cfg;
    CHECK(minimal_permanent_classes(testing::two_state(), cfg) == std::vector<StateSet>{StateSet{0}});
    CHECK(minimal_permanent_classes(testing::example1(), cfg) ==
          std::vector<StateSet>{StateSet{0, 1}, StateSet{2, 3}});
    CHECK(minimal_permanent_classes(testing::three_blocks(), cfg).size() == 3);
    CHECK(minimal_permanent_classes(testing::block_triangular(), cfg) == std::vector<StateSet>{StateSet{2, 3}});
    CHECK(find_regularity_r(testing::example1(), StateSet{2, 3}, cfg) == 1);
}

TEST_CASE("regularity cap") {
    Config cfg;
    cfg.max_power_r = 1;
    CHECK_THROWS_AS(find_regularity_r(testing::swap_chain(), StateSet{0}, cfg), Error);
    CHECK_THROWS_AS(find_regularity_r(testing::two_state(), StateSet{0, 1}, Config{}), Error);
}

TEST_CASE("lattice budget") {
    Config cfg;
    cfg.max_strong_states = 3;
    CHECK_THROWS_AS(StrongAccess(testing::example1(), cfg), Error);
    CHECK_THROWS_AS(minimal_permanent_classes(testing::example1(), cfg), Error);
}

TEST_CASE("tau agrees with the brute oracle") {
    Generator gen(41);
    const Config cfg;
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + gen.index(4);
        const auto t = gen.ito(n);
        const auto table = oracle::brute_tau(t, 1, cfg);
        const auto rel = tau_relation(t, cfg);
        for (std::uint64_t a = 0; a < table.size(); ++a) {
            for (std::uint64_t b = 0; b < table.size(); ++b) {
                CHECK(rel(StateSet(a), StateSet(b)) == table[a][b]);
                CHECK(tau(t, StateSet(a), StateSet(b), cfg) == table[a][b]);
            }
        }
    }
}

TEST_CASE("minimal permanent classes agree with the brute oracle") {
    Generator gen(42);
    const Config cfg;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + gen.index(4);
        const auto t = gen.ito(n);
        CHECK(minimal_permanent_classes(t, cfg) == oracle::brute_minimal_permanent(t, cfg));
    }
}

TEST_CASE("strongly_leads agrees with powers of the brute table") {
    Generator gen(43);
    const Config cfg;
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = 1 + gen.index(3);
        const auto t = gen.ito(n, 2);
        const StrongAccess s(t, cfg);
        for (std::size_t steps = 1; steps <= 3; ++steps) {
            const auto table = oracle::brute_tau(t, steps, cfg);
            for (std::uint64_t a = 0; a < table.size(); ++a) {
                for (std::uint64_t b = 0; b < table.size(); ++b) {
                    CHECK(s.leads(StateSet(a), StateSet(b), steps) == table[a][b]);
                }
            }
        }
    }
}
