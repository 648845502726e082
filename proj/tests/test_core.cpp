#include "support.hpp"

#include <doctest.h>

using namespace imc;

TEST_CASE("state sets behave as finite sets") {
    StateSet s{0, 2, 5};
    CHECK(s.count() == 3);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.indices() == std::vector<std::size_t>{0, 2, 5});
    CHECK(StateSet{2}.subset_of(s));
    CHECK_FALSE(s.subset_of(StateSet{0, 2}));
    CHECK((s & StateSet{2, 3}) == StateSet{2});
    CHECK((s | StateSet{1}) == StateSet{0, 1, 2, 5});
    CHECK(s.minus(StateSet{0}) == StateSet{2, 5});
    CHECK(s.complement(6) == StateSet{1, 3, 4});
    CHECK(StateSet::full(64).count() == 64);
    CHECK(StateSet().empty());
}

TEST_CASE("subset order is lexicographic on index lists") {
    CHECK(set_order_less(StateSet{0}, StateSet{1}));
    CHECK(set_order_less(StateSet{0}, StateSet{0, 1}));
    CHECK(set_order_less(StateSet{0, 1}, StateSet{0, 2}));
    CHECK(set_order_less(StateSet{0, 3}, StateSet{1}));
    CHECK_FALSE(set_order_less(StateSet{1}, StateSet{1}));
}

TEST_CASE("state space validates labels") {
    const StateSpace space({"x", "y", "z"});
    CHECK(space.index_of("y") == 1);
    CHECK(space.subset({"z", "x"}) == StateSet{0, 2});
    CHECK(space.labels_of(StateSet{2, 0}) == std::vector<std::string>{"x", "z"});
    CHECK_THROWS_AS(StateSpace{std::vector<std::string>{}}, Error);
    CHECK_THROWS_AS(StateSpace({"x", "x"}), Error);
    try {
        space.index_of("w");
        FAIL("expected UnknownState");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownState);
    }
    std::vector<std::string> many;
    for (int i = 0; i < 65; ++i) {
        many.push_back("s" + std::to_string(i));
    }
    CHECK_THROWS_AS(StateSpace{many}, Error);
}

TEST_CASE("gambles") {
    const Gamble f{1.0, -2.0, 3.0};
    CHECK(f.max() == 3.0);
    CHECK(f.min() == -2.0);
    CHECK(f.max_over(StateSet{0, 1}) == 1.0);
    CHECK(f.min_over(StateSet{0, 2}) == 1.0);
    CHECK((-f)[1] == 2.0);
    CHECK((f + f)[2] == 6.0);
    CHECK((2.0 * f)[0] == 2.0);
    CHECK(f.plus(1.0)[1] == -1.0);
    CHECK(f.masked(StateSet{1}) == Gamble{0.0, -2.0, 0.0});
    CHECK_THROWS_AS(Gamble({1.0, std::nan("")}), Error);
    CHECK_THROWS_AS(f + Gamble{1.0}, Error);
    CHECK_THROWS_AS(GambleInterval(Gamble{1.0}, Gamble{0.0}), Error);
}

TEST_CASE("indicators") {
    const auto space = testing::letters(3);
    CHECK(indicator(space, {"a", "c"}) == Gamble{1.0, 0.0, 1.0});
    CHECK(indicator(3, StateSet{1}) == Gamble{0.0, 1.0, 0.0});
    CHECK_THROWS_AS(indicator(space, {"q"}), Error);
}

TEST_CASE("config validation and threshold helpers") {
    Config cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.positive(2e-9));
    CHECK_FALSE(cfg.positive(1e-9));
    CHECK(cfg.is_one(1.0 - 1e-10));
    CHECK_FALSE(cfg.is_one(1.0 - 1e-8));
    cfg.eps_pos = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    Config big;
    big.max_strong_states = 30;
    CHECK_THROWS_AS(big.validate(), Error);
    Config small;
    small.max_strong_states = 3;
    CHECK_THROWS_AS(require_lattice_budget(4, small, "test"), Error);
    CHECK_NOTHROW(require_lattice_budget(3, small, "test"));
}

TEST_CASE("error kinds have names") {
    CHECK(std::string(to_string(ErrorKind::EmptyCredalSet)) == "EmptyCredalSet");
    const NonConvergentError e("x", 0.1, 0.2, 7);
    CHECK(e.kind() == ErrorKind::NonConvergent);
    CHECK(e.iterations() == 7);
}
