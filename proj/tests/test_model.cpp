#include <doctest.h>

#include <stdexcept>

#include <notrade/model.hpp>

using namespace notrade;

TEST_CASE("state sets canonicalize their members") {
    StateSet s({3, 1, 1, 2});
    CHECK(s.members() == std::vector<StateIdx>{1, 2, 3});
    CHECK(s.contains(2));
    CHECK(!s.contains(0));
    CHECK(s.first() == 1);
    CHECK(StateSet({1, 2}).subset_of(s));
    CHECK(!s.subset_of(StateSet({1, 2})));
    CHECK(s.intersect(StateSet({0, 2, 3})) == StateSet({2, 3}));
    CHECK(s.unite(StateSet({0})) == StateSet({0, 1, 2, 3}));
    CHECK(StateSet::full(3) == StateSet({0, 1, 2}));
    CHECK(StateSet::single(4).members() == std::vector<StateIdx>{4});
    CHECK_THROWS_AS(StateSet().first(), std::invalid_argument);
}

TEST_CASE("state spaces reject duplicates and resolve ids") {
    StateSpace space({"a", "b", "c"});
    CHECK(space.size() == 3);
    CHECK(space.id(1) == "b");
    CHECK(space.index_of("c") == 2);
    CHECK_THROWS_AS(space.index_of("d"), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace({"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace({""}), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace({}), std::invalid_argument);
}

TEST_CASE("partitions validate disjoint covering blocks") {
    Partition p(4, {StateSet({2, 3}), StateSet({0, 1})});
    CHECK(p.n_blocks() == 2);
    CHECK(p.block_index_of(0) == 0);  // blocks reordered by smallest member
    CHECK(p.block_containing(3) == StateSet({2, 3}));
    CHECK_THROWS_AS(Partition(4, {StateSet({0, 1}), StateSet({1, 2, 3})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Partition(4, {StateSet({0, 1})}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(2, {StateSet({0, 1, 2})}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(2, {StateSet({0, 1}), StateSet()}), std::invalid_argument);

    CHECK(Partition::singletons(3).n_blocks() == 3);
    CHECK(Partition::trivial(3).n_blocks() == 1);
    CHECK(Partition::from_labels({0, 1, 0, 1}) ==
          Partition(4, {StateSet({0, 2}), StateSet({1, 3})}));
}

TEST_CASE("priors demand full support and exact normalization") {
    Prior p({Rat(1, 4), Rat(1, 2), Rat(1, 4)});
    CHECK(p[1] == Rat(1, 2));
    CHECK(p.mass_of(StateSet({0, 2})) == Rat(1, 2));
    CHECK(Prior::uniform(4)[3] == Rat(1, 4));
    CHECK_THROWS_AS(Prior({Rat(1, 2), Rat(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(Prior({Rat(1), Rat(0)}), std::invalid_argument);
    CHECK_THROWS_AS(Prior({Rat(3, 2), Rat(-1, 2)}), std::invalid_argument);
}

TEST_CASE("rational parsing and formatting round-trip") {
    CHECK(parse_rat("1/3") == Rat(1, 3));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("2/4") == Rat(1, 2));
    CHECK(format_rat(Rat(-1, 3)) == "-1/3");
    CHECK(format_rat(Rat(5)) == "5");
    CHECK(format_rat(parse_rat("22/7")) == "22/7");
    CHECK_THROWS_AS(parse_rat("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
    CHECK(midpoint(Rat(1, 3), Rat(2, 3)) == Rat(1, 2));
    CHECK(to_double(Rat(1, 2)) == doctest::Approx(0.5));
}

TEST_CASE("securities shift and negate exactly") {
    Security x{{Rat(1), Rat(-1), Rat(2)}};
    CHECK(x.n_states() == 3);
    CHECK(negate(x).payoff == std::vector<Rat>{Rat(-1), Rat(1), Rat(-2)});
    CHECK(shift(x, Rat(1, 2)).payoff == std::vector<Rat>{Rat(1, 2), Rat(-3, 2), Rat(3, 2)});
    CHECK(constant_security(2, Rat(7)).payoff == std::vector<Rat>{Rat(7), Rat(7)});
}

TEST_CASE("models cross-check the sizes of their parts") {
    StateSpace space({"x", "y"});
    std::vector<Partition> parts{Partition::trivial(2), Partition::singletons(2)};
    std::vector<Prior> priors{Prior::uniform(2), Prior::uniform(2)};
    Model m(space, {"a", "b"}, parts, priors);
    CHECK(m.n_states() == 2);
    CHECK(m.n_agents() == 2);
    CHECK(m.agent_id(1) == "b");
    CHECK(m.agent_index_of("a") == 0);
    CHECK_THROWS_AS(m.agent_index_of("zz"), std::invalid_argument);
    CHECK_THROWS_AS(Model(space, {"a"}, parts, priors), std::invalid_argument);
    CHECK_THROWS_AS(Model(space, {"a", "a"}, parts, priors), std::invalid_argument);
    CHECK_THROWS_AS(Model(space, {"a", "b"}, {Partition::trivial(3), Partition::trivial(3)},
                          priors),
                    std::invalid_argument);

    Model generated = make_model({Partition::trivial(2), Partition::singletons(2)},
                                 {Prior::uniform(2), Prior::uniform(2)});
    CHECK(generated.space().ids() == std::vector<std::string>{"w1", "w2"});
    CHECK(generated.agents() == std::vector<std::string>{"1", "2"});
}

TEST_CASE("restriction renormalizes priors and trims partitions") {
    Model m = make_model({Partition(3, {StateSet({0, 1}), StateSet({2})}),
                          Partition(3, {StateSet({0}), StateSet({1, 2})})},
                         {Prior({Rat(1, 2), Rat(1, 4), Rat(1, 4)}),
                          Prior({Rat(1, 3), Rat(1, 3), Rat(1, 3)})});
    StateSet event({0, 1});
    Model sub = restrict_model(m, event);
    CHECK(sub.n_states() == 2);
    CHECK(sub.space().ids() == std::vector<std::string>{"w1", "w2"});
    CHECK(sub.partition(0) == Partition::trivial(2));
    CHECK(sub.partition(1) == Partition::singletons(2));
    CHECK(sub.prior(0)[0] == Rat(2, 3));
    CHECK(sub.prior(0)[1] == Rat(1, 3));
    CHECK(sub.prior(1)[0] == Rat(1, 2));
    CHECK_THROWS_AS(restrict_model(m, StateSet()), std::invalid_argument);

    Security x{{Rat(5), Rat(6), Rat(7)}};
    CHECK(restrict_security(x, StateSet({0, 2})).payoff == std::vector<Rat>{Rat(5), Rat(7)});
}
