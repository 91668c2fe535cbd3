#include <doctest.h>

#include <stdexcept>

#include <notrade/enumeration.hpp>
#include <notrade/epistemic.hpp>
#include <notrade/examples.hpp>

#include "oracles.hpp"

using namespace notrade;

namespace {

PartitionProfile profile_of(std::vector<Partition> partitions) {
    int n = partitions.front().n_states();
    return PartitionProfile{n, std::move(partitions)};
}

}  // namespace

TEST_CASE("cells and knowledge on the first example") {
    ModelDocument doc = example_one();
    const Model& m = doc.model;
    CHECK(cell(m, 0, 0) == StateSet({0, 1}));
    CHECK(cell(m, 1, 0) == StateSet({0, 2}));
    CHECK(knows(m, 0, StateSet({0, 1, 2}), 0));
    CHECK(!knows(m, 1, StateSet({0, 1}), 0));
}

TEST_CASE("reach agrees with the smallest self-evident event on every 2-agent profile") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Partition> all = all_partitions(n);
        for (const Partition& p1 : all)
            for (const Partition& p2 : all) {
                PartitionProfile profile = profile_of({p1, p2});
                for (StateIdx s = 0; s < n; ++s) {
                    CAPTURE(n);
                    CAPTURE(s);
                    REQUIRE(reach(profile, s) == oracles::reach_by_subset_scan(profile, s));
                }
            }
    }
}

TEST_CASE("reach agrees with the subset-scan oracle on random 3-agent profiles") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.between(2, 6);
        PartitionProfile profile = profile_of(
            {random_partition(rng, n), random_partition(rng, n), random_partition(rng, n)});
        StateIdx s = rng.below(n);
        REQUIRE(reach(profile, s) == oracles::reach_by_subset_scan(profile, s));
    }
}

TEST_CASE("reach_partition tiles the state space with reachable sets") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        int n = rng.between(2, 6);
        PartitionProfile profile = profile_of({random_partition(rng, n), random_partition(rng, n)});
        std::vector<StateSet> components = reach_partition(profile);
        std::vector<int> covered(static_cast<std::size_t>(n), 0);
        for (const StateSet& c : components) {
            CHECK(is_self_evident(profile, c));
            for (StateIdx s : c) {
                covered[static_cast<std::size_t>(s)] += 1;
                CHECK(reach(profile, s) == c);
            }
        }
        for (int count : covered) CHECK(count == 1);
    }
}

TEST_CASE("common knowledge matches the everyone-knows fixed point") {
    ModelDocument doc = example_two();
    const Model& m = doc.model;
    StateSet all5 = StateSet::full(5);
    CHECK(is_common_knowledge(m, all5, 0));
    CHECK(oracles::common_knowledge_fixed_point(m.profile(), 0, all5));
    StateSet front({0, 1, 2, 3});
    CHECK(!is_common_knowledge(m, front, 0));
    CHECK(!oracles::common_knowledge_fixed_point(m.profile(), 0, front));

    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.between(2, 6);
        PartitionProfile profile = profile_of({random_partition(rng, n), random_partition(rng, n)});
        std::vector<StateIdx> members;
        for (StateIdx s = 0; s < n; ++s)
            if (rng.below(2) == 0) members.push_back(s);
        StateSet event(std::move(members));
        StateIdx at = rng.below(n);
        Model m2 = make_model(profile.partitions, {Prior::uniform(n), Prior::uniform(n)});
        REQUIRE(is_common_knowledge(m2, event, at) ==
                oracles::common_knowledge_fixed_point(profile, at, event));
    }
}

TEST_CASE("conditional expectations are exact and reject the empty event") {
    Prior p({Rat(1, 6), Rat(1, 3), Rat(1, 3), Rat(1, 6)});
    Security x{{Rat(1), Rat(-1), Rat(-1), Rat(1)}};
    CHECK(conditional_expectation(p, x, StateSet::full(4)) == Rat(-1, 3));
    CHECK(conditional_expectation(p, x, StateSet({0, 1})) == Rat(-1, 3));
    CHECK(conditional_expectation(p, x, StateSet({0})) == Rat(1));
    CHECK_THROWS_AS(conditional_expectation(p, x, StateSet()), std::logic_error);

    ModelDocument doc = example_one();
    CHECK(expectation(doc.model, doc.securities.at("X"), 0, 0) == Rat(-1, 3));
    CHECK(expectation(doc.model, doc.securities.at("X"), 1, 0) == Rat(1, 3));
}

TEST_CASE("blocks_within lists each component block once, in canonical order") {
    ModelDocument doc = example_two();
    const PartitionProfile& profile = doc.model.profile();
    StateSet component = reach(profile, 0);
    CHECK(component == StateSet::full(5));
    std::vector<const StateSet*> blocks = blocks_within(profile, 0, component);
    REQUIRE(blocks.size() == 3);
    CHECK(*blocks[0] == StateSet({0, 1}));
    CHECK(*blocks[1] == StateSet({2, 3}));
    CHECK(*blocks[2] == StateSet({4}));

    std::vector<const StateSet*> partial = blocks_within(profile, 0, StateSet({2, 3}));
    REQUIRE(partial.size() == 1);
    CHECK(*partial[0] == StateSet({2, 3}));
}

TEST_CASE("values_on summarizes the payoff image") {
    Security x{{Rat(1), Rat(-1), Rat(-1), Rat(1), Rat(5)}};
    ValueSummary summary = values_on(x, StateSet::full(5));
    CHECK(summary.values == std::vector<Rat>{Rat(-1), Rat(1), Rat(5)});
    CHECK(summary.min == Rat(-1));
    CHECK(summary.max == Rat(5));
    CHECK(!summary.constant());
    CHECK(values_on(x, StateSet({1, 2})).constant());
}

TEST_CASE("self-evidence is closure under every agent's cells") {
    ModelDocument doc = example_two();
    const PartitionProfile& profile = doc.model.profile();
    CHECK(is_self_evident(profile, StateSet::full(5)));
    CHECK(!is_self_evident(profile, StateSet({0, 1, 2, 3})));
    CHECK(!is_self_evident(profile, StateSet({4})));
}
