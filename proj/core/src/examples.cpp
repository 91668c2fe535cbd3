#include "notrade/examples.hpp"

namespace notrade {

namespace {

StateSet states(std::vector<StateIdx> members) { return StateSet(std::move(members)); }

std::vector<Rat> rats(std::vector<std::string> texts) {
    std::vector<Rat> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(parse_rat(t));
    return out;
}

}  // namespace

ModelDocument example_one() {
    StateSpace space({"w1", "w2", "w3", "w4"});
    std::vector<std::string> agents{"1", "2"};
    std::vector<Partition> partitions{
        Partition(4, {states({0, 1}), states({2, 3})}),
        Partition(4, {states({0, 2}), states({1, 3})}),
    };
    std::vector<Prior> priors{
        Prior(rats({"1/6", "1/3", "1/3", "1/6"})),
        Prior(rats({"1/3", "1/6", "1/6", "1/3"})),
    };
    Model model(std::move(space), agents, std::move(partitions), std::move(priors));

    ModelDocument doc{1,
                      std::move(model),
                      {{"X", Security{rats({"1", "-1", "-1", "1"})}},
                       {"Xneg", Security{rats({"-1", "1", "1", "-1"})}}},
                      {{"default", {0, 1}}},
                      {{"split0", {"Xneg", "X"}}},
                      {}};
    return doc;
}

ModelDocument example_two() {
    StateSpace space({"w1", "w2", "w3", "w4", "w5"});
    std::vector<std::string> agents{"1", "2"};
    std::vector<Partition> partitions{
        Partition(5, {states({0, 1}), states({2, 3}), states({4})}),
        Partition(5, {states({0, 2}), states({1, 3, 4})}),
    };
    std::vector<Prior> priors{
        Prior(rats({"1/12", "1/6", "1/6", "1/12", "1/2"})),
        Prior(rats({"1/6", "1/12", "1/12", "1/6", "1/2"})),
    };
    Model model(std::move(space), agents, std::move(partitions), std::move(priors));

    ModelDocument doc{1,
                      std::move(model),
                      {{"X", Security{rats({"1", "-1", "-1", "1", "5"})}}},
                      {{"default", {0, 1}}},
                      {},
                      {"p1(w4) is widely quoted as 1/2, which makes the masses sum to 17/12; "
                       "this document uses 1/12 so the prior normalizes and conditioning on "
                       "{w1..w4} reproduces example one's priors exactly.",
                       "the final announcements are sometimes quoted as 1/3 by agent 1 and "
                       "-1/3 by agent 2; recomputing from these priors gives agent 1: -1/3, "
                       "agent 2: 1/3, matching example one's expectations."}};
    return doc;
}

}  // namespace notrade
