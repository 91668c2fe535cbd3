#include "notrade/epistemic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace notrade {

namespace {

// Plain union-find over state indices.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

UnionFind join_blocks(const PartitionProfile& profile) {
    UnionFind uf(profile.n_states);
    for (const Partition& partition : profile.partitions) {
        for (const StateSet& block : partition.blocks()) {
            StateIdx anchor = block.first();
            for (StateIdx s : block) uf.unite(anchor, s);
        }
    }
    return uf;
}

}  // namespace

const StateSet& cell(const PartitionProfile& profile, AgentIdx agent, StateIdx state) {
    return profile.partitions.at(static_cast<std::size_t>(agent)).block_containing(state);
}

const StateSet& cell(const Model& model, AgentIdx agent, StateIdx state) {
    return model.partition(agent).block_containing(state);
}

bool knows(const Model& model, AgentIdx agent, const StateSet& event, StateIdx state) {
    return cell(model, agent, state).subset_of(event);
}

StateSet reach(const PartitionProfile& profile, StateIdx state) {
    if (state < 0 || state >= profile.n_states)
        throw std::invalid_argument("state index out of range");
    UnionFind uf = join_blocks(profile);
    int root = uf.find(state);
    std::vector<StateIdx> members;
    for (StateIdx s = 0; s < profile.n_states; ++s)
        if (uf.find(s) == root) members.push_back(s);
    return StateSet(std::move(members));
}

StateSet reach(const Model& model, StateIdx state) { return reach(model.profile(), state); }

std::vector<StateSet> reach_partition(const PartitionProfile& profile) {
    UnionFind uf = join_blocks(profile);
    std::vector<std::vector<StateIdx>> groups(static_cast<std::size_t>(profile.n_states));
    for (StateIdx s = 0; s < profile.n_states; ++s)
        groups[static_cast<std::size_t>(uf.find(s))].push_back(s);
    std::vector<StateSet> components;
    for (auto& g : groups)
        if (!g.empty()) components.emplace_back(std::move(g));
    return components;
}

bool is_common_knowledge(const Model& model, const StateSet& event, StateIdx state) {
    return reach(model, state).subset_of(event);
}

std::vector<const StateSet*> blocks_within(const PartitionProfile& profile, AgentIdx agent,
                                           const StateSet& event) {
    std::vector<const StateSet*> out;
    const Partition& partition = profile.partitions.at(static_cast<std::size_t>(agent));
    for (const StateSet& block : partition.blocks())
        if (event.contains(block.first())) out.push_back(&block);
    return out;
}

Rat conditional_expectation(const Prior& prior, const Security& security, const StateSet& event) {
    if (event.empty()) throw std::logic_error("conditional expectation on an empty event");
    Rat mass = 0;
    Rat weighted = 0;
    for (StateIdx s : event) {
        mass += prior[s];
        weighted += prior[s] * security.payoff.at(static_cast<std::size_t>(s));
    }
    Rat result = weighted / mass;
    return result;
}

Rat expectation(const Model& model, const Security& security, AgentIdx agent, StateIdx state) {
    return conditional_expectation(model.prior(agent), security, cell(model, agent, state));
}

ValueSummary values_on(const Security& security, const StateSet& event) {
    if (event.empty()) throw std::logic_error("value summary of an empty event");
    std::vector<Rat> values;
    values.reserve(event.size());
    for (StateIdx s : event) values.push_back(security.payoff.at(static_cast<std::size_t>(s)));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    ValueSummary summary;
    summary.min = values.front();
    summary.max = values.back();
    summary.values = std::move(values);
    return summary;
}

bool is_self_evident(const PartitionProfile& profile, const StateSet& event) {
    for (StateIdx s : event)
        for (AgentIdx i = 0; i < profile.n_agents(); ++i)
            if (!cell(profile, i, s).subset_of(event)) return false;
    return true;
}

}  // namespace notrade
