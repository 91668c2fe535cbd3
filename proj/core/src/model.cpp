#include "notrade/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace notrade {

namespace {

[[noreturn]] void input_error(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

// ---------------------------------------------------------------- StateSet

StateSet::StateSet(std::vector<StateIdx> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

StateSet StateSet::full(int n_states) {
    std::vector<StateIdx> all(static_cast<size_t>(n_states));
    std::iota(all.begin(), all.end(), 0);
    StateSet set;
    set.members_ = std::move(all);
    return set;
}

StateSet StateSet::single(StateIdx state) {
    StateSet set;
    set.members_ = {state};
    return set;
}

bool StateSet::contains(StateIdx state) const {
    return std::binary_search(members_.begin(), members_.end(), state);
}

bool StateSet::subset_of(const StateSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
}

StateSet StateSet::intersect(const StateSet& other) const {
    StateSet out;
    std::set_intersection(members_.begin(), members_.end(),
                          other.members_.begin(), other.members_.end(),
                          std::back_inserter(out.members_));
    return out;
}

StateSet StateSet::unite(const StateSet& other) const {
    StateSet out;
    std::set_union(members_.begin(), members_.end(),
                   other.members_.begin(), other.members_.end(),
                   std::back_inserter(out.members_));
    return out;
}

StateIdx StateSet::first() const {
    if (members_.empty()) input_error("empty state set has no first element");
    return members_.front();
}

// --------------------------------------------------------------- StateSpace

StateSpace::StateSpace(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) input_error("state space must contain at least one state");
    std::set<std::string> seen;
    for (const auto& id : ids_) {
        if (id.empty()) input_error("state identifiers must be non-empty");
        if (!seen.insert(id).second) input_error("duplicate state identifier '" + id + "'");
    }
}

const std::string& StateSpace::id(StateIdx state) const {
    if (state < 0 || state >= size()) input_error("state index out of range");
    return ids_[static_cast<size_t>(state)];
}

StateIdx StateSpace::index_of(std::string_view id) const {
    for (size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == id) return static_cast<StateIdx>(i);
    input_error("unknown state identifier '" + std::string(id) + "'");
}

// ---------------------------------------------------------------- Partition

Partition::Partition(int n_states, std::vector<StateSet> blocks)
    : blocks_(std::move(blocks)), block_of_(static_cast<size_t>(n_states), -1) {
    std::sort(blocks_.begin(), blocks_.end(), [](const StateSet& a, const StateSet& b) {
        return a.first() < b.first();
    });
    for (size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].empty()) input_error("partition blocks must be non-empty");
        for (StateIdx s : blocks_[b]) {
            if (s < 0 || s >= n_states) input_error("partition block references unknown state");
            if (block_of_[static_cast<size_t>(s)] != -1)
                input_error("partition blocks overlap at state index " + std::to_string(s));
            block_of_[static_cast<size_t>(s)] = static_cast<int>(b);
        }
    }
    for (int s = 0; s < n_states; ++s)
        if (block_of_[static_cast<size_t>(s)] == -1)
            input_error("partition blocks do not cover state index " + std::to_string(s));
}

Partition Partition::singletons(int n_states) {
    std::vector<StateSet> blocks;
    blocks.reserve(static_cast<size_t>(n_states));
    for (int s = 0; s < n_states; ++s) blocks.push_back(StateSet::single(s));
    return Partition(n_states, std::move(blocks));
}

Partition Partition::trivial(int n_states) {
    return Partition(n_states, {StateSet::full(n_states)});
}

Partition Partition::from_labels(const std::vector<int>& block_of) {
    std::unordered_map<int, std::vector<StateIdx>> by_label;
    for (size_t s = 0; s < block_of.size(); ++s)
        by_label[block_of[s]].push_back(static_cast<StateIdx>(s));
    std::vector<StateSet> blocks;
    blocks.reserve(by_label.size());
    for (auto& [label, members] : by_label) blocks.emplace_back(std::move(members));
    return Partition(static_cast<int>(block_of.size()), std::move(blocks));
}

const StateSet& Partition::block_containing(StateIdx state) const {
    return blocks_[static_cast<size_t>(block_index_of(state))];
}

int Partition::block_index_of(StateIdx state) const {
    if (state < 0 || state >= n_states()) input_error("state index out of range");
    return block_of_[static_cast<size_t>(state)];
}

// -------------------------------------------------------------------- Prior

Prior::Prior(std::vector<Rat> mass) : mass_(std::move(mass)) {
    if (mass_.empty()) input_error("prior must cover at least one state");
    Rat total = 0;
    for (size_t s = 0; s < mass_.size(); ++s) {
        if (mass_[s] <= 0)
            input_error("prior mass must be strictly positive at every state (full support)");
        total += mass_[s];
    }
    if (total != 1)
        input_error("prior masses must sum to exactly 1, got " + format_rat(total));
}

Prior Prior::uniform(int n_states) {
    return Prior(std::vector<Rat>(static_cast<size_t>(n_states), Rat(1, n_states)));
}

Rat Prior::mass_of(const StateSet& event) const {
    Rat total = 0;
    for (StateIdx s : event) total += mass_[static_cast<size_t>(s)];
    return total;
}

// ----------------------------------------------------------------- Security

Security constant_security(int n_states, const Rat& value) {
    return Security{std::vector<Rat>(static_cast<size_t>(n_states), value)};
}

Security negate(const Security& security) {
    Security out = security;
    for (auto& v : out.payoff) v = -v;
    return out;
}

Security shift(const Security& security, const Rat& offset) {
    Security out = security;
    for (auto& v : out.payoff) v -= offset;
    return out;
}

// -------------------------------------------------------------------- Model

Model::Model(StateSpace space, std::vector<std::string> agents,
             std::vector<Partition> partitions, std::vector<Prior> priors)
    : space_(std::move(space)), agents_(std::move(agents)), priors_(std::move(priors)) {
    if (agents_.empty()) input_error("model must have at least one agent");
    std::set<std::string> seen;
    for (const auto& id : agents_) {
        if (id.empty()) input_error("agent identifiers must be non-empty");
        if (!seen.insert(id).second) input_error("duplicate agent identifier '" + id + "'");
    }
    if (partitions.size() != agents_.size())
        input_error("model needs exactly one partition per agent");
    if (priors_.size() != agents_.size())
        input_error("model needs exactly one prior per agent");
    for (const auto& p : partitions)
        if (p.n_states() != space_.size())
            input_error("partition does not match the state space size");
    for (const auto& p : priors_)
        if (p.n_states() != space_.size())
            input_error("prior does not match the state space size");
    profile_ = PartitionProfile{space_.size(), std::move(partitions)};
}

const std::string& Model::agent_id(AgentIdx agent) const {
    if (agent < 0 || agent >= n_agents()) input_error("agent index out of range");
    return agents_[static_cast<size_t>(agent)];
}

AgentIdx Model::agent_index_of(std::string_view id) const {
    for (size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i] == id) return static_cast<AgentIdx>(i);
    input_error("unknown agent identifier '" + std::string(id) + "'");
}

const Partition& Model::partition(AgentIdx agent) const {
    if (agent < 0 || agent >= n_agents()) input_error("agent index out of range");
    return profile_.partitions[static_cast<size_t>(agent)];
}

const Prior& Model::prior(AgentIdx agent) const {
    if (agent < 0 || agent >= n_agents()) input_error("agent index out of range");
    return priors_[static_cast<size_t>(agent)];
}

std::vector<std::string> default_state_ids(int n_states) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<size_t>(n_states));
    for (int s = 1; s <= n_states; ++s) ids.push_back("w" + std::to_string(s));
    return ids;
}

std::vector<std::string> default_agent_ids(int n_agents) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<size_t>(n_agents));
    for (int a = 1; a <= n_agents; ++a) ids.push_back(std::to_string(a));
    return ids;
}

Model make_model(std::vector<Partition> partitions, std::vector<Prior> priors) {
    if (partitions.empty()) input_error("need at least one partition");
    int n_states = partitions.front().n_states();
    int n_agents = static_cast<int>(partitions.size());
    return Model(StateSpace(default_state_ids(n_states)), default_agent_ids(n_agents),
                 std::move(partitions), std::move(priors));
}

Model restrict_model(const Model& model, const StateSet& event) {
    if (event.empty()) input_error("cannot restrict a model to the empty event");
    std::vector<std::string> ids;
    std::vector<int> new_index(static_cast<size_t>(model.n_states()), -1);
    for (StateIdx s : event) {
        new_index[static_cast<size_t>(s)] = static_cast<int>(ids.size());
        ids.push_back(model.space().id(s));
    }
    int n = static_cast<int>(ids.size());

    std::vector<Partition> partitions;
    std::vector<Prior> priors;
    for (AgentIdx a = 0; a < model.n_agents(); ++a) {
        std::vector<StateSet> blocks;
        for (const StateSet& block : model.partition(a).blocks()) {
            std::vector<StateIdx> members;
            for (StateIdx s : block)
                if (event.contains(s)) members.push_back(new_index[static_cast<size_t>(s)]);
            if (!members.empty()) blocks.emplace_back(std::move(members));
        }
        partitions.emplace_back(n, std::move(blocks));

        Rat total = model.prior(a).mass_of(event);
        std::vector<Rat> mass(static_cast<size_t>(n));
        for (StateIdx s : event)
            mass[static_cast<size_t>(new_index[static_cast<size_t>(s)])] = model.prior(a)[s] / total;
        priors.emplace_back(std::move(mass));
    }
    return Model(StateSpace(std::move(ids)), model.agents(), std::move(partitions),
                 std::move(priors));
}

Security restrict_security(const Security& security, const StateSet& event) {
    Security out;
    out.payoff.reserve(static_cast<size_t>(event.size()));
    for (StateIdx s : event) out.payoff.push_back(security[s]);
    return out;
}

}  // namespace notrade
