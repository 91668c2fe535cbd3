#pragma once

#include "notrade/rational.hpp"

#include <string>
#include <vector>

namespace notrade {

using StateIdx = int;
using AgentIdx = int;

// An event: a set of states, kept sorted in canonical state order.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::vector<StateIdx> members);

    static StateSet full(int n_states);
    static StateSet single(StateIdx state);

    bool contains(StateIdx state) const;
    bool subset_of(const StateSet& other) const;
    StateSet intersect(const StateSet& other) const;
    StateSet unite(const StateSet& other) const;

    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    StateIdx first() const;

    const std::vector<StateIdx>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const StateSet&) const = default;

private:
    std::vector<StateIdx> members_;
};

// Ordered list of state identifiers; the order is canonical everywhere
// (iteration, witnesses, serialization).
class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> ids);

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& id(StateIdx state) const;
    StateIdx index_of(std::string_view id) const;  // throws on unknown id
    const std::vector<std::string>& ids() const { return ids_; }

    bool operator==(const StateSpace&) const = default;

private:
    std::vector<std::string> ids_;
};

// Partition of {0, .., n_states-1}: disjoint non-empty blocks covering the
// space. Blocks are stored in canonical order (by smallest member).
class Partition {
public:
    Partition(int n_states, std::vector<StateSet> blocks);

    static Partition singletons(int n_states);
    static Partition trivial(int n_states);
    // block_of[s] = arbitrary block label per state (restricted-growth style).
    static Partition from_labels(const std::vector<int>& block_of);

    int n_states() const { return static_cast<int>(block_of_.size()); }
    int n_blocks() const { return static_cast<int>(blocks_.size()); }
    const StateSet& block_containing(StateIdx state) const;
    int block_index_of(StateIdx state) const;
    const std::vector<StateSet>& blocks() const { return blocks_; }

    bool operator==(const Partition&) const = default;

private:
    std::vector<StateSet> blocks_;
    std::vector<int> block_of_;
};

// Full-support prior: strictly positive mass per state, summing to exactly 1.
class Prior {
public:
    explicit Prior(std::vector<Rat> mass);

    static Prior uniform(int n_states);

    const Rat& operator[](StateIdx state) const { return mass_[static_cast<size_t>(state)]; }
    int n_states() const { return static_cast<int>(mass_.size()); }
    Rat mass_of(const StateSet& event) const;
    const std::vector<Rat>& mass() const { return mass_; }

    bool operator==(const Prior&) const = default;

private:
    std::vector<Rat> mass_;
};

// A security pays an exact rational at every state.
struct Security {
    std::vector<Rat> payoff;

    const Rat& operator[](StateIdx state) const { return payoff[static_cast<size_t>(state)]; }
    int n_states() const { return static_cast<int>(payoff.size()); }

    bool operator==(const Security&) const = default;
};

Security constant_security(int n_states, const Rat& value);
Security negate(const Security& security);
Security shift(const Security& security, const Rat& offset);  // X - offset

// The prior-free part of a model: one partition per agent. Verifiability,
// feasible expectations and the trade-possibility oracle only ever see this.
struct PartitionProfile {
    int n_states = 0;
    std::vector<Partition> partitions;

    int n_agents() const { return static_cast<int>(partitions.size()); }

    bool operator==(const PartitionProfile&) const = default;
};

// A finite partition model of asymmetric information. Immutable after
// construction and validated on construction; safe to share across threads.
class Model {
public:
    Model(StateSpace space, std::vector<std::string> agents,
          std::vector<Partition> partitions, std::vector<Prior> priors);

    const StateSpace& space() const { return space_; }
    int n_states() const { return space_.size(); }
    int n_agents() const { return static_cast<int>(agents_.size()); }
    const std::vector<std::string>& agents() const { return agents_; }
    const std::string& agent_id(AgentIdx agent) const;
    AgentIdx agent_index_of(std::string_view id) const;  // throws on unknown id

    const PartitionProfile& profile() const { return profile_; }
    const Partition& partition(AgentIdx agent) const;
    const Prior& prior(AgentIdx agent) const;
    const std::vector<Prior>& priors() const { return priors_; }

    bool operator==(const Model&) const = default;

private:
    StateSpace space_;
    std::vector<std::string> agents_;
    PartitionProfile profile_;
    std::vector<Prior> priors_;
};

// Canonical ids for generated instances: states "w1".."wn", agents "1".."k".
std::vector<std::string> default_state_ids(int n_states);
std::vector<std::string> default_agent_ids(int n_agents);
Model make_model(std::vector<Partition> partitions, std::vector<Prior> priors);

// Restriction to a non-empty event: states renamed nothing, partitions
// intersected, priors renormalized (full support is preserved).
Model restrict_model(const Model& model, const StateSet& event);
Security restrict_security(const Security& security, const StateSet& event);

}  // namespace notrade
