#pragma once

// Reference implementations used only by tests. Each recomputes a library
// answer from the raw definition by a different algorithm: fixed-point
// iteration instead of union-find, subset scans instead of incremental
// merging, explicit cell-pair scans instead of interval intersection. Most
// are exponential or quadratic where the library is linear; keep them on
// small state spaces.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <notrade/epistemic.hpp>
#include <notrade/model.hpp>

namespace notrade::oracles {

// "Everyone knows E": the states of E whose every cell sits inside E.
inline StateSet everyone_knows(const PartitionProfile& profile, const StateSet& event) {
    std::vector<StateIdx> members;
    for (StateIdx s : event) {
        bool all = true;
        for (AgentIdx a = 0; a < profile.n_agents() && all; ++a)
            all = cell(profile, a, s).subset_of(event);
        if (all) members.push_back(s);
    }
    return StateSet(std::move(members));
}

// Common knowledge as the greatest fixed point of "everyone knows" below the
// event, decided without touching reachability.
inline bool common_knowledge_fixed_point(const PartitionProfile& profile, StateIdx state,
                                         const StateSet& event) {
    StateSet current = event;
    while (true) {
        StateSet next = everyone_knows(profile, current);
        if (next == current) break;
        current = next;
    }
    return current.contains(state);
}

// Smallest self-evident event containing the state, by scanning all 2^n - 1
// candidate subsets. Ω itself is self-evident, so a minimum exists.
inline StateSet reach_by_subset_scan(const PartitionProfile& profile, StateIdx state) {
    int n = profile.n_states;
    std::optional<StateSet> best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & (1u << state))) continue;
        std::vector<StateIdx> members;
        for (StateIdx s = 0; s < n; ++s)
            if (mask & (1u << s)) members.push_back(s);
        StateSet candidate(std::move(members));
        if (!is_self_evident(profile, candidate)) continue;
        if (!best || candidate.size() < best->size()) best = candidate;
    }
    return *best;
}

// Level-set route: some agent's cell lies inside {w : X(w) = v} for some v.
inline bool verifiable_at_by_level_sets(const PartitionProfile& profile, const Security& X,
                                        StateIdx state) {
    for (AgentIdx a = 0; a < profile.n_agents(); ++a) {
        const StateSet& c = cell(profile, a, state);
        for (StateIdx pivot = 0; pivot < profile.n_states; ++pivot) {
            std::vector<StateIdx> level;
            for (StateIdx w = 0; w < profile.n_states; ++w)
                if (X[w] == X[pivot]) level.push_back(w);
            if (c.subset_of(StateSet(std::move(level)))) return true;
        }
    }
    return false;
}

// Some agent's cell inside the component is constantly the component's
// maximum (or minimum) payoff; every (agent, member state) pair is scanned.
inline bool maxmin_at_by_cell_scan(const PartitionProfile& profile, const Security& X,
                                   StateIdx state) {
    StateSet component = reach_by_subset_scan(profile, state);
    Rat lo = X[component.first()];
    Rat hi = lo;
    for (StateIdx w : component) {
        lo = std::min(lo, X[w]);
        hi = std::max(hi, X[w]);
    }
    for (AgentIdx a = 0; a < profile.n_agents(); ++a)
        for (StateIdx w : component) {
            const StateSet& c = cell(profile, a, w);
            bool all_hi = true;
            bool all_lo = true;
            for (StateIdx v : c) {
                all_hi = all_hi && X[v] == hi;
                all_lo = all_lo && X[v] == lo;
            }
            if (all_hi || all_lo) return true;
        }
    return false;
}

// Definition-style route for threshold verifiability: the payoff is constant
// on the component, or some agent owns two cells there with max X on one
// strictly below min X on the other. Scans every ordered cell pair instead
// of intersecting intervals.
inline bool threshold_at_by_pair_scan(const PartitionProfile& profile, const Security& X,
                                      StateIdx state) {
    StateSet component = reach_by_subset_scan(profile, state);
    bool constant = true;
    for (StateIdx w : component) constant = constant && X[w] == X[component.first()];
    if (constant) return true;

    for (AgentIdx a = 0; a < profile.n_agents(); ++a) {
        std::set<int> seen;
        std::vector<const StateSet*> cells;
        for (StateIdx w : component) {
            int block = profile.partitions[static_cast<std::size_t>(a)].block_index_of(w);
            if (seen.insert(block).second)
                cells.push_back(&profile.partitions[static_cast<std::size_t>(a)]
                                     .blocks()[static_cast<std::size_t>(block)]);
        }
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (i == j) continue;
                Rat max_i = X[cells[i]->first()];
                for (StateIdx v : *cells[i]) max_i = std::max(max_i, X[v]);
                Rat min_j = X[cells[j]->first()];
                for (StateIdx v : *cells[j]) min_j = std::min(min_j, X[v]);
                if (max_i < min_j) return true;
            }
    }
    return false;
}

// Joint-cell route for collective verifiability at every state.
inline bool collectively_verifiable_by_joint_cells(const PartitionProfile& profile,
                                                   const Security& X) {
    for (StateIdx s = 0; s < profile.n_states; ++s) {
        StateSet joint = cell(profile, 0, s);
        for (AgentIdx a = 1; a < profile.n_agents(); ++a)
            joint = joint.intersect(cell(profile, a, s));
        for (StateIdx w : joint)
            if (X[w] != X[joint.first()]) return false;
    }
    return true;
}

}  // namespace notrade::oracles
