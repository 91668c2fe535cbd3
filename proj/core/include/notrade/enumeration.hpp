#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "notrade/agreement.hpp"
#include "notrade/multi_security.hpp"

namespace notrade {

// Every partition of {0, .., n_states-1}, in restricted-growth order
// (Bell(n_states) of them).
std::vector<Partition> all_partitions(int n_states);

struct EnumerationFailure {
    long instance = 0;  // position in enumeration order
    StateIdx state = 0;
    std::vector<std::vector<int>> partition_labels;  // per agent: block index per state
    bool threshold_verifiable = false;
    bool trade_possible = false;
    bool synthesis_confirmed = true;
};

struct EnumerationSummary {
    long instances = 0;
    long checks = 0;        // (instance, state) verdicts evaluated
    long trade_count = 0;   // checks where trade was possible
    std::optional<EnumerationFailure> failure;  // first one, enumeration order

    bool all_hold() const { return !failure.has_value(); }
};

// Sweeps every tuple of agent partitions with the injective security
// X = (1, .., n_states) and cross-checks threshold verifiability against the
// trade oracle at every state, confirming positives by synthesis.
EnumerationSummary enumerate_theorem(int n_states, int n_agents);

// Same sweep for zero-sum bundles built by split_security: around the
// synthesized expectations when trade is possible, around the payoff-range
// midpoint otherwise. Two agents only; n_states >= 2.
EnumerationSummary enumerate_proposition(int n_states, int n_agents);

// Deterministic generator for randomized suites. Draws use modular
// reduction on mt19937_64 output so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }
    int below(int n);             // uniform-ish over [0, n)
    int between(int lo, int hi);  // inclusive

private:
    std::mt19937_64 gen_;
};

Partition random_partition(Rng& rng, int n_states);
Prior random_prior(Rng& rng, int n_states);
Security random_security(Rng& rng, int n_states);

// Independent priors per agent.
Model random_model(Rng& rng, int n_states, int n_agents);
// One prior shared by every agent.
Model random_common_prior_model(Rng& rng, int n_states, int n_agents);

// One-sided randomized search: tries `budget` prior profiles (alternating
// unstructured draws with draws aimed at the feasible sets) and returns the
// first profile under which a common-knowledge trade fires at the state.
// A hit certifies trade is possible; a miss proves nothing.
std::optional<std::vector<Prior>> search_ck_trade_priors(const PartitionProfile& profile,
                                                         const Security& security,
                                                         StateIdx state, Rng& rng, int budget);

}  // namespace notrade
