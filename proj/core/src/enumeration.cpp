#include "notrade/enumeration.hpp"

#include <stdexcept>

#include "notrade/epistemic.hpp"

namespace notrade {

namespace {

void grow(std::vector<int>& labels, int position, int used, std::vector<Partition>& out) {
    if (position == static_cast<int>(labels.size())) {
        out.push_back(Partition::from_labels(labels));
        return;
    }
    for (int block = 0; block <= used; ++block) {
        labels[static_cast<std::size_t>(position)] = block;
        grow(labels, position + 1, block == used ? used + 1 : used, out);
    }
}

std::vector<int> labels_of(const Partition& partition) {
    std::vector<int> labels(static_cast<std::size_t>(partition.n_states()));
    for (StateIdx s = 0; s < partition.n_states(); ++s)
        labels[static_cast<std::size_t>(s)] = partition.block_index_of(s);
    return labels;
}

Security counting_security(int n_states) {
    Security security;
    security.payoff.reserve(static_cast<std::size_t>(n_states));
    for (int s = 1; s <= n_states; ++s) security.payoff.emplace_back(s);
    return security;
}

EnumerationFailure make_failure(long instance, StateIdx state,
                                const PartitionProfile& profile, bool threshold, bool possible,
                                bool confirmed) {
    EnumerationFailure failure;
    failure.instance = instance;
    failure.state = state;
    for (const Partition& partition : profile.partitions)
        failure.partition_labels.push_back(labels_of(partition));
    failure.threshold_verifiable = threshold;
    failure.trade_possible = possible;
    failure.synthesis_confirmed = confirmed;
    return failure;
}

// Odometer over one partition index per agent; returns false when exhausted.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < base) return true;
        idx[i] = 0;
    }
    return false;
}

}  // namespace

std::vector<Partition> all_partitions(int n_states) {
    if (n_states < 1) throw std::invalid_argument("need at least one state");
    std::vector<Partition> out;
    std::vector<int> labels(static_cast<std::size_t>(n_states), 0);
    grow(labels, 1, 1, out);
    return out;
}

EnumerationSummary enumerate_theorem(int n_states, int n_agents) {
    if (n_states < 1) throw std::invalid_argument("need at least one state");
    if (n_agents < 2) throw std::invalid_argument("the sweep needs at least two agents");
    Security security = counting_security(n_states);
    std::vector<Partition> partitions = all_partitions(n_states);

    EnumerationSummary summary;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_agents), 0);
    do {
        PartitionProfile profile;
        profile.n_states = n_states;
        for (std::size_t i : idx) profile.partitions.push_back(partitions[i]);
        ++summary.instances;
        for (StateIdx state = 0; state < n_states; ++state) {
            TheoremVerdict verdict = verify_theorem_on(profile, security, state);
            ++summary.checks;
            if (verdict.trade_possible) ++summary.trade_count;
            if (!verdict.holds && !summary.failure)
                summary.failure = make_failure(summary.instances - 1, state, profile,
                                               verdict.threshold_verifiable,
                                               verdict.trade_possible,
                                               verdict.synthesis_confirmed);
        }
    } while (advance(idx, partitions.size()));
    return summary;
}

EnumerationSummary enumerate_proposition(int n_states, int n_agents) {
    if (n_states < 2) throw std::invalid_argument("the bundle sweep needs at least two states");
    if (n_agents != 2)
        throw std::invalid_argument("the bundle sweep is defined for exactly two agents");
    Security security = counting_security(n_states);
    ValueSummary range = values_on(security, StateSet::full(n_states));
    std::vector<Partition> partitions = all_partitions(n_states);

    EnumerationSummary summary;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_agents), 0);
    do {
        PartitionProfile profile;
        profile.n_states = n_states;
        for (std::size_t i : idx) profile.partitions.push_back(partitions[i]);
        ++summary.instances;
        for (StateIdx state = 0; state < n_states; ++state) {
            SynthesisResult synthesis = synthesize_disagreement_priors(profile, security, state);
            std::vector<RankedExpectation> ranked;
            if (synthesis.ok()) {
                const std::vector<Rat>& k = synthesis.priors->targets;
                AgentIdx top = k[0] > k[1] ? 0 : 1;
                ranked = {{top, k[static_cast<std::size_t>(top)]},
                          {1 - top, k[static_cast<std::size_t>(1 - top)]}};
            } else {
                ranked = {{0, range.max}, {1, range.min}};
            }
            SecurityBundle bundle = split_security(security, ranked).bundle;
            PropositionVerdict verdict = verify_proposition_on(profile, bundle, state);
            ++summary.checks;
            if (verdict.trade_possible) ++summary.trade_count;
            if (!verdict.holds && !summary.failure)
                summary.failure = make_failure(summary.instances - 1, state, profile,
                                               verdict.threshold_verifiable,
                                               verdict.trade_possible,
                                               verdict.synthesis_confirmed);
        }
    } while (advance(idx, partitions.size()));
    return summary;
}

int Rng::below(int n) {
    if (n <= 0) throw std::invalid_argument("empty range");
    return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
}

int Rng::between(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    return lo + below(hi - lo + 1);
}

Partition random_partition(Rng& rng, int n_states) {
    std::vector<int> labels(static_cast<std::size_t>(n_states), 0);
    int used = 1;
    for (int s = 1; s < n_states; ++s) {
        labels[static_cast<std::size_t>(s)] = rng.below(used + 1);
        if (labels[static_cast<std::size_t>(s)] == used) ++used;
    }
    return Partition::from_labels(labels);
}

Prior random_prior(Rng& rng, int n_states) {
    std::vector<Rat> mass(static_cast<std::size_t>(n_states));
    Rat total = 0;
    for (Rat& m : mass) {
        m = rng.between(1, 20);
        total += m;
    }
    for (Rat& m : mass) m /= total;
    return Prior(std::move(mass));
}

Security random_security(Rng& rng, int n_states) {
    Security security;
    security.payoff.reserve(static_cast<std::size_t>(n_states));
    for (int s = 0; s < n_states; ++s) {
        int numerator = rng.between(-12, 12);
        int denominator = rng.between(1, 4);
        security.payoff.emplace_back(numerator, denominator);
    }
    return security;
}

Model random_model(Rng& rng, int n_states, int n_agents) {
    std::vector<Partition> partitions;
    std::vector<Prior> priors;
    for (int i = 0; i < n_agents; ++i) {
        partitions.push_back(random_partition(rng, n_states));
        priors.push_back(random_prior(rng, n_states));
    }
    return make_model(std::move(partitions), std::move(priors));
}

Model random_common_prior_model(Rng& rng, int n_states, int n_agents) {
    std::vector<Partition> partitions;
    for (int i = 0; i < n_agents; ++i) partitions.push_back(random_partition(rng, n_states));
    Prior shared = random_prior(rng, n_states);
    std::vector<Prior> priors(static_cast<std::size_t>(n_agents), shared);
    return make_model(std::move(partitions), std::move(priors));
}

std::optional<std::vector<Prior>> search_ck_trade_priors(const PartitionProfile& profile,
                                                         const Security& security,
                                                         StateIdx state, Rng& rng, int budget) {
    std::vector<FeasibleSet> sets = feasible_expectations(profile, security, state);
    bool aimed_possible = true;
    for (const FeasibleSet& set : sets) aimed_possible = aimed_possible && !set.empty;

    for (int trial = 0; trial < budget; ++trial) {
        std::vector<Prior> priors;
        if (aimed_possible && trial % 2 == 0) {
            std::vector<Rat> targets;
            targets.reserve(sets.size());
            for (const FeasibleSet& set : sets) {
                if (set.is_point()) {
                    targets.push_back(set.lower);
                } else {
                    targets.push_back(set.lower +
                                      (set.upper - set.lower) * Rat(rng.between(1, 31), 32));
                }
            }
            SynthesisResult synthesis =
                synthesize_with_targets(profile, security, state, targets);
            priors = synthesis.priors->priors;
        } else {
            for (int i = 0; i < profile.n_agents(); ++i)
                priors.push_back(random_prior(rng, profile.n_states));
        }
        Model model = make_model(profile.partitions, priors);
        if (detect_ck_trade(model, security, state)) return priors;
    }
    return std::nullopt;
}

}  // namespace notrade
