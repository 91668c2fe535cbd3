#include "notrade/multi_security.hpp"

#include <stdexcept>

#include "notrade/epistemic.hpp"

namespace notrade {

namespace {

void validate_shape(const PartitionProfile& profile, const SecurityBundle& bundle) {
    if (bundle.n_agents() != profile.n_agents())
        throw std::invalid_argument("bundle has " + std::to_string(bundle.n_agents()) +
                                    " securities for " + std::to_string(profile.n_agents()) +
                                    " agents");
    for (const Security& security : bundle.securities)
        if (static_cast<int>(security.payoff.size()) != profile.n_states)
            throw std::invalid_argument("bundle security payoff length does not match the state space");
}

std::optional<StateIdx> sum_zero_violation(const SecurityBundle& bundle, int n_states) {
    for (StateIdx s = 0; s < n_states; ++s) {
        Rat total = 0;
        for (const Security& security : bundle.securities)
            total += security.payoff[static_cast<std::size_t>(s)];
        if (total != 0) return s;
    }
    return std::nullopt;
}

// Detection without the tradability gate, for judging degenerate bundles.
std::optional<MultiTradeReport> detect_unchecked(const Model& model, const SecurityBundle& bundle,
                                                 StateIdx state) {
    StateSet component = reach(model, state);
    std::vector<Rat> profits;
    profits.reserve(bundle.securities.size());
    for (AgentIdx i = 0; i < model.profile().n_agents(); ++i) {
        const Security& own = bundle.securities[static_cast<std::size_t>(i)];
        auto blocks = blocks_within(model.profile(), i, component);
        Rat value = conditional_expectation(model.prior(i), own, *blocks.front());
        for (std::size_t b = 1; b < blocks.size(); ++b)
            if (conditional_expectation(model.prior(i), own, *blocks[b]) != value)
                return std::nullopt;
        if (!(value > 0)) return std::nullopt;
        profits.push_back(std::move(value));
    }
    MultiTradeReport report;
    report.state = state;
    report.profits = std::move(profits);
    return report;
}

FeasibleSet clamp_positive(FeasibleSet set) {
    if (set.empty) return set;
    if (set.upper <= 0) {
        set.empty = true;
        return set;
    }
    if (set.lower < 0) {
        set.lower = 0;
        set.lower_open = true;
    } else if (set.lower == 0) {
        set.lower_open = true;
    }
    set.empty =
        set.lower > set.upper || (set.lower == set.upper && (set.lower_open || set.upper_open));
    return set;
}

}  // namespace

TradabilityVerdict is_tradable(const SecurityBundle& bundle, const Model& model) {
    validate_shape(model.profile(), bundle);
    TradabilityVerdict verdict;
    if (auto s = sum_zero_violation(bundle, model.profile().n_states)) {
        verdict.sum_violation = *s;
        verdict.reason = "payoffs do not sum to zero at state index " + std::to_string(*s);
        return verdict;
    }
    for (AgentIdx i = 0; i < model.profile().n_agents(); ++i) {
        const Security& own = bundle.securities[static_cast<std::size_t>(i)];
        for (const StateSet& block : model.partition(i).blocks()) {
            if (!(values_on(own, block).max > 0)) {
                verdict.max_violation = {i, block.first()};
                verdict.reason = "agent " + std::to_string(i + 1) +
                                 " sees no positive payoff on the cell at state index " +
                                 std::to_string(block.first());
                return verdict;
            }
        }
    }
    verdict.tradable = true;
    verdict.reason = "tradable";
    return verdict;
}

std::optional<MultiTradeReport> detect_ck_trade_multi(const Model& model,
                                                      const SecurityBundle& bundle,
                                                      StateIdx state) {
    TradabilityVerdict verdict = is_tradable(bundle, model);
    if (!verdict.tradable)
        throw std::invalid_argument("bundle is not tradable: " + verdict.reason);
    return detect_unchecked(model, bundle, state);
}

SplitResult split_security(const Security& security,
                           const std::vector<RankedExpectation>& ranked) {
    const int n = static_cast<int>(ranked.size());
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("split needs an even number of agents, got " +
                                    std::to_string(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const RankedExpectation& r : ranked) {
        if (r.agent < 0 || r.agent >= n)
            throw std::invalid_argument("ranking names unknown agent index " +
                                        std::to_string(r.agent));
        if (seen[static_cast<std::size_t>(r.agent)])
            throw std::invalid_argument("agent " + std::to_string(r.agent + 1) +
                                        " appears twice in the ranking");
        seen[static_cast<std::size_t>(r.agent)] = true;
    }
    for (int k = 0; k + 1 < n; ++k)
        if (ranked[static_cast<std::size_t>(k)].value < ranked[static_cast<std::size_t>(k + 1)].value)
            throw std::invalid_argument("expectations must be ranked in non-increasing order");
    const Rat& above = ranked[static_cast<std::size_t>(n / 2 - 1)].value;
    const Rat& below = ranked[static_cast<std::size_t>(n / 2)].value;
    if (!(above > below)) throw std::invalid_argument("tied expectations at the split point");

    SplitResult result;
    result.price = midpoint(below, above);
    Security long_side = shift(security, result.price);  // X - p
    Security short_side = negate(long_side);
    result.bundle.securities.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        result.bundle.securities[static_cast<std::size_t>(ranked[static_cast<std::size_t>(k)].agent)] =
            k < n / 2 ? long_side : short_side;
    return result;
}

MultiThresholdVerdict is_threshold_verifiable_multi(const PartitionProfile& profile,
                                                    const SecurityBundle& bundle,
                                                    StateIdx state) {
    validate_shape(profile, bundle);
    StateSet component = reach(profile, state);
    MultiThresholdVerdict verdict;

    bool all_constant = true;
    for (const Security& security : bundle.securities)
        if (!values_on(security, component).constant()) {
            all_constant = false;
            break;
        }
    if (all_constant) {
        verdict.holds = true;
        verdict.constant_case = true;
        return verdict;
    }

    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        const Security& own = bundle.securities[static_cast<std::size_t>(i)];
        const StateSet* low_block = nullptr;
        const StateSet* high_block = nullptr;
        Rat low_max;
        Rat high_min;
        for (const StateSet* block : blocks_within(profile, i, component)) {
            ValueSummary summary = values_on(own, *block);
            if (!low_block || summary.max < low_max) {
                low_block = block;
                low_max = summary.max;
            }
            if (!high_block || summary.min > high_min) {
                high_block = block;
                high_min = summary.min;
            }
        }
        if (low_max < high_min) {
            verdict.holds = true;
            verdict.agent = i;
            verdict.cells = {low_block->first(), high_block->first()};
            verdict.threshold = midpoint(low_max, high_min);
            return verdict;
        }
    }
    return verdict;
}

MultiThresholdVerdict is_threshold_verifiable_multi(const Model& model,
                                                    const SecurityBundle& bundle,
                                                    StateIdx state) {
    return is_threshold_verifiable_multi(model.profile(), bundle, state);
}

std::vector<FeasibleSet> feasible_profits(const PartitionProfile& profile,
                                          const SecurityBundle& bundle, StateIdx state) {
    validate_shape(profile, bundle);
    std::vector<FeasibleSet> sets;
    sets.reserve(bundle.securities.size());
    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        const Security& own = bundle.securities[static_cast<std::size_t>(i)];
        FeasibleSet base =
            feasible_expectations(profile, own, state)[static_cast<std::size_t>(i)];
        sets.push_back(clamp_positive(std::move(base)));
    }
    return sets;
}

TradePossibility ck_trade_possible_multi(const PartitionProfile& profile,
                                         const SecurityBundle& bundle, StateIdx state) {
    TradePossibility result;
    result.sets = feasible_profits(profile, bundle, state);
    for (const FeasibleSet& set : result.sets) {
        if (set.empty) {
            result.reason = "agent " + std::to_string(set.agent + 1) +
                            " cannot hold one strictly positive expected profit across their cells";
            return result;
        }
    }
    result.possible = true;
    result.reason = "positive profits are achievable for everyone";
    return result;
}

SynthesisResult synthesize_positive_profit_priors(const PartitionProfile& profile,
                                                  const SecurityBundle& bundle, StateIdx state) {
    TradePossibility possibility = ck_trade_possible_multi(profile, bundle, state);
    if (!possibility.possible) {
        SynthesisResult result;
        result.feasible = std::move(possibility.sets);
        result.reason = std::move(possibility.reason);
        return result;
    }
    const int n = profile.n_agents();
    SynthesizedPriors out;
    out.targets.resize(static_cast<std::size_t>(n));
    for (AgentIdx i = 0; i < n; ++i) {
        const FeasibleSet& set = possibility.sets[static_cast<std::size_t>(i)];
        Rat target = set.is_point()
                         ? set.lower
                         : set.lower + (set.upper - set.lower) * Rat(i + 1, n + 1);
        out.priors.push_back(synthesize_agent_prior(
            profile, bundle.securities[static_cast<std::size_t>(i)], state, i, target));
        out.targets[static_cast<std::size_t>(i)] = std::move(target);
        std::size_t n_blocks = profile.partitions[static_cast<std::size_t>(i)].blocks().size();
        out.cell_weights.emplace_back(n_blocks, Rat(1) / static_cast<int>(n_blocks));
    }
    SynthesisResult result;
    result.feasible = std::move(possibility.sets);
    result.priors = std::move(out);
    return result;
}

PropositionVerdict verify_proposition_on(const PartitionProfile& profile,
                                         const SecurityBundle& bundle, StateIdx state) {
    validate_shape(profile, bundle);
    if (auto s = sum_zero_violation(bundle, profile.n_states))
        throw std::invalid_argument("bundle payoffs do not sum to zero at state index " +
                                    std::to_string(*s));

    PropositionVerdict verdict;
    verdict.state = state;
    verdict.threshold_verifiable = is_threshold_verifiable_multi(profile, bundle, state).holds;
    TradePossibility possibility = ck_trade_possible_multi(profile, bundle, state);
    verdict.trade_possible = possibility.possible;
    verdict.holds = verdict.threshold_verifiable != verdict.trade_possible;
    if (possibility.possible) {
        SynthesisResult synthesis = synthesize_positive_profit_priors(profile, bundle, state);
        if (!synthesis.ok()) {
            verdict.synthesis_confirmed = false;
        } else {
            Model model = make_model(profile.partitions, synthesis.priors->priors);
            verdict.report = detect_unchecked(model, bundle, state);
            verdict.synthesis_confirmed = verdict.report.has_value();
        }
        verdict.holds = verdict.holds && verdict.synthesis_confirmed;
    }
    return verdict;
}

}  // namespace notrade
