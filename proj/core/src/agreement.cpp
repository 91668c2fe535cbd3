#include "notrade/agreement.hpp"

#include <stdexcept>

#include "notrade/epistemic.hpp"
#include "notrade/verifiability.hpp"

namespace notrade {

FeasibleSet FeasibleSet::point(AgentIdx agent, const Rat& v) {
    FeasibleSet s;
    s.agent = agent;
    s.lower = v;
    s.upper = v;
    return s;
}

FeasibleSet FeasibleSet::open_interval(AgentIdx agent, const Rat& lo, const Rat& hi) {
    FeasibleSet s;
    s.agent = agent;
    s.lower = lo;
    s.upper = hi;
    s.lower_open = true;
    s.upper_open = true;
    s.empty = !(lo < hi);
    return s;
}

FeasibleSet FeasibleSet::intersect(const FeasibleSet& other) const {
    FeasibleSet s;
    s.agent = agent;
    if (empty || other.empty) {
        s.empty = true;
        return s;
    }
    if (lower > other.lower) {
        s.lower = lower;
        s.lower_open = lower_open;
    } else if (lower < other.lower) {
        s.lower = other.lower;
        s.lower_open = other.lower_open;
    } else {
        s.lower = lower;
        s.lower_open = lower_open || other.lower_open;
    }
    if (upper < other.upper) {
        s.upper = upper;
        s.upper_open = upper_open;
    } else if (upper > other.upper) {
        s.upper = other.upper;
        s.upper_open = other.upper_open;
    } else {
        s.upper = upper;
        s.upper_open = upper_open || other.upper_open;
    }
    s.empty = s.lower > s.upper ||
              (s.lower == s.upper && (s.lower_open || s.upper_open));
    return s;
}

bool FeasibleSet::contains(const Rat& k) const {
    if (empty) return false;
    if (k < lower || (k == lower && lower_open)) return false;
    if (k > upper || (k == upper && upper_open)) return false;
    return true;
}

std::string describe(const FeasibleSet& set) {
    if (set.empty) return "empty";
    if (set.is_point()) return "{" + format_rat(set.lower) + "}";
    std::string s;
    s += set.lower_open ? '(' : '[';
    s += format_rat(set.lower) + ", " + format_rat(set.upper);
    s += set.upper_open ? ')' : ']';
    return s;
}

std::optional<CKTradeReport> detect_ck_trade(const Model& model, const Security& security,
                                             StateIdx state) {
    StateSet component = reach(model, state);
    const int n = model.profile().n_agents();
    std::vector<Rat> expectations;
    expectations.reserve(static_cast<std::size_t>(n));
    for (AgentIdx i = 0; i < n; ++i) {
        auto blocks = blocks_within(model.profile(), i, component);
        Rat value = conditional_expectation(model.prior(i), security, *blocks.front());
        for (std::size_t b = 1; b < blocks.size(); ++b)
            if (conditional_expectation(model.prior(i), security, *blocks[b]) != value)
                return std::nullopt;  // the expectation event is not common knowledge
        expectations.push_back(std::move(value));
    }
    for (AgentIdx i = 0; i < n; ++i)
        for (AgentIdx j = i + 1; j < n; ++j)
            if (expectations[static_cast<std::size_t>(i)] !=
                expectations[static_cast<std::size_t>(j)]) {
                CKTradeReport report;
                report.state = state;
                report.expectations = std::move(expectations);
                report.agent_i = i;
                report.agent_j = j;
                return report;
            }
    return std::nullopt;
}

std::vector<FeasibleSet> feasible_expectations(const PartitionProfile& profile,
                                               const Security& security, StateIdx state) {
    StateSet component = reach(profile, state);
    std::vector<FeasibleSet> sets;
    sets.reserve(static_cast<std::size_t>(profile.n_agents()));
    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        FeasibleSet acc;
        bool first = true;
        for (const StateSet* block : blocks_within(profile, i, component)) {
            ValueSummary summary = values_on(security, *block);
            FeasibleSet constraint = summary.constant()
                                         ? FeasibleSet::point(i, summary.min)
                                         : FeasibleSet::open_interval(i, summary.min, summary.max);
            acc = first ? constraint : acc.intersect(constraint);
            first = false;
        }
        sets.push_back(std::move(acc));
    }
    return sets;
}

TradePossibility ck_trade_possible(const PartitionProfile& profile, const Security& security,
                                   StateIdx state) {
    TradePossibility result;
    result.sets = feasible_expectations(profile, security, state);
    if (profile.n_agents() < 2) {
        result.reason = "fewer than two agents: a trade needs a counterparty";
        return result;
    }
    for (const FeasibleSet& set : result.sets) {
        if (set.empty) {
            result.reason = "agent " + std::to_string(set.agent + 1) +
                            " cannot hold one expectation across all their cells";
            return result;
        }
    }
    bool all_same_point = true;
    for (const FeasibleSet& set : result.sets)
        if (!set.is_point() || set.lower != result.sets.front().lower) {
            all_same_point = false;
            break;
        }
    if (all_same_point) {
        result.reason =
            "every agent is forced to the expectation " + format_rat(result.sets.front().lower);
        return result;
    }
    result.possible = true;
    result.reason = "a disagreement is achievable";
    return result;
}

namespace {

// Full-support distribution on the block with exact mean `target`: a uniform
// slice of weight gamma plus point masses at one min- and one max-payoff
// state. Halving gamma keeps both point weights non-negative; termination
// needs min < target < max, which membership in the feasible set guarantees.
std::vector<Rat> cell_posterior(const Security& security, const StateSet& block,
                                const Rat& target) {
    ValueSummary summary = values_on(security, block);
    const Rat& m = summary.min;
    const Rat& M = summary.max;
    StateIdx at_min = -1;
    StateIdx at_max = -1;
    Rat mean = 0;
    for (StateIdx s : block) {
        const Rat& v = security.payoff[static_cast<std::size_t>(s)];
        if (at_min < 0 && v == m) at_min = s;
        if (at_max < 0 && v == M) at_max = s;
        mean += v;
    }
    mean /= static_cast<int>(block.size());

    Rat gamma(1, 2);
    Rat alpha, beta;
    bool solved = false;
    for (int step = 0; step < 100000 && !solved; ++step) {
        Rat scale = 1 - gamma;
        beta = (target - gamma * mean - m * scale) / (M - m);
        alpha = scale - beta;
        solved = alpha >= 0 && beta >= 0;
        if (!solved) gamma /= 2;
    }
    if (!solved) throw std::logic_error("posterior mixture did not converge");

    Rat uniform = gamma / static_cast<int>(block.size());
    std::vector<Rat> q;
    q.reserve(block.size());
    for (StateIdx s : block) {
        Rat mass = uniform;
        if (s == at_min) mass += alpha;
        if (s == at_max) mass += beta;
        q.push_back(std::move(mass));
    }
    return q;
}

SynthesisResult fail(std::vector<FeasibleSet> sets, std::string reason) {
    SynthesisResult result;
    result.feasible = std::move(sets);
    result.reason = std::move(reason);
    return result;
}

}  // namespace

Prior synthesize_agent_prior(const PartitionProfile& profile, const Security& security,
                             StateIdx state, AgentIdx agent, const Rat& target) {
    if (agent < 0 || agent >= profile.n_agents())
        throw std::invalid_argument("agent index out of range");
    std::vector<FeasibleSet> sets = feasible_expectations(profile, security, state);
    if (!sets[static_cast<std::size_t>(agent)].contains(target))
        throw std::invalid_argument("target " + format_rat(target) + " for agent " +
                                    std::to_string(agent + 1) +
                                    " lies outside its feasible set");

    StateSet component = reach(profile, state);
    const Partition& partition = profile.partitions[static_cast<std::size_t>(agent)];
    const auto& blocks = partition.blocks();
    Rat weight = Rat(1) / static_cast<int>(blocks.size());
    std::vector<Rat> masses(static_cast<std::size_t>(profile.n_states), Rat(0));
    for (const StateSet& block : blocks) {
        std::vector<Rat> q;
        bool inside = component.contains(block.first());
        if (inside && !values_on(security, block).constant()) {
            q = cell_posterior(security, block, target);
        } else {
            q.assign(block.size(), Rat(1) / static_cast<int>(block.size()));
        }
        std::size_t pos = 0;
        for (StateIdx s : block) masses[static_cast<std::size_t>(s)] = weight * q[pos++];
    }
    return Prior(std::move(masses));
}

SynthesisResult synthesize_with_targets(const PartitionProfile& profile,
                                        const Security& security, StateIdx state,
                                        const std::vector<Rat>& targets) {
    const int n = profile.n_agents();
    if (static_cast<int>(targets.size()) != n)
        throw std::invalid_argument("expected one target expectation per agent");
    std::vector<FeasibleSet> sets = feasible_expectations(profile, security, state);
    for (AgentIdx i = 0; i < n; ++i)
        if (!sets[static_cast<std::size_t>(i)].contains(targets[static_cast<std::size_t>(i)]))
            return fail(std::move(sets), "target " + format_rat(targets[static_cast<std::size_t>(i)]) +
                                             " for agent " + std::to_string(i + 1) +
                                             " lies outside its feasible set");

    SynthesizedPriors out;
    out.targets = targets;
    for (AgentIdx i = 0; i < n; ++i) {
        out.priors.push_back(synthesize_agent_prior(profile, security, state, i,
                                                    targets[static_cast<std::size_t>(i)]));
        std::size_t n_blocks = profile.partitions[static_cast<std::size_t>(i)].blocks().size();
        out.cell_weights.emplace_back(n_blocks, Rat(1) / static_cast<int>(n_blocks));
    }

    SynthesisResult result;
    result.feasible = std::move(sets);
    result.priors = std::move(out);
    return result;
}

SynthesisResult synthesize_disagreement_priors(const PartitionProfile& profile,
                                               const Security& security, StateIdx state) {
    TradePossibility possibility = ck_trade_possible(profile, security, state);
    if (!possibility.possible)
        return fail(std::move(possibility.sets), std::move(possibility.reason));

    const int n = profile.n_agents();
    std::vector<Rat> targets(static_cast<std::size_t>(n));
    int last_free = -1;
    for (AgentIdx i = 0; i < n; ++i) {
        const FeasibleSet& set = possibility.sets[static_cast<std::size_t>(i)];
        if (set.is_point()) {
            targets[static_cast<std::size_t>(i)] = set.lower;
        } else {
            targets[static_cast<std::size_t>(i)] =
                set.lower + (set.upper - set.lower) * Rat(i + 1, n + 1);
            last_free = i;
        }
    }
    bool all_equal = true;
    for (AgentIdx i = 1; i < n; ++i)
        if (targets[static_cast<std::size_t>(i)] != targets[0]) {
            all_equal = false;
            break;
        }
    if (all_equal) {
        // ck_trade_possible ruled out the all-forced case, so a free agent exists.
        const FeasibleSet& set = possibility.sets[static_cast<std::size_t>(last_free)];
        targets[static_cast<std::size_t>(last_free)] =
            midpoint(targets[static_cast<std::size_t>(last_free)], set.upper);
    }
    return synthesize_with_targets(profile, security, state, targets);
}

TheoremVerdict verify_theorem_on(const PartitionProfile& profile, const Security& security,
                                 StateIdx state) {
    for (std::size_t a = 0; a < security.payoff.size(); ++a)
        for (std::size_t b = a + 1; b < security.payoff.size(); ++b)
            if (security.payoff[a] == security.payoff[b])
                throw std::invalid_argument("security is not injective: payoff " +
                                            format_rat(security.payoff[a]) + " repeats at states " +
                                            std::to_string(a) + " and " + std::to_string(b));

    TheoremVerdict verdict;
    verdict.state = state;
    verdict.threshold_verifiable = is_threshold_verifiable(profile, security, state).holds;
    TradePossibility possibility = ck_trade_possible(profile, security, state);
    verdict.trade_possible = possibility.possible;
    verdict.holds = verdict.threshold_verifiable != verdict.trade_possible;
    if (possibility.possible) {
        SynthesisResult synthesis = synthesize_disagreement_priors(profile, security, state);
        if (!synthesis.ok()) {
            verdict.synthesis_confirmed = false;
        } else {
            Model model = make_model(profile.partitions, synthesis.priors->priors);
            verdict.report = detect_ck_trade(model, security, state);
            verdict.synthesis_confirmed = verdict.report.has_value();
        }
        verdict.holds = verdict.holds && verdict.synthesis_confirmed;
    }
    return verdict;
}

}  // namespace notrade
