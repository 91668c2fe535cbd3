#include "notrade/scoring.hpp"

#include <cmath>
#include <stdexcept>

#include "notrade/epistemic.hpp"

namespace notrade {

ScoringRule ScoringRule::quadratic() { return {}; }

ScoringRule ScoringRule::logarithmic(const Rat& a, const Rat& b) {
    if (!(a < b)) throw std::invalid_argument("logarithmic rule needs a < b");
    ScoringRule rule;
    rule.kind = RuleKind::Logarithmic;
    rule.a = a;
    rule.b = b;
    return rule;
}

Rat quadratic_score(const Rat& prediction, const Rat& outcome) {
    Rat d = outcome - prediction;
    Rat s = -(d * d);
    return s;
}

double score(const ScoringRule& rule, const Rat& prediction, const Rat& outcome) {
    if (rule.kind == RuleKind::Quadratic) return to_double(quadratic_score(prediction, outcome));
    if (!(rule.a < prediction && prediction < rule.b))
        throw std::domain_error("logarithmic score needs a prediction strictly inside (a, b)");
    Rat ya = prediction - rule.a;
    Rat by = rule.b - prediction;
    Rat xa = outcome - rule.a;
    Rat bx = rule.b - outcome;
    return to_double(xa) * std::log(to_double(ya)) + to_double(bx) * std::log(to_double(by));
}

namespace {

ValueSummary payoff_range(const Security& security) {
    return values_on(security, StateSet::full(static_cast<int>(security.payoff.size())));
}

}  // namespace

ScoringRule default_log_rule(const Security& security) {
    ValueSummary range = payoff_range(security);
    return ScoringRule::logarithmic(range.min - 1, range.max + 1);
}

Rat default_initial_prediction(const Security& security) {
    ValueSummary range = payoff_range(security);
    return midpoint(range.min, range.max);
}

Rat myopic_prediction(const Model& model, const Security& security, AgentIdx agent,
                      const StateSet& public_info, StateIdx state) {
    StateSet own = cell(model, agent, state).intersect(public_info);
    return conditional_expectation(model.prior(agent), security, own);
}

MarketRun run_market(const Model& model, const Security& security, StateIdx true_state,
                     const ScoringRule& rule, const Rat& y0,
                     const std::vector<AgentIdx>& schedule, int max_cycles) {
    validate_schedule(model, schedule);
    if (true_state < 0 || true_state >= model.profile().n_states)
        throw std::invalid_argument("state index out of range");
    ValueSummary range = payoff_range(security);
    if (y0 < range.min || y0 > range.max)
        throw std::invalid_argument("initial prediction lies outside the payoff range");
    if (rule.kind == RuleKind::Logarithmic && !(rule.a < range.min && rule.b > range.max))
        throw std::invalid_argument("logarithmic bounds must strictly enclose the payoff range");
    if (max_cycles <= 0) max_cycles = 2 * model.profile().n_states + 2;

    MarketRun run;
    run.true_state = true_state;
    run.rule = rule;
    run.y0 = y0;
    run.schedule = schedule;

    const Rat& x_star = security.payoff[static_cast<std::size_t>(true_state)];
    const int len = static_cast<int>(schedule.size());
    StateSet public_info = StateSet::full(model.profile().n_states);
    Rat previous = y0;
    int last_refinement = 0;
    int silent_streak = 0;

    for (int t = 1; silent_streak < len; ++t) {
        if (t > max_cycles * len)
            throw std::invalid_argument("cycle budget too small to reach the fixed point");
        AgentIdx trader = schedule[static_cast<std::size_t>((t - 1) % len)];
        Rat price = myopic_prediction(model, security, trader, public_info, true_state);

        std::vector<StateIdx> kept;
        for (StateIdx s : public_info)
            if (myopic_prediction(model, security, trader, public_info, s) == price)
                kept.push_back(s);
        StateSet next(std::move(kept));
        if (next.size() < public_info.size()) {
            last_refinement = t;
            silent_streak = 0;
        } else {
            ++silent_streak;
        }
        public_info = std::move(next);

        MarketRound round;
        round.t = t;
        round.agent = trader;
        round.public_info = public_info;
        if (rule.kind == RuleKind::Quadratic) {
            Rat exact = quadratic_score(price, x_star) - quadratic_score(previous, x_star);
            round.payoff = to_double(exact);
            round.payoff_exact = std::move(exact);
        } else {
            round.payoff = score(rule, price, x_star) - score(rule, previous, x_star);
        }
        previous = price;
        round.price = std::move(price);
        run.rounds.push_back(std::move(round));
    }

    run.t_star = last_refinement + 1;

    // Terminal regime: the last full cycle repeats forever; its minimal
    // period divides the schedule length.
    std::vector<Rat> cycle;
    cycle.reserve(static_cast<std::size_t>(len));
    for (std::size_t r = run.rounds.size() - static_cast<std::size_t>(len); r < run.rounds.size();
         ++r)
        cycle.push_back(run.rounds[r].price);
    int period = len;
    for (int d = 1; d <= len; ++d) {
        if (len % d != 0) continue;
        bool fits = true;
        for (int i = 0; i < len && fits; ++i)
            fits = cycle[static_cast<std::size_t>(i)] ==
                   cycle[static_cast<std::size_t>(i % d)];
        if (fits) {
            period = d;
            break;
        }
    }
    run.period = period;
    run.terminal = period == 1 ? TerminalBehavior::Constant : TerminalBehavior::Cycle;
    run.aggregated = period == 1 && cycle.front() == x_star;
    return run;
}

CorollaryVerdict check_corollary2(const Model& model, const Security& security, StateIdx state,
                                  const ScoringRule& rule,
                                  const std::vector<AgentIdx>& schedule) {
    MarketRun run =
        run_market(model, security, state, rule, default_initial_prediction(security), schedule);
    CorollaryVerdict verdict;
    verdict.applicable =
        threshold_on_restriction(model, security, run.rounds.back().public_info, state);
    verdict.conclusion = run.aggregated;
    verdict.holds = !verdict.applicable || verdict.conclusion;
    return verdict;
}

Rat properness_probe(const ScoringRule& rule, const std::vector<std::pair<Rat, Rat>>& atoms,
                     const Rat& step) {
    if (atoms.empty()) throw std::invalid_argument("value distribution is empty");
    if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
    Rat lo = atoms.front().first;
    Rat hi = atoms.front().first;
    Rat total = 0;
    for (const auto& [value, prob] : atoms) {
        if (!(prob > 0)) throw std::invalid_argument("distribution masses must be positive");
        total += prob;
        if (value < lo) lo = value;
        if (value > hi) hi = value;
    }
    if (total != 1) throw std::invalid_argument("distribution masses must sum to 1");

    if (rule.kind == RuleKind::Quadratic) {
        Rat best_y = lo;
        Rat best_score;
        bool first = true;
        for (Rat y = lo; y <= hi; y += step) {
            Rat expected = 0;
            for (const auto& [value, prob] : atoms)
                expected += prob * quadratic_score(y, value);
            if (first || expected > best_score) {
                best_score = expected;
                best_y = y;
                first = false;
            }
        }
        return best_y;
    }
    Rat best_y = lo;
    double best_score = 0.0;
    bool first = true;
    for (Rat y = lo; y <= hi; y += step) {
        double expected = 0.0;
        for (const auto& [value, prob] : atoms) expected += to_double(prob) * score(rule, y, value);
        if (first || expected > best_score) {
            best_score = expected;
            best_y = y;
            first = false;
        }
    }
    return best_y;
}

}  // namespace notrade
