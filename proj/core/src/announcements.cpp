#include "notrade/announcements.hpp"

#include <numeric>
#include <stdexcept>

#include "notrade/epistemic.hpp"
#include "notrade/verifiability.hpp"

namespace notrade {

void validate_schedule(const Model& model, const std::vector<AgentIdx>& order) {
    const int n = model.profile().n_agents();
    if (order.empty()) throw std::invalid_argument("announcement schedule is empty");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (AgentIdx a : order) {
        if (a < 0 || a >= n)
            throw std::invalid_argument("announcement schedule names unknown agent index " +
                                        std::to_string(a));
        seen[static_cast<std::size_t>(a)] = true;
    }
    for (AgentIdx a = 0; a < n; ++a)
        if (!seen[static_cast<std::size_t>(a)])
            throw std::invalid_argument("announcement schedule never lets agent " +
                                        std::to_string(a + 1) + " speak");
}

bool threshold_on_restriction(const Model& model, const Security& security,
                              const StateSet& event, StateIdx state) {
    Model restricted = restrict_model(model, event);
    Security sub = restrict_security(security, event);
    StateIdx sub_state = 0;
    for (StateIdx s : event) {
        if (s == state) break;
        ++sub_state;
    }
    if (sub_state == static_cast<StateIdx>(event.size()))
        throw std::invalid_argument("state lies outside the restriction event");
    return is_threshold_verifiable(restricted.profile(), sub, sub_state).holds;
}

std::vector<AgentIdx> default_order(const Model& model) {
    std::vector<AgentIdx> order(static_cast<std::size_t>(model.profile().n_agents()));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

Transcript run_announcements(const Model& model, const Security& security, StateIdx true_state,
                             const std::vector<AgentIdx>& order) {
    validate_schedule(model, order);
    if (true_state < 0 || true_state >= model.profile().n_states)
        throw std::invalid_argument("state index out of range");

    Transcript transcript;
    transcript.true_state = true_state;
    transcript.order = order;

    const int len = static_cast<int>(order.size());
    StateSet public_info = StateSet::full(model.profile().n_states);
    int last_refinement = 0;  // round index of the latest strict shrink
    int silent_streak = 0;

    // A strict refinement drops at least one state, so the protocol runs at
    // most (|Ω| - 1) refining rounds plus one silent cycle per plateau.
    const int round_cap = len * (model.profile().n_states + 2);
    for (int t = 1; silent_streak < len; ++t) {
        if (t > round_cap) throw std::logic_error("announcement protocol failed to stabilize");
        AgentIdx speaker = order[static_cast<std::size_t>((t - 1) % len)];
        StateSet own = cell(model, speaker, true_state).intersect(public_info);
        Rat announcement = conditional_expectation(model.prior(speaker), security, own);

        std::vector<StateIdx> kept;
        for (StateIdx s : public_info) {
            StateSet other = cell(model, speaker, s).intersect(public_info);
            if (conditional_expectation(model.prior(speaker), security, other) == announcement)
                kept.push_back(s);
        }
        StateSet next(std::move(kept));
        if (next.size() < public_info.size()) {
            last_refinement = t;
            silent_streak = 0;
        } else {
            ++silent_streak;
        }
        public_info = std::move(next);
        transcript.rounds.push_back({t, speaker, std::move(announcement), public_info});
    }

    transcript.t_star = last_refinement + 1;
    transcript.final_expectations.assign(static_cast<std::size_t>(model.profile().n_agents()),
                                         Rat(0));
    // The trailing rounds form one silent cycle, so every agent spoke at
    // least once over an unchanging public set.
    for (std::size_t r = transcript.rounds.size() - static_cast<std::size_t>(len);
         r < transcript.rounds.size(); ++r)
        transcript.final_expectations[static_cast<std::size_t>(transcript.rounds[r].agent)] =
            transcript.rounds[r].announcement;
    transcript.agree = true;
    for (const Rat& e : transcript.final_expectations)
        if (e != transcript.final_expectations.front()) {
            transcript.agree = false;
            break;
        }
    return transcript;
}

bool cannot_disagree_forever(const Model& model, const Security& security, StateIdx state,
                             const std::vector<AgentIdx>& order) {
    return run_announcements(model, security, state, order).agree;
}

CorollaryVerdict check_corollary1(const Model& model, const Security& security, StateIdx state,
                                  const std::vector<AgentIdx>& order) {
    Transcript transcript = run_announcements(model, security, state, order);
    CorollaryVerdict verdict;
    verdict.applicable =
        threshold_on_restriction(model, security, transcript.rounds.back().public_info, state);
    verdict.conclusion = transcript.agree;
    verdict.holds = !verdict.applicable || verdict.conclusion;
    return verdict;
}

}  // namespace notrade
