#include "dispatch.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <CLI11.hpp>

#include "notrade/agreement.hpp"
#include "notrade/announcements.hpp"
#include "notrade/enumeration.hpp"
#include "notrade/epistemic.hpp"
#include "notrade/examples.hpp"
#include "notrade/model_io.hpp"
#include "notrade/multi_security.hpp"
#include "notrade/report.hpp"
#include "notrade/scoring.hpp"
#include "notrade/verifiability.hpp"

namespace notrade {
namespace {

struct Options {
    std::string model;
    std::string security;
    std::string state;
    std::string order;
    std::string rule = "quadratic";
    std::string y0;
    std::string bundle;
    std::string format = "json";
    std::uint64_t seed = 1;
    int samples = 0;
    int states = 4;
    int agents = 2;
};

struct Loaded {
    ModelDocument doc;
    std::string canonical;  // serialized form, hashed into the inputs digest
};

std::string describe(const Diagnostic& d) {
    std::string text = d.code + ": " + d.message;
    if (!d.path.empty()) text += " at " + d.path;
    if (d.line > 0) text += " (line " + std::to_string(d.line) +
                            ", column " + std::to_string(d.column) + ")";
    return text;
}

Loaded load_document(const std::string& name) {
    if (name == "e1") {
        ModelDocument doc = example_one();
        std::string canonical = serialize_model(doc);
        return {std::move(doc), std::move(canonical)};
    }
    if (name == "e2") {
        ModelDocument doc = example_two();
        std::string canonical = serialize_model(doc);
        return {std::move(doc), std::move(canonical)};
    }
    ParseResult parsed = load_model_file(name);
    if (!parsed.ok()) {
        std::string text = "cannot load model '" + name + "':";
        for (const Diagnostic& d : parsed.diagnostics) text += "\n  " + describe(d);
        throw std::invalid_argument(text);
    }
    std::string canonical = serialize_model(*parsed.document);
    return {std::move(*parsed.document), std::move(canonical)};
}

const Security& pick_security(const ModelDocument& doc, std::string& name) {
    if (!name.empty()) return find_security(doc, name);
    if (doc.securities.size() == 1) {
        name = doc.securities.begin()->first;
        return doc.securities.begin()->second;
    }
    if (doc.securities.empty())
        throw std::invalid_argument("the model defines no securities");
    std::string names;
    for (const auto& [id, unused] : doc.securities) names += (names.empty() ? "" : ", ") + id;
    throw std::invalid_argument("--security is required here; the model defines: " + names);
}

std::vector<AgentIdx> pick_order(const ModelDocument& doc, const std::string& text) {
    if (text.empty()) {
        auto it = doc.schedules.find("default");
        if (it != doc.schedules.end()) return it->second;
        return default_order(doc.model);
    }
    if (auto it = doc.schedules.find(text); it != doc.schedules.end()) return it->second;
    std::vector<AgentIdx> order;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ','))
        order.push_back(doc.model.agent_index_of(token));
    if (order.empty())
        throw std::invalid_argument("--order needs a schedule name or comma-separated agent ids");
    return order;
}

std::string order_text(const Model& model, const std::vector<AgentIdx>& order) {
    std::string text;
    for (AgentIdx a : order) text += (text.empty() ? "" : ",") + model.agent_id(a);
    return text;
}

using Flags = std::vector<std::pair<std::string_view, std::string>>;

std::string digest(const std::string& command, const std::string& canonical_model,
                   const Flags& flags) {
    std::string material = command;
    material += '\0';
    material += canonical_model;
    for (const auto& [key, value] : flags) {
        material += '\0';
        material += key;
        material += '=';
        material += value;
    }
    return digest_hex(material);
}

int emit(std::ostream& out, const Options& opt, Report report) {
    out << emit_report(report, parse_format(opt.format));
    return report.exit_status;
}

Json rat_json(const Rat& r) { return format_rat(r); }

Json states_json(const Model& model, const StateSet& set) {
    Json arr = Json::array();
    for (StateIdx s : set) arr.push_back(model.space().id(s));
    return arr;
}

Json per_agent_json(const Model& model, const std::vector<Rat>& values) {
    Json obj = Json::object();
    for (AgentIdx a = 0; a < model.n_agents(); ++a)
        obj[model.agent_id(a)] = rat_json(values[static_cast<std::size_t>(a)]);
    return obj;
}

Json priors_json(const Model& model, const std::vector<Prior>& priors) {
    Json obj = Json::object();
    for (AgentIdx a = 0; a < model.n_agents(); ++a) {
        Json one = Json::object();
        for (StateIdx s = 0; s < model.n_states(); ++s)
            one[model.space().id(s)] = rat_json(priors[static_cast<std::size_t>(a)][s]);
        obj[model.agent_id(a)] = one;
    }
    return obj;
}

const char* kind_name(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::VerifiablePerState: return "per-state";
        case WitnessKind::MaxMin: return "maxmin";
        case WitnessKind::Threshold: return "threshold";
        case WitnessKind::Collective: return "collective";
        case WitnessKind::ConstantOnComponent: return "constant-on-component";
    }
    return "?";
}

Json witness_json(const Model& model, const VerifiabilityWitness& w) {
    Json j = Json::object();
    j["kind"] = kind_name(w.kind);
    if (w.agent) j["agent"] = model.agent_id(*w.agent);
    if (!w.states.empty()) {
        Json arr = Json::array();
        for (StateIdx s : w.states) arr.push_back(model.space().id(s));
        j["states"] = arr;
    }
    if (w.threshold) j["threshold"] = rat_json(*w.threshold);
    if (w.extreme) j["extreme"] = *w.extreme == ExtremeTag::Max ? "max" : "min";
    if (w.value) j["value"] = rat_json(*w.value);
    return j;
}

Json state_verdict_json(const Model& model, const StateVerdict& verdict) {
    Json j = Json::object();
    j["holds"] = verdict.holds;
    if (verdict.witness) j["witness"] = witness_json(model, *verdict.witness);
    return j;
}

// Global verdicts carry one witness per certified state in state order; the
// one for `state` sits at `state` minus the number of earlier failures.
Json global_verdict_json(const Model& model, const GlobalVerdict& verdict, StateIdx state) {
    Json j = Json::object();
    j["holds"] = verdict.holds;
    bool state_fails = false;
    std::size_t earlier_failures = 0;
    for (StateIdx s : verdict.failing_states) {
        if (s == state) state_fails = true;
        if (s < state) ++earlier_failures;
    }
    if (!state_fails)
        j["witness_at_state"] =
            witness_json(model, verdict.witnesses[static_cast<std::size_t>(state) - earlier_failures]);
    if (!verdict.failing_states.empty()) {
        Json arr = Json::array();
        for (StateIdx s : verdict.failing_states) arr.push_back(model.space().id(s));
        j["failing_states"] = arr;
    }
    return j;
}

Json feasible_json(const Model& model, const std::vector<FeasibleSet>& sets) {
    Json arr = Json::array();
    for (const FeasibleSet& f : sets) {
        Json j = Json::object();
        j["agent"] = model.agent_id(f.agent);
        j["set"] = describe(f);
        j["empty"] = f.empty;
        if (!f.empty) {
            j["lower"] = rat_json(f.lower);
            j["upper"] = rat_json(f.upper);
            j["lower_open"] = f.lower_open;
            j["upper_open"] = f.upper_open;
        }
        arr.push_back(j);
    }
    return arr;
}

Json trade_json(const Model& model, const std::optional<CKTradeReport>& report) {
    Json j = Json::object();
    j["found"] = report.has_value();
    if (report) {
        j["expectations"] = per_agent_json(model, report->expectations);
        j["disagreeing_pair"] =
            Json::array({model.agent_id(report->agent_i), model.agent_id(report->agent_j)});
    }
    return j;
}

int run_check(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);

    GlobalVerdict verifiable = is_verifiable(model, security);
    StateVerdict maxmin = is_maxmin_verifiable(model, security, state);
    StateVerdict threshold = is_threshold_verifiable(model, security, state);
    GlobalVerdict collective = is_collectively_verifiable(model, security);

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["reach"] = states_json(model, reach(model, state));
    body["verifiable"] = global_verdict_json(model, verifiable, state);
    body["maxmin"] = state_verdict_json(model, maxmin);
    body["threshold"] = state_verdict_json(model, threshold);
    body["collective"] = global_verdict_json(model, collective, state);

    return emit(out, opt,
                {"check",
                 digest("check", loaded.canonical,
                        {{"security", security_name}, {"state", opt.state}}),
                 0, body});
}

int run_trade(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);

    std::optional<CKTradeReport> report = detect_ck_trade(model, security, state);

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["reach"] = states_json(model, reach(model, state));
    body["trade"] = trade_json(model, report);

    return emit(out, opt,
                {"trade",
                 digest("trade", loaded.canonical,
                        {{"security", security_name}, {"state", opt.state}}),
                 0, body});
}

int run_oracle(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);

    TradePossibility possibility = ck_trade_possible(model.profile(), security, state);

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["possible"] = possibility.possible;
    if (!possibility.reason.empty()) body["reason"] = possibility.reason;
    body["feasible"] = feasible_json(model, possibility.sets);

    if (opt.samples > 0) {
        Rng rng(opt.seed);
        std::optional<std::vector<Prior>> found =
            search_ck_trade_priors(model.profile(), security, state, rng, opt.samples);
        Json search = Json::object();
        search["budget"] = opt.samples;
        search["seed"] = opt.seed;
        search["found"] = found.has_value();
        if (found) {
            Model witness(model.space(), model.agents(), model.profile().partitions, *found);
            search["priors"] = priors_json(model, *found);
            search["trade"] = trade_json(model, detect_ck_trade(witness, security, state));
        }
        body["search"] = search;
    }

    return emit(out, opt,
                {"oracle",
                 digest("oracle", loaded.canonical,
                        {{"security", security_name},
                         {"state", opt.state},
                         {"samples", std::to_string(opt.samples)},
                         {"seed", std::to_string(opt.seed)}}),
                 0, body});
}

int run_synthesize(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);

    SynthesisResult result = synthesize_disagreement_priors(model.profile(), security, state);

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["feasible"] = result.ok();
    if (!result.ok()) {
        body["reason"] = result.reason;
        body["feasible_sets"] = feasible_json(model, result.feasible);
    } else {
        body["targets"] = per_agent_json(model, result.priors->targets);
        body["priors"] = priors_json(model, result.priors->priors);
        Model realized(model.space(), model.agents(), model.profile().partitions,
                       result.priors->priors);
        body["trade"] = trade_json(model, detect_ck_trade(realized, security, state));
    }

    return emit(out, opt,
                {"synthesize",
                 digest("synthesize", loaded.canonical,
                        {{"security", security_name}, {"state", opt.state}}),
                 0, body});
}

int run_dynamics(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);
    std::vector<AgentIdx> order = pick_order(loaded.doc, opt.order);

    Transcript transcript = run_announcements(model, security, state, order);

    Json rounds = Json::array();
    for (const AnnouncementRound& round : transcript.rounds) {
        Json j;
        j["t"] = round.t;
        j["agent"] = model.agent_id(round.agent);
        j["announcement"] = rat_json(round.announcement);
        j["public_info"] = states_json(model, round.public_info);
        rounds.push_back(j);
    }

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["order"] = order_text(model, order);
    body["rounds"] = rounds;
    body["t_star"] = transcript.t_star;
    body["final_expectations"] = per_agent_json(model, transcript.final_expectations);
    body["agree"] = transcript.agree;

    return emit(out, opt,
                {"dynamics",
                 digest("dynamics", loaded.canonical,
                        {{"security", security_name},
                         {"state", opt.state},
                         {"order", order_text(model, order)}}),
                 0, body});
}

int run_market(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    std::string security_name = opt.security;
    const Security& security = pick_security(loaded.doc, security_name);
    StateIdx state = model.space().index_of(opt.state);
    std::vector<AgentIdx> order = pick_order(loaded.doc, opt.order);

    ScoringRule rule = ScoringRule::quadratic();
    if (opt.rule == "log" || opt.rule == "logarithmic") rule = default_log_rule(security);
    else if (opt.rule != "quadratic")
        throw std::invalid_argument("unknown rule '" + opt.rule +
                                    "' (expected quadratic or log)");
    Rat y0 = opt.y0.empty() ? default_initial_prediction(security) : parse_rat(opt.y0);

    MarketRun run = run_market(model, security, state, rule, y0, order);

    Json rounds = Json::array();
    for (const MarketRound& round : run.rounds) {
        Json j;
        j["t"] = round.t;
        j["agent"] = model.agent_id(round.agent);
        j["price"] = rat_json(round.price);
        j["payoff"] = round.payoff_exact ? Json(format_rat(*round.payoff_exact))
                                         : Json(round.payoff);
        j["public_info"] = states_json(model, round.public_info);
        rounds.push_back(j);
    }

    Json body;
    body["state"] = opt.state;
    body["security"] = security_name;
    body["rule"] = rule.kind == RuleKind::Quadratic ? "quadratic" : "logarithmic";
    if (rule.kind == RuleKind::Logarithmic) {
        body["bounds"] = Json::array({rat_json(rule.a), rat_json(rule.b)});
    }
    body["y0"] = rat_json(y0);
    body["order"] = order_text(model, order);
    body["rounds"] = rounds;
    body["t_star"] = run.t_star;
    body["terminal"] = run.terminal == TerminalBehavior::Constant ? "constant" : "cycle";
    body["period"] = run.period;
    body["aggregated"] = run.aggregated;
    body["realized_payoff"] = rat_json(security[state]);

    return emit(out, opt,
                {"market",
                 digest("market", loaded.canonical,
                        {{"security", security_name},
                         {"state", opt.state},
                         {"order", order_text(model, order)},
                         {"rule", opt.rule},
                         {"y0", format_rat(y0)}}),
                 0, body});
}

Json multi_threshold_json(const Model& model, const MultiThresholdVerdict& verdict) {
    Json j = Json::object();
    j["holds"] = verdict.holds;
    j["constant_case"] = verdict.constant_case;
    if (verdict.agent) j["agent"] = model.agent_id(*verdict.agent);
    if (verdict.cells)
        j["cells"] = Json::array(
            {model.space().id(verdict.cells->first), model.space().id(verdict.cells->second)});
    if (verdict.threshold) j["threshold"] = rat_json(*verdict.threshold);
    return j;
}

int run_multi(const Options& opt, std::ostream& out) {
    Loaded loaded = load_document(opt.model);
    const Model& model = loaded.doc.model;
    StateIdx state = model.space().index_of(opt.state);
    SecurityBundle bundle = make_bundle(loaded.doc, opt.bundle);

    TradabilityVerdict tradable = is_tradable(bundle, model);
    MultiThresholdVerdict threshold = is_threshold_verifiable_multi(model, bundle, state);

    Json body;
    body["state"] = opt.state;
    body["bundle"] = opt.bundle;
    Json securities = Json::object();
    const std::vector<std::string>& names = loaded.doc.bundles.at(opt.bundle);
    for (AgentIdx a = 0; a < model.n_agents(); ++a)
        securities[model.agent_id(a)] = names[static_cast<std::size_t>(a)];
    body["securities"] = securities;
    body["tradable"] = tradable.tradable;
    if (!tradable.tradable) {
        body["reason"] = tradable.reason;
        if (tradable.sum_violation)
            body["sum_violation"] = model.space().id(*tradable.sum_violation);
        if (tradable.max_violation)
            body["max_violation"] =
                Json::object({{"agent", model.agent_id(tradable.max_violation->first)},
                              {"state", model.space().id(tradable.max_violation->second)}});
    } else {
        std::optional<MultiTradeReport> report = detect_ck_trade_multi(model, bundle, state);
        Json trade = Json::object();
        trade["found"] = report.has_value();
        if (report) trade["profits"] = per_agent_json(model, report->profits);
        body["trade"] = trade;
    }
    body["threshold"] = multi_threshold_json(model, threshold);

    return emit(out, opt,
                {"multi",
                 digest("multi", loaded.canonical,
                        {{"bundle", opt.bundle}, {"state", opt.state}}),
                 0, body});
}

Json enumeration_json(const EnumerationSummary& summary) {
    Json body;
    body["instances"] = summary.instances;
    body["checks"] = summary.checks;
    body["trades"] = summary.trade_count;
    body["holds"] = summary.all_hold();
    if (summary.failure) {
        const EnumerationFailure& f = *summary.failure;
        Json failure;
        failure["instance"] = f.instance;
        failure["state"] = default_state_ids(
            static_cast<int>(f.partition_labels.front().size()))[static_cast<std::size_t>(f.state)];
        failure["partition_labels"] = f.partition_labels;
        failure["threshold_verifiable"] = f.threshold_verifiable;
        failure["trade_possible"] = f.trade_possible;
        failure["synthesis_confirmed"] = f.synthesis_confirmed;
        body["failure"] = failure;
    }
    return body;
}

int run_theorem(const Options& opt, std::ostream& out) {
    if (!opt.model.empty()) {
        if (opt.state.empty())
            throw std::invalid_argument("theorem on a model needs --state");
        Loaded loaded = load_document(opt.model);
        const Model& model = loaded.doc.model;
        std::string security_name = opt.security;
        const Security& security = pick_security(loaded.doc, security_name);
        StateIdx state = model.space().index_of(opt.state);

        TheoremVerdict verdict = verify_theorem_on(model.profile(), security, state);

        Json body;
        body["state"] = opt.state;
        body["security"] = security_name;
        body["threshold_verifiable"] = verdict.threshold_verifiable;
        body["trade_possible"] = verdict.trade_possible;
        if (verdict.trade_possible) body["synthesis_confirmed"] = verdict.synthesis_confirmed;
        body["holds"] = verdict.holds;
        if (verdict.report) body["trade"] = trade_json(model, verdict.report);

        return emit(out, opt,
                    {"theorem",
                     digest("theorem", loaded.canonical,
                            {{"security", security_name}, {"state", opt.state}}),
                     verdict.holds ? 0 : 1, body});
    }

    EnumerationSummary summary = enumerate_theorem(opt.states, opt.agents);
    Json body;
    body["states"] = opt.states;
    body["agents"] = opt.agents;
    body.update(enumeration_json(summary));
    return emit(out, opt,
                {"theorem",
                 digest("theorem", "",
                        {{"states", std::to_string(opt.states)},
                         {"agents", std::to_string(opt.agents)}}),
                 summary.all_hold() ? 0 : 1, body});
}

int run_proposition(const Options& opt, std::ostream& out) {
    if (!opt.model.empty()) {
        if (opt.state.empty() || opt.bundle.empty())
            throw std::invalid_argument("proposition on a model needs --bundle and --state");
        Loaded loaded = load_document(opt.model);
        const Model& model = loaded.doc.model;
        StateIdx state = model.space().index_of(opt.state);
        SecurityBundle bundle = make_bundle(loaded.doc, opt.bundle);

        PropositionVerdict verdict = verify_proposition_on(model.profile(), bundle, state);

        Json body;
        body["state"] = opt.state;
        body["bundle"] = opt.bundle;
        body["threshold_verifiable"] = verdict.threshold_verifiable;
        body["trade_possible"] = verdict.trade_possible;
        if (verdict.trade_possible) body["synthesis_confirmed"] = verdict.synthesis_confirmed;
        body["holds"] = verdict.holds;
        if (verdict.report) {
            Json trade = Json::object();
            trade["profits"] = per_agent_json(model, verdict.report->profits);
            body["trade"] = trade;
        }

        return emit(out, opt,
                    {"proposition",
                     digest("proposition", loaded.canonical,
                            {{"bundle", opt.bundle}, {"state", opt.state}}),
                     verdict.holds ? 0 : 1, body});
    }

    EnumerationSummary summary = enumerate_proposition(opt.states, opt.agents);
    Json body;
    body["states"] = opt.states;
    body["agents"] = opt.agents;
    body.update(enumeration_json(summary));
    return emit(out, opt,
                {"proposition",
                 digest("proposition", "",
                        {{"states", std::to_string(opt.states)},
                         {"agents", std::to_string(opt.agents)}}),
                 summary.all_hold() ? 0 : 1, body});
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact-arithmetic toolkit for finite partition models: verifiability, "
                 "common-knowledge trade, announcement and market dynamics",
                 "notrade"};
    app.require_subcommand(1);
    Options opt;

    auto add_model = [&](CLI::App* sub, bool required) {
        CLI::Option* o = sub->add_option(
            "--model", opt.model, "model file path, or a built-in example name (e1, e2)");
        if (required) o->required();
    };
    auto add_security = [&](CLI::App* sub) {
        sub->add_option("--security", opt.security,
                        "security name in the model (defaults to the only one)");
    };
    auto add_state = [&](CLI::App* sub, bool required) {
        CLI::Option* o = sub->add_option("--state", opt.state, "true state id, e.g. w1");
        if (required) o->required();
    };
    auto add_order = [&](CLI::App* sub) {
        sub->add_option("--order", opt.order,
                        "schedule name or comma-separated agent ids (default: the model's "
                        "'default' schedule, else round-robin)");
    };
    auto add_format = [&](CLI::App* sub, const char* help) {
        sub->add_option("--format", opt.format, help)->capture_default_str();
    };

    CLI::App* check = app.add_subcommand(
        "check", "Decide the four verifiability notions for a security at a state");
    add_model(check, true);
    add_security(check);
    add_state(check, true);
    add_format(check, "output format: json or table");

    CLI::App* trade = app.add_subcommand(
        "trade", "Detect a common-knowledge trade at a state under the model's priors");
    add_model(trade, true);
    add_security(trade);
    add_state(trade, true);
    add_format(trade, "output format: json or table");

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Decide whether any full-support priors admit a common-knowledge trade");
    add_model(oracle, true);
    add_security(oracle);
    add_state(oracle, true);
    oracle->add_option("--samples", opt.samples,
                       "also search this many random prior profiles for a live trade");
    oracle->add_option("--seed", opt.seed, "seed for the randomized search")
        ->capture_default_str();
    add_format(oracle, "output format: json or table");

    CLI::App* synthesize = app.add_subcommand(
        "synthesize", "Construct priors realizing a common-knowledge disagreement at a state");
    add_model(synthesize, true);
    add_security(synthesize);
    add_state(synthesize, true);
    add_format(synthesize, "output format: json or table");

    CLI::App* dynamics = app.add_subcommand(
        "dynamics", "Run the sequential announcement protocol from a state");
    add_model(dynamics, true);
    add_security(dynamics);
    add_state(dynamics, true);
    add_order(dynamics);
    add_format(dynamics, "output format: json or table");

    CLI::App* market = app.add_subcommand(
        "market", "Run a market scoring rule over the announcement schedule");
    add_model(market, true);
    add_security(market);
    add_state(market, true);
    add_order(market);
    market->add_option("--rule", opt.rule, "scoring rule: quadratic or log")
        ->capture_default_str();
    market->add_option("--y0", opt.y0,
                       "opening prediction as a rational (default: payoff-range midpoint)");
    add_format(market, "output format: json, table, or csv (price path)");

    CLI::App* multi = app.add_subcommand(
        "multi", "Judge tradability, trade, and separation for a zero-sum security bundle");
    add_model(multi, true);
    multi->add_option("--bundle", opt.bundle, "bundle name in the model")->required();
    add_state(multi, true);
    add_format(multi, "output format: json or table");

    CLI::App* theorem = app.add_subcommand(
        "theorem",
        "Cross-check separation against the trade oracle, exhaustively or on one model");
    add_model(theorem, false);
    add_security(theorem);
    add_state(theorem, false);
    theorem->add_option("--states", opt.states, "state count for exhaustive enumeration")
        ->capture_default_str();
    theorem->add_option("--agents", opt.agents, "agent count for exhaustive enumeration")
        ->capture_default_str();
    add_format(theorem, "output format: json or table");

    CLI::App* proposition = app.add_subcommand(
        "proposition", "Cross-check bundle separation against the positive-profit oracle");
    add_model(proposition, false);
    proposition->add_option("--bundle", opt.bundle, "bundle name in the model");
    add_state(proposition, false);
    proposition->add_option("--states", opt.states, "state count for exhaustive enumeration")
        ->capture_default_str();
    proposition->add_option("--agents", opt.agents, "agent count for exhaustive enumeration")
        ->capture_default_str();
    add_format(proposition, "output format: json or table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp") {
            out << app.help();
            return 0;
        }
        if (e.get_name() == "CallForAllHelp") {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(check)) return run_check(opt, out);
        if (app.got_subcommand(trade)) return run_trade(opt, out);
        if (app.got_subcommand(oracle)) return run_oracle(opt, out);
        if (app.got_subcommand(synthesize)) return run_synthesize(opt, out);
        if (app.got_subcommand(dynamics)) return run_dynamics(opt, out);
        if (app.got_subcommand(market)) return run_market(opt, out);
        if (app.got_subcommand(multi)) return run_multi(opt, out);
        if (app.got_subcommand(theorem)) return run_theorem(opt, out);
        if (app.got_subcommand(proposition)) return run_proposition(opt, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace notrade
