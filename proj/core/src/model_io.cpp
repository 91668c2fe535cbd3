#include "notrade/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace notrade {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::pair<int, int> position_of(const std::string& text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

struct Context {
    std::vector<Diagnostic>& diags;

    void add(std::string code, std::string message, std::string path) {
        diags.push_back({std::move(code), std::move(message), std::move(path), 0, 0});
    }
};

// Array of unique non-empty identifier strings ("states", "agents").
bool read_id_array(const json& root, const std::string& field, Context& ctx,
                   std::vector<std::string>& out) {
    std::string path = "/" + field;
    if (!root.contains(field)) {
        ctx.add("missing-field", "missing '" + field + "'", path);
        return false;
    }
    const json& node = root[field];
    if (!node.is_array() || node.empty()) {
        ctx.add("bad-type", "'" + field + "' must be a non-empty array of strings", path);
        return false;
    }
    bool ok = true;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < node.size(); ++i) {
        std::string at = path + "/" + std::to_string(i);
        if (!node[i].is_string()) {
            ctx.add("bad-type", "'" + field + "' entries must be strings", at);
            ok = false;
            continue;
        }
        std::string id = node[i].get<std::string>();
        if (id.empty()) {
            ctx.add("empty-id", "identifiers must be non-empty", at);
            ok = false;
            continue;
        }
        if (!seen.insert(id).second) {
            ctx.add(field == "states" ? "duplicate-state" : "duplicate-agent",
                    "'" + id + "' appears twice", at);
            ok = false;
            continue;
        }
        out.push_back(std::move(id));
    }
    return ok;
}

// Exact rational from a JSON value: a string "a/b" or "n", or an integer.
// Floating point is rejected to keep the format lossless.
std::optional<Rat> read_rational(const json& node, const std::string& path, Context& ctx) {
    if (node.is_string()) {
        try {
            return parse_rat(node.get<std::string>());
        } catch (const std::invalid_argument& err) {
            ctx.add("bad-rational", err.what(), path);
            return std::nullopt;
        }
    }
    if (node.is_number_integer()) return Rat(node.get<long long>());
    ctx.add("bad-rational",
            "expected an exact rational written as a string like \"1/3\"", path);
    return std::nullopt;
}

// Per-state map of rationals covering every state exactly once.
std::optional<std::vector<Rat>> read_state_map(const json& node, const std::string& path,
                                               const std::vector<std::string>& states,
                                               const std::unordered_map<std::string, int>& index,
                                               const char* missing_code, Context& ctx) {
    if (!node.is_object()) {
        ctx.add("bad-type", "expected an object mapping state ids to rationals", path);
        return std::nullopt;
    }
    bool ok = true;
    std::vector<std::optional<Rat>> values(states.size());
    for (const auto& [key, value] : node.items()) {
        auto it = index.find(key);
        if (it == index.end()) {
            ctx.add("unknown-state", "'" + key + "' is not a declared state", path + "/" + key);
            ok = false;
            continue;
        }
        auto rat = read_rational(value, path + "/" + key, ctx);
        if (!rat) {
            ok = false;
            continue;
        }
        values[static_cast<std::size_t>(it->second)] = std::move(*rat);
    }
    for (std::size_t s = 0; s < states.size(); ++s)
        if (!values[s]) {
            ctx.add(missing_code, "no value for state '" + states[s] + "'", path);
            ok = false;
        }
    if (!ok) return std::nullopt;
    std::vector<Rat> out;
    out.reserve(values.size());
    for (auto& v : values) out.push_back(std::move(*v));
    return out;
}

std::optional<Partition> read_partition(const json& node, const std::string& path, int n_states,
                                        const std::vector<std::string>& states,
                                        const std::unordered_map<std::string, int>& index,
                                        Context& ctx) {
    if (!node.is_array()) {
        ctx.add("bad-type", "a partition must be an array of blocks", path);
        return std::nullopt;
    }
    bool ok = true;
    std::vector<int> owner(static_cast<std::size_t>(n_states), -1);
    std::vector<StateSet> blocks;
    for (std::size_t b = 0; b < node.size(); ++b) {
        std::string at = path + "/" + std::to_string(b);
        const json& raw = node[b];
        if (!raw.is_array()) {
            ctx.add("bad-type", "a block must be an array of state ids", at);
            ok = false;
            continue;
        }
        if (raw.empty()) {
            ctx.add("empty-block", "blocks must be non-empty", at);
            ok = false;
            continue;
        }
        std::vector<StateIdx> members;
        for (const json& entry : raw) {
            if (!entry.is_string()) {
                ctx.add("bad-type", "state ids must be strings", at);
                ok = false;
                continue;
            }
            std::string id = entry.get<std::string>();
            auto it = index.find(id);
            if (it == index.end()) {
                ctx.add("unknown-state", "'" + id + "' is not a declared state", at);
                ok = false;
                continue;
            }
            if (owner[static_cast<std::size_t>(it->second)] != -1) {
                ctx.add("blocks-overlap", "state '" + id + "' appears in more than one block",
                        at);
                ok = false;
                continue;
            }
            owner[static_cast<std::size_t>(it->second)] = static_cast<int>(b);
            members.push_back(it->second);
        }
        if (!members.empty()) blocks.emplace_back(std::move(members));
    }
    for (std::size_t s = 0; s < owner.size(); ++s)
        if (owner[s] == -1) {
            ctx.add("blocks-missing-state", "state '" + states[s] + "' belongs to no block",
                    path);
            ok = false;
        }
    if (!ok) return std::nullopt;
    return Partition(n_states, std::move(blocks));
}

}  // namespace

ParseResult parse_model(const std::string& text) {
    ParseResult result;
    Context ctx{result.diagnostics};

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        auto [line, column] = position_of(text, err.byte > 0 ? err.byte - 1 : 0);
        result.diagnostics.push_back({"syntax-error", err.what(), "", line, column});
        return result;
    }
    if (!root.is_object()) {
        ctx.add("bad-document", "top level must be a JSON object", "");
        return result;
    }

    static const std::set<std::string> known = {"schema",     "states",    "agents",
                                                "partitions", "priors",    "securities",
                                                "schedules",  "bundles",   "notes"};
    for (const auto& [key, value] : root.items())
        if (!known.count(key)) ctx.add("unknown-field", "unrecognized field '" + key + "'", "/" + key);

    int schema = 1;
    if (!root.contains("schema")) {
        ctx.add("missing-field", "missing 'schema'", "/schema");
    } else if (!root["schema"].is_number_integer()) {
        ctx.add("bad-schema", "'schema' must be an integer", "/schema");
    } else {
        schema = root["schema"].get<int>();
        if (schema != 1)
            ctx.add("bad-schema", "unsupported schema version " + std::to_string(schema),
                    "/schema");
    }

    std::vector<std::string> states;
    std::vector<std::string> agents;
    bool states_ok = read_id_array(root, "states", ctx, states);
    bool agents_ok = read_id_array(root, "agents", ctx, agents);
    if (!states_ok || !agents_ok) return result;

    const int n_states = static_cast<int>(states.size());
    std::unordered_map<std::string, int> state_index;
    for (int s = 0; s < n_states; ++s) state_index[states[static_cast<std::size_t>(s)]] = s;
    std::unordered_map<std::string, int> agent_index;
    for (std::size_t i = 0; i < agents.size(); ++i)
        agent_index[agents[i]] = static_cast<int>(i);

    std::vector<std::optional<Partition>> partitions(agents.size());
    if (!root.contains("partitions") || !root["partitions"].is_object()) {
        ctx.add(root.contains("partitions") ? "bad-type" : "missing-field",
                "'partitions' must map each agent id to an array of blocks", "/partitions");
    } else {
        const json& node = root["partitions"];
        for (const auto& [key, value] : node.items())
            if (!agent_index.count(key))
                ctx.add("unknown-agent", "'" + key + "' is not a declared agent",
                        "/partitions/" + key);
        for (std::size_t i = 0; i < agents.size(); ++i) {
            std::string path = "/partitions/" + agents[i];
            if (!node.contains(agents[i])) {
                ctx.add("missing-field", "no partition for agent '" + agents[i] + "'", path);
                continue;
            }
            partitions[i] = read_partition(node[agents[i]], path, n_states, states, state_index, ctx);
        }
    }

    std::vector<std::optional<Prior>> priors(agents.size());
    if (!root.contains("priors") || !root["priors"].is_object()) {
        ctx.add(root.contains("priors") ? "bad-type" : "missing-field",
                "'priors' must map each agent id to per-state masses", "/priors");
    } else {
        const json& node = root["priors"];
        for (const auto& [key, value] : node.items())
            if (!agent_index.count(key))
                ctx.add("unknown-agent", "'" + key + "' is not a declared agent", "/priors/" + key);
        for (std::size_t i = 0; i < agents.size(); ++i) {
            std::string path = "/priors/" + agents[i];
            if (!node.contains(agents[i])) {
                ctx.add("missing-field", "no prior for agent '" + agents[i] + "'", path);
                continue;
            }
            auto masses = read_state_map(node[agents[i]], path, states, state_index,
                                         "missing-mass", ctx);
            if (!masses) continue;
            bool positive = true;
            for (int s = 0; s < n_states; ++s)
                if (!((*masses)[static_cast<std::size_t>(s)] > 0)) {
                    ctx.add("non-positive-mass",
                            "prior of agent '" + agents[i] + "' puts mass " +
                                format_rat((*masses)[static_cast<std::size_t>(s)]) +
                                " on state '" + states[static_cast<std::size_t>(s)] + "'",
                            path + "/" + states[static_cast<std::size_t>(s)]);
                    positive = false;
                }
            if (!positive) continue;
            Rat total = 0;
            for (const Rat& m : *masses) total += m;
            if (total != 1) {
                ctx.add("prior-not-normalized",
                        "prior of agent '" + agents[i] + "' sums to " + format_rat(total) +
                            ", expected 1",
                        path);
                continue;
            }
            priors[i] = Prior(std::move(*masses));
        }
    }

    std::map<std::string, Security> securities;
    bool securities_ok = true;
    if (root.contains("securities")) {
        if (!root["securities"].is_object()) {
            ctx.add("bad-type", "'securities' must map names to per-state payoffs", "/securities");
            securities_ok = false;
        } else {
            for (const auto& [name, value] : root["securities"].items()) {
                std::string path = "/securities/" + name;
                if (name.empty()) {
                    ctx.add("empty-id", "security names must be non-empty", path);
                    securities_ok = false;
                    continue;
                }
                auto payoff = read_state_map(value, path, states, state_index, "payoff-missing", ctx);
                if (!payoff) {
                    securities_ok = false;
                    continue;
                }
                securities[name] = Security{std::move(*payoff)};
            }
        }
    }

    std::map<std::string, std::vector<AgentIdx>> schedules;
    if (root.contains("schedules")) {
        if (!root["schedules"].is_object()) {
            ctx.add("bad-type", "'schedules' must map names to agent id lists", "/schedules");
        } else {
            for (const auto& [name, value] : root["schedules"].items()) {
                std::string path = "/schedules/" + name;
                if (!value.is_array() || value.empty()) {
                    ctx.add("bad-type", "a schedule must be a non-empty array of agent ids", path);
                    continue;
                }
                std::vector<AgentIdx> order;
                bool ok = true;
                for (const json& entry : value) {
                    if (!entry.is_string() || !agent_index.count(entry.get<std::string>())) {
                        ctx.add("unknown-agent", "schedules may only name declared agents", path);
                        ok = false;
                        break;
                    }
                    order.push_back(agent_index[entry.get<std::string>()]);
                }
                if (ok) schedules[name] = std::move(order);
            }
        }
    }

    std::map<std::string, std::vector<std::string>> bundles;
    if (root.contains("bundles")) {
        if (!root["bundles"].is_object()) {
            ctx.add("bad-type", "'bundles' must map names to agent-to-security assignments",
                    "/bundles");
        } else {
            for (const auto& [name, value] : root["bundles"].items()) {
                std::string path = "/bundles/" + name;
                if (!value.is_object()) {
                    ctx.add("bad-type", "a bundle must map agent ids to security names", path);
                    continue;
                }
                std::vector<std::string> assignment(agents.size());
                bool ok = true;
                for (const auto& [agent, sec] : value.items()) {
                    auto it = agent_index.find(agent);
                    if (it == agent_index.end()) {
                        ctx.add("unknown-agent", "'" + agent + "' is not a declared agent",
                                path + "/" + agent);
                        ok = false;
                        continue;
                    }
                    if (!sec.is_string() || !securities.count(sec.get<std::string>())) {
                        ctx.add("unknown-security",
                                "bundle entries must name securities declared in this document",
                                path + "/" + agent);
                        ok = false;
                        continue;
                    }
                    assignment[static_cast<std::size_t>(it->second)] = sec.get<std::string>();
                }
                for (std::size_t i = 0; i < agents.size() && ok; ++i)
                    if (assignment[i].empty()) {
                        ctx.add("bundle-incomplete",
                                "bundle assigns no security to agent '" + agents[i] + "'", path);
                        ok = false;
                    }
                if (ok && securities_ok) bundles[name] = std::move(assignment);
            }
        }
    }

    std::vector<std::string> notes;
    if (root.contains("notes")) {
        if (!root["notes"].is_array()) {
            ctx.add("bad-type", "'notes' must be an array of strings", "/notes");
        } else {
            for (const json& entry : root["notes"]) {
                if (!entry.is_string()) {
                    ctx.add("bad-type", "'notes' must be an array of strings", "/notes");
                    break;
                }
                notes.push_back(entry.get<std::string>());
            }
        }
    }

    if (!result.diagnostics.empty()) return result;

    std::vector<Partition> final_partitions;
    std::vector<Prior> final_priors;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        final_partitions.push_back(std::move(*partitions[i]));
        final_priors.push_back(std::move(*priors[i]));
    }
    try {
        Model model(StateSpace(states), agents, std::move(final_partitions),
                    std::move(final_priors));
        result.document = ModelDocument{schema, std::move(model), std::move(securities),
                                        std::move(schedules), std::move(bundles),
                                        std::move(notes)};
    } catch (const std::invalid_argument& err) {
        ctx.add("model-invalid", err.what(), "");
    }
    return result;
}

ParseResult load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.diagnostics.push_back(
            {"io-error", "cannot read model file '" + path + "'", "", 0, 0});
        return result;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

std::string serialize_model(const ModelDocument& doc) {
    const Model& model = doc.model;
    ordered_json j;
    j["schema"] = doc.schema;
    j["states"] = model.space().ids();
    j["agents"] = model.agents();

    ordered_json partitions = ordered_json::object();
    for (AgentIdx i = 0; i < model.n_agents(); ++i) {
        ordered_json blocks = ordered_json::array();
        for (const StateSet& block : model.partition(i).blocks()) {
            ordered_json ids = ordered_json::array();
            for (StateIdx s : block) ids.push_back(model.space().id(s));
            blocks.push_back(std::move(ids));
        }
        partitions[model.agent_id(i)] = std::move(blocks);
    }
    j["partitions"] = std::move(partitions);

    ordered_json priors = ordered_json::object();
    for (AgentIdx i = 0; i < model.n_agents(); ++i) {
        ordered_json masses = ordered_json::object();
        for (StateIdx s = 0; s < model.n_states(); ++s)
            masses[model.space().id(s)] = format_rat(model.prior(i)[s]);
        priors[model.agent_id(i)] = std::move(masses);
    }
    j["priors"] = std::move(priors);

    if (!doc.securities.empty()) {
        ordered_json securities = ordered_json::object();
        for (const auto& [name, security] : doc.securities) {
            ordered_json payoff = ordered_json::object();
            for (StateIdx s = 0; s < model.n_states(); ++s)
                payoff[model.space().id(s)] = format_rat(security[s]);
            securities[name] = std::move(payoff);
        }
        j["securities"] = std::move(securities);
    }
    if (!doc.schedules.empty()) {
        ordered_json schedules = ordered_json::object();
        for (const auto& [name, order] : doc.schedules) {
            ordered_json ids = ordered_json::array();
            for (AgentIdx a : order) ids.push_back(model.agent_id(a));
            schedules[name] = std::move(ids);
        }
        j["schedules"] = std::move(schedules);
    }
    if (!doc.bundles.empty()) {
        ordered_json bundles = ordered_json::object();
        for (const auto& [name, assignment] : doc.bundles) {
            ordered_json entries = ordered_json::object();
            for (AgentIdx i = 0; i < model.n_agents(); ++i)
                entries[model.agent_id(i)] = assignment[static_cast<std::size_t>(i)];
            bundles[name] = std::move(entries);
        }
        j["bundles"] = std::move(bundles);
    }
    if (!doc.notes.empty()) j["notes"] = doc.notes;
    return j.dump(2) + "\n";
}

const Security& find_security(const ModelDocument& doc, const std::string& name) {
    auto it = doc.securities.find(name);
    if (it != doc.securities.end()) return it->second;
    std::string available;
    for (const auto& [known, _] : doc.securities)
        available += available.empty() ? known : ", " + known;
    throw std::invalid_argument("unknown security '" + name + "' (document has: " +
                                (available.empty() ? "none" : available) + ")");
}

std::vector<AgentIdx> find_schedule(const ModelDocument& doc, const std::string& name) {
    auto it = doc.schedules.find(name);
    if (it != doc.schedules.end()) return it->second;
    std::string available;
    for (const auto& [known, _] : doc.schedules)
        available += available.empty() ? known : ", " + known;
    throw std::invalid_argument("unknown schedule '" + name + "' (document has: " +
                                (available.empty() ? "none" : available) + ")");
}

SecurityBundle make_bundle(const ModelDocument& doc, const std::string& name) {
    auto it = doc.bundles.find(name);
    if (it == doc.bundles.end()) {
        std::string available;
        for (const auto& [known, _] : doc.bundles)
            available += available.empty() ? known : ", " + known;
        throw std::invalid_argument("unknown bundle '" + name + "' (document has: " +
                                    (available.empty() ? "none" : available) + ")");
    }
    SecurityBundle bundle;
    for (const std::string& security : it->second)
        bundle.securities.push_back(find_security(doc, security));
    return bundle;
}

}  // namespace notrade
