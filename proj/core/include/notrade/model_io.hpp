#pragma once

#include <map>
#include <optional>
#include <string>

#include "notrade/model.hpp"
#include "notrade/multi_security.hpp"

namespace notrade {

// One validation failure in a model document. Syntax errors carry line and
// column; semantic errors carry the JSON pointer of the offending element.
struct Diagnostic {
    std::string code;  // stable kebab-case identifier, e.g. "prior-not-normalized"
    std::string message;
    std::string path;
    int line = 0;
    int column = 0;
};

// In-memory form of a model file: the validated model plus named securities,
// announcement schedules, and zero-sum bundles (per-agent security names in
// model agent order). Notes carry free-form provenance remarks.
struct ModelDocument {
    int schema = 1;
    Model model;
    std::map<std::string, Security> securities;
    std::map<std::string, std::vector<AgentIdx>> schedules;
    std::map<std::string, std::vector<std::string>> bundles;
    std::vector<std::string> notes;

    bool operator==(const ModelDocument&) const = default;
};

struct ParseResult {
    std::optional<ModelDocument> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

// Parses and validates a JSON model document, collecting every diagnostic it
// can rather than stopping at the first.
ParseResult parse_model(const std::string& text);

// parse_model over a file's bytes; unreadable files yield an "io-error"
// diagnostic.
ParseResult load_model_file(const std::string& path);

// Canonical serialization: fixed top-level key order, agents in model order,
// named sections sorted by name, rationals as exact strings. Empty optional
// sections are omitted. parse_model inverts it bit-exactly.
std::string serialize_model(const ModelDocument& doc);

// Named lookups; unknown names throw std::invalid_argument listing what is
// available.
const Security& find_security(const ModelDocument& doc, const std::string& name);
std::vector<AgentIdx> find_schedule(const ModelDocument& doc, const std::string& name);
SecurityBundle make_bundle(const ModelDocument& doc, const std::string& name);

}  // namespace notrade
