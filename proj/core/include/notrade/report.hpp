#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace notrade {

// Reports keep insertion order so serialized output is canonical.
using Json = nlohmann::ordered_json;

enum class ReportFormat { Json, Table, Csv };

// Accepts "json", "table", "csv"; anything else is std::invalid_argument.
ReportFormat parse_format(const std::string& name);

struct Report {
    std::string command;
    std::string inputs_digest;
    int exit_status = 0;
    Json body = Json::object();
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

// Json: canonical-ordered document. Table: aligned path/value rows. Csv:
// price-path export, requiring a body with a rounds array carrying t, agent,
// price, payoff (std::invalid_argument otherwise).
std::string emit_report(const Report& report, ReportFormat format);

}  // namespace notrade
