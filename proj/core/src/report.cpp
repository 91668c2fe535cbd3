#include "notrade/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace notrade {

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "table") return ReportFormat::Table;
    if (name == "csv") return ReportFormat::Csv;
    throw std::invalid_argument("unknown format '" + name + "' (expected json, table, or csv)");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

namespace {

std::string scalar_text(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void flatten(const Json& value, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (value.is_object()) {
        if (value.empty()) rows.emplace_back(prefix, "{}");
        for (const auto& [key, child] : value.items())
            flatten(child, prefix.empty() ? key : prefix + "." + key, rows);
        return;
    }
    if (value.is_array()) {
        if (value.empty()) rows.emplace_back(prefix, "[]");
        for (std::size_t i = 0; i < value.size(); ++i)
            flatten(value[i], prefix + "[" + std::to_string(i) + "]", rows);
        return;
    }
    rows.emplace_back(prefix, scalar_text(value));
}

std::string emit_table(const Report& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("command", report.command);
    rows.emplace_back("inputs_digest", report.inputs_digest);
    rows.emplace_back("exit_status", std::to_string(report.exit_status));
    flatten(report.body, "", rows);
    std::size_t width = 0;
    for (const auto& [key, value] : rows) width = std::max(width, key.size());
    std::string out;
    for (const auto& [key, value] : rows) {
        out += key;
        out.append(width - key.size() + 2, ' ');
        out += value;
        out += '\n';
    }
    return out;
}

std::string emit_csv(const Report& report) {
    if (!report.body.contains("rounds") || !report.body["rounds"].is_array())
        throw std::invalid_argument("csv output needs a market run with a rounds array");
    std::string out = "t,agent,price,payoff\n";
    for (const Json& round : report.body["rounds"]) {
        for (const char* field : {"t", "agent", "price", "payoff"})
            if (!round.contains(field))
                throw std::invalid_argument("csv output needs t, agent, price, payoff per round");
        out += scalar_text(round["t"]) + "," + scalar_text(round["agent"]) + "," +
               scalar_text(round["price"]) + "," + scalar_text(round["payoff"]) + "\n";
    }
    return out;
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: {
            Json root;
            root["command"] = report.command;
            root["inputs_digest"] = report.inputs_digest;
            root["exit_status"] = report.exit_status;
            root["result"] = report.body;
            return root.dump(2) + "\n";
        }
        case ReportFormat::Table:
            return emit_table(report);
        case ReportFormat::Csv:
            return emit_csv(report);
    }
    throw std::logic_error("unreachable report format");
}

}  // namespace notrade
