#pragma once

// Text formats shared by the CLI and the golden-file tests: scan CSV, its
// JSON mirror, and the degree-profile JSON document.
//
// Arbitrary-precision integers are written as JSON strings so that no
// consumer rounds them through a double.

#include <nlohmann/json.hpp>

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "numdim/numerical_dimension.hpp"
#include "numdim/sections.hpp"

namespace numdim {

inline constexpr std::string_view kScanCsvHeader = "m,rounded_h1,rounded_h2,k_m,used_tau1,h0,lower_ok,upper_ok";

inline const char* to_cstr(bool b) { return b ? "true" : "false"; }

inline std::string to_csv_row(const GrowthRecord& r) {
    std::ostringstream out;
    out << r.m << ',' << to_string(r.rounded.h1) << ',' << to_string(r.rounded.h2) << ',' << r.k_m << ','
        << to_cstr(r.used_tau1) << ',' << r.h0 << ',' << to_cstr(r.lower_ok) << ',' << to_cstr(r.upper_ok);
    return out.str();
}

inline void write_scan_csv(std::ostream& out, const std::vector<GrowthRecord>& records) {
    out << kScanCsvHeader << '\n';
    for (const GrowthRecord& r : records)
        out << to_csv_row(r) << '\n';
}

inline nlohmann::ordered_json to_json(const GrowthRecord& r) {
    nlohmann::ordered_json j;
    j["m"] = r.m.str();
    j["rounded_h1"] = to_string(r.rounded.h1);
    j["rounded_h2"] = to_string(r.rounded.h2);
    j["k_m"] = r.k_m;
    j["used_tau1"] = r.used_tau1;
    j["h0"] = r.h0.str();
    j["lower_ok"] = r.lower_ok;
    j["upper_ok"] = r.upper_ok;
    return j;
}

inline nlohmann::ordered_json to_json(const ScanResult& result, const DivisorClass& ample, const GrowthBounds& bounds) {
    nlohmann::ordered_json j;
    j["ample"] = to_string(ample);
    j["bounds"] = {bounds.lower.str(), bounds.upper.str()};
    j["rows"] = nlohmann::ordered_json::array();
    for (const GrowthRecord& r : result.records)
        j["rows"].push_back(to_json(r));
    j["failures"] = nlohmann::ordered_json::array();
    for (const ScanFailure& f : result.failures)
        j["failures"].push_back({{"m", f.m.str()}, {"error", std::string(to_string(f.kind))}, {"message", f.message}});
    j["verdict"] = result.pass() ? "pass" : "fail";
    return j;
}

// Nonnegative or signed decimal integer, digits only.
inline Integer parse_integer(std::string_view text) {
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size())
        throw ParseError(start, "expected an integer in '" + std::string(text) + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError(i, "expected a digit in '" + std::string(text) + "'");
    Integer value(std::string(text.substr(start)));
    return text[0] == '-' ? Integer(-value) : value;
}

// Plain decimal number such as "8.999999999" or "1e3".
inline Decimal50 parse_decimal(std::string_view text) {
    if (text.empty())
        throw ParseError(0, "expected a decimal number");
    bool digit_seen = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c)))
            digit_seen = true;
        else if (c != '.' && c != '-' && c != '+' && c != 'e' && c != 'E')
            throw ParseError(i, "unexpected character in decimal '" + std::string(text) + "'");
    }
    if (!digit_seen)
        throw ParseError(0, "expected a decimal number in '" + std::string(text) + "'");
    try {
        return Decimal50(std::string(text));
    } catch (const std::exception&) {
        throw ParseError(0, "malformed decimal '" + std::string(text) + "'");
    }
}

enum class DegreeFormat { decimal, quadrat };

inline DegreeValue parse_degree(std::string_view text, DegreeFormat format) {
    if (format == DegreeFormat::quadrat)
        return parse_quadrat(text);
    return parse_decimal(text);
}

// {"dim": N, "entries": [{"lambda": ..., "jtilde": ...}, ...],
//  "lambda_format": "decimal" | "quadrat"}
inline DegreeProfile profile_from_json(const nlohmann::json& doc) {
    auto bad = [](const std::string& what) { return ParseError(0, "degree profile: " + what); };
    if (!doc.is_object())
        throw bad("expected a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw bad("'dim' must be an integer");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw bad("'entries' must be an array");
    DegreeFormat format = DegreeFormat::decimal;
    if (doc.contains("lambda_format")) {
        const auto& f = doc["lambda_format"];
        if (f == "quadrat")
            format = DegreeFormat::quadrat;
        else if (f != "decimal")
            throw bad("'lambda_format' must be \"decimal\" or \"quadrat\"");
    }
    DegreeProfile profile;
    profile.dim = doc["dim"].get<int>();
    for (const auto& entry : doc["entries"]) {
        if (!entry.is_object() || !entry.contains("lambda"))
            throw bad("each entry needs 'lambda'");
        const auto& lam = entry["lambda"];
        std::string text;
        if (lam.is_string())
            text = lam.get<std::string>();
        else if (lam.is_number())
            text = lam.dump();
        else
            throw bad("'lambda' must be a string or number");
        int jtilde = 0;
        if (entry.contains("jtilde")) {
            if (!entry["jtilde"].is_number_integer())
                throw bad("'jtilde' must be an integer");
            jtilde = entry["jtilde"].get<int>();
        }
        profile.entries.push_back({parse_degree(text, format), jtilde});
    }
    return profile;
}

} // namespace numdim
