#pragma once

// One JSON object per line for reports, or a CSV table with a header row.
// Field order is fixed so reruns diff cleanly. Integers that fit in 64 bits
// are written as numbers, larger ones as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "cdna/analysis.hpp"

namespace cdna {

namespace detail {

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
    if (v >= 0 && v <= BigInt(UINT64_MAX)) return static_cast<std::uint64_t>(v);
    return v.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(r.kind));
    j["M"] = r.M;
    j["n"] = r.n;
    j["t"] = r.t;
    j["bound"] = r.bound ? detail::big_to_json(*r.bound) : nlohmann::ordered_json(nullptr);
    j["achieved"] = r.achieved ? detail::big_to_json(*r.achieved) : nlohmann::ordered_json(nullptr);
    j["method"] = r.method;
    j["complete"] = r.complete;
    j["counterexamples"] = nlohmann::ordered_json::array();
    return j;
}

inline nlohmann::ordered_json to_json(const ClaimRecord& r) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["M"] = r.params.M;
    j["n"] = r.params.n;
    j["t"] = r.params.t;
    j["cases"] = r.cases;
    j["complete"] = r.complete;
    j["counterexamples"] = r.counterexamples;
    return j;
}

inline std::string bound_csv_header() { return "kind,M,n,t,bound,achieved,method,complete\n"; }

inline std::string to_csv_line(const BoundReport& r) {
    auto opt = [](const std::optional<BigInt>& v) { return v ? v->str() : std::string(); };
    return std::string(to_string(r.kind)) + ',' + std::to_string(r.M) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.t) + ',' + opt(r.bound) + ',' + opt(r.achieved) + ',' + detail::csv_field(r.method) +
           ',' + (r.complete ? "true" : "false") + '\n';
}

inline std::string claim_csv_header() { return "claim,M,n,t,cases,complete,counterexamples\n"; }

inline std::string to_csv_line(const ClaimRecord& r) {
    std::string joined;
    for (const auto& c : r.counterexamples) joined += (joined.empty() ? "" : ";") + c;
    return r.claim + ',' + std::to_string(r.params.M) + ',' + std::to_string(r.params.n) + ',' +
           std::to_string(r.params.t) + ',' + std::to_string(r.cases) + ',' + (r.complete ? "true" : "false") + ',' +
           detail::csv_field(joined) + '\n';
}

}  // namespace cdna
