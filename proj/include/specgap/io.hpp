#pragma once

// Graph and shuffle-weight file loading (JSON), graph saving, and the
// fixed-order report renderer used by the CLI. Reports are rendered by
// hand so that key order and number formatting are byte-stable.

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specgap/processes.hpp"
#include "specgap/verify.hpp"

namespace specgap::io {

/// Number rendering used across all output files: 17 significant digits.
inline std::string render_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string escape_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline BaseGraph parse_graph(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidInput("graph file: top level must be an object");
    if (!doc.contains("format") || !doc["format"].is_number_integer() || doc["format"] != 1)
        throw InvalidInput("graph file: missing or unsupported format version");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw InvalidInput("graph file: missing vertices list");
    std::vector<std::string> vertices;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw InvalidInput("graph file: vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    const int n = static_cast<int>(vertices.size());
    if (n < 2) throw InvalidInput("graph file: need at least 2 vertices");
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i)
        if (!index.emplace(vertices[static_cast<std::size_t>(i)], i).second)
            throw InvalidInput("graph file: duplicate vertex name");
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    std::set<std::pair<int, int>> seen;
    if (doc.contains("rates")) {
        if (!doc["rates"].is_array()) throw InvalidInput("graph file: rates must be a list");
        for (const auto& e : doc["rates"]) {
            if (!e.is_object() || !e.contains("u") || !e.contains("w") || !e.contains("r"))
                throw InvalidInput("graph file: rate entries need u, w, r");
            const auto iu = index.find(e["u"].get<std::string>());
            const auto iw = index.find(e["w"].get<std::string>());
            if (iu == index.end() || iw == index.end())
                throw InvalidInput("graph file: rate entry references unknown vertex");
            if (!e["r"].is_number()) throw InvalidInput("graph file: r must be a number");
            const double rate = e["r"].get<double>();
            if (iu->second == iw->second) throw InvalidInput("graph file: self-loop entry");
            if (!(rate > 0.0)) throw InvalidInput("graph file: rates must be positive");
            const auto key = std::minmax(iu->second, iw->second);
            if (!seen.insert(key).second)
                throw InvalidInput("graph file: duplicate pair entry");
            r(iu->second, iw->second) = rate;
            r(iw->second, iu->second) = rate;
        }
    }
    return make_base_graph(std::move(vertices), std::move(r));
}

inline BaseGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open graph file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("graph file parse error: " + std::string(e.what()));
    }
    return parse_graph(doc);
}

/// Writes the same schema load_graph reads; one pair per entry, upper
/// triangle only, deterministic order and formatting.
inline std::string render_graph(const BaseGraph& x) {
    std::ostringstream out;
    out << "{\n  \"format\": 1,\n  \"vertices\": [";
    for (int i = 0; i < x.size(); ++i) {
        if (i) out << ", ";
        out << '"' << escape_string(x.vertices[static_cast<std::size_t>(i)]) << '"';
    }
    out << "],\n  \"rates\": [";
    bool first = true;
    for (int u = 0; u < x.size(); ++u) {
        for (int w = u + 1; w < x.size(); ++w) {
            if (x.r(u, w) <= 0.0) continue;
            out << (first ? "\n" : ",\n");
            first = false;
            out << "    {\"u\": \"" << escape_string(x.vertices[static_cast<std::size_t>(u)])
                << "\", \"w\": \"" << escape_string(x.vertices[static_cast<std::size_t>(w)])
                << "\", \"r\": " << render_number(x.r(u, w)) << "}";
        }
    }
    out << (first ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

inline void save_graph(const BaseGraph& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write graph file: " + path);
    out << render_graph(x);
}

/// Shuffle weights: {"format": 1, "sets": [{"vertices": [...], "weight": w}]}.
inline BlockShuffleSpec load_alpha(const std::string& path, const BaseGraph& x) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open alpha file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("alpha file parse error: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("format") || doc["format"] != 1)
        throw InvalidInput("alpha file: missing or unsupported format version");
    if (!doc.contains("sets") || !doc["sets"].is_array())
        throw InvalidInput("alpha file: missing sets list");
    std::map<std::vector<int>, double> alpha;
    for (const auto& entry : doc["sets"]) {
        if (!entry.is_object() || !entry.contains("vertices") || !entry.contains("weight"))
            throw InvalidInput("alpha file: set entries need vertices and weight");
        std::vector<int> subset;
        for (const auto& v : entry["vertices"])
            subset.push_back(x.index_of(v.get<std::string>()));
        std::sort(subset.begin(), subset.end());
        if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
            throw InvalidInput("alpha file: duplicate vertex in a set");
        const double w = entry["weight"].get<double>();
        if (alpha.count(subset)) throw InvalidInput("alpha file: duplicate set");
        alpha.emplace(std::move(subset), w);
    }
    return make_block_shuffle_spec(x.vertices, std::move(alpha));
}

struct ReportOptions {
    bool full_spectrum = false;
    std::vector<double> spectrum; // used when full_spectrum is set
    bool stable_output = false;   // zero the elapsed time for byte-stable output
};

/// ReportFile rendering: fixed key order, 17-significant-digit numbers.
inline std::string render_report(const VerificationReport& report,
                                 const ReportOptions& options = {}) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format\": 1,\n";
    out << "  \"instance\": \"" << escape_string(report.instance) << "\",\n";
    out << "  \"process\": \"" << escape_string(report.process) << "\",\n";
    out << "  \"state_count\": " << report.state_count << ",\n";
    out << "  \"gap\": " << render_number(report.gap) << ",\n";
    auto render_list = [&](const std::vector<double>& values) {
        out << '[';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ", ";
            out << render_number(values[i]);
        }
        out << ']';
    };
    out << "  \"spectrum_head\": ";
    render_list(report.spectrum_head);
    out << ",\n";
    if (options.full_spectrum) {
        out << "  \"spectrum_full\": ";
        render_list(options.spectrum);
        out << ",\n";
    }
    out << "  \"checks\": [";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        out << (i ? ",\n" : "\n");
        out << "    {\"name\": \"" << escape_string(c.name) << "\", \"lhs\": "
            << render_number(c.lhs) << ", \"rhs\": " << render_number(c.rhs)
            << ", \"tol\": " << render_number(c.tol) << ", \"pass\": "
            << (c.pass ? "true" : "false") << "}";
    }
    out << (report.checks.empty() ? "]" : "\n  ]") << ",\n";
    out << "  \"seed\": " << report.seed << ",\n";
    out << "  \"elapsed_ms\": "
        << (options.stable_output ? 0 : static_cast<long long>(report.elapsed_ms + 0.5)) << ",\n";
    out << "  \"overall_pass\": " << (report.overall_pass() ? "true" : "false") << "\n";
    out << "}\n";
    return out.str();
}

} // namespace specgap::io
