#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spacecode/bench.hpp"
#include "spacecode/bounds.hpp"
#include "spacecode/one_to_one.hpp"
#include "spacecode/oracle.hpp"
#include "spacecode/source_model.hpp"
#include "spacecode/space_code.hpp"

namespace spacecode {

// JSON carries 15 significant digits, CSV 12; fixed so that output diffs
// reproducibly across platforms.
inline std::string fmt_double(double v, int significant) {
    if (v == 0.0) v = 0.0;  // flush -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

inline std::string fmt_json_double(double v) { return fmt_double(v, 15); }
inline std::string fmt_csv_double(double v) { return fmt_double(v, 12); }

// ---------------------------------------------------------------------------
// Distribution files: JSON {"k": <int>, "probs": [...]} or CSV with a "prob"
// header and one weight per line. Weights need not be normalized.
// ---------------------------------------------------------------------------

inline NormalizeResult parse_distribution(std::string_view text, int k_override = 0,
                                          ZeroPolicy policy = ZeroPolicy::reject) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        throw InvalidDistribution("empty distribution file");
    }
    std::vector<double> weights;
    int k = k_override;
    if (text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidDistribution(std::string("bad JSON: ") + e.what());
        }
        if (!doc.contains("probs") || !doc["probs"].is_array()) {
            throw InvalidDistribution("JSON distribution needs a \"probs\" array");
        }
        for (const auto& v : doc["probs"]) {
            if (!v.is_number()) throw InvalidDistribution("non-numeric probability");
            weights.push_back(v.get<double>());
        }
        if (k_override == 0) {
            if (!doc.contains("k") || !doc["k"].is_number_integer()) {
                throw InvalidAlphabet("JSON distribution needs an integer \"k\"");
            }
            k = doc["k"].get<int>();
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        bool saw_header = false;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.pop_back();
            }
            if (line.empty()) continue;
            if (!saw_header) {
                if (line != "prob") {
                    throw InvalidDistribution("CSV distribution must start with a 'prob' header");
                }
                saw_header = true;
                continue;
            }
            try {
                std::size_t used = 0;
                const double v = std::stod(line, &used);
                if (used != line.size()) throw std::invalid_argument(line);
                weights.push_back(v);
            } catch (const std::exception&) {
                throw InvalidDistribution("bad CSV probability line: " + line);
            }
        }
        if (!saw_header) {
            throw InvalidDistribution("CSV distribution must start with a 'prob' header");
        }
        if (k_override == 0) {
            throw InvalidAlphabet("CSV distributions carry no k; pass an explicit alphabet size");
        }
    }
    return normalize(weights, k, policy);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidDistribution("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline NormalizeResult load_distribution(const std::string& path, int k_override = 0,
                                         ZeroPolicy policy = ZeroPolicy::reject) {
    return parse_distribution(read_file(path), k_override, policy);
}

// ---------------------------------------------------------------------------
// Codebook JSON: {"kind": "one_to_one" | "one_to_one_eps" | "space_prefix",
// "k": <int>, "codewords": ["1_", "0_", "11", ...]}. The space mark prints
// as '_' and the empty word as "".
// ---------------------------------------------------------------------------

inline std::string codebook_to_json(const SpaceCodebook& book) {
    std::string out = "{\"kind\": \"space_prefix\", \"k\": " + std::to_string(book.k) +
                      ", \"codewords\": [";
    for (std::size_t i = 0; i < book.n(); ++i) {
        if (i > 0) out += ", ";
        out += '"';
        out += book.entries[i].rendered();
        out += '"';
    }
    out += "]}";
    return out;
}

inline std::string codebook_to_json(const OneToOneCode& code) {
    std::string out = std::string("{\"kind\": \"") +
                      (code.uses_epsilon ? "one_to_one_eps" : "one_to_one") +
                      "\", \"k\": " + std::to_string(code.k) + ", \"codewords\": [";
    for (std::size_t i = 0; i < code.n(); ++i) {
        if (i > 0) out += ", ";
        out += '"';
        out += code.codewords[i];
        out += '"';
    }
    out += "]}";
    return out;
}

using ParsedCodebook = std::variant<SpaceCodebook, OneToOneCode>;

/// Parses and validates a codebook file. Space books are checked for
/// prefix-freeness; one-to-one books for distinct codewords.
inline ParsedCodebook parse_codebook(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidCodebook(std::string("bad JSON: ") + e.what());
    }
    if (!doc.contains("kind") || !doc["kind"].is_string() || !doc.contains("k") ||
        !doc["k"].is_number_integer() || !doc.contains("codewords") ||
        !doc["codewords"].is_array()) {
        throw InvalidCodebook("codebook needs \"kind\", \"k\" and \"codewords\"");
    }
    const std::string kind = doc["kind"].get<std::string>();
    const int k = doc["k"].get<int>();
    if (k < 2 || k > kMaxAlphabet) {
        throw InvalidCodebook("alphabet size out of range");
    }
    std::vector<std::string> words;
    for (const auto& w : doc["codewords"]) {
        if (!w.is_string()) throw InvalidCodebook("codewords must be strings");
        words.push_back(w.get<std::string>());
    }
    if (words.empty()) throw InvalidCodebook("codebook has no codewords");

    if (kind == "space_prefix") {
        SpaceCodebook book;
        book.k = k;
        for (const auto& w : words) {
            SpaceCodeword entry;
            entry.has_space = !w.empty() && w.back() == kSpaceMark;
            entry.digits = entry.has_space ? w.substr(0, w.size() - 1) : w;
            if (entry.digits.empty()) {
                throw InvalidCodebook("space codewords need at least one digit");
            }
            for (char c : entry.digits) {
                const int d = char_digit(c);
                if (d < 0 || d >= k) {
                    throw InvalidCodebook("codeword \"" + w + "\" has letters outside the alphabet");
                }
            }
            book.entries.push_back(std::move(entry));
        }
        if (!is_prefix_free(book)) {
            throw InvalidCodebook("space codebook is not prefix-free");
        }
        return book;
    }
    if (kind == "one_to_one" || kind == "one_to_one_eps") {
        OneToOneCode code;
        code.k = k;
        code.uses_epsilon = kind == "one_to_one_eps";
        std::size_t empties = 0;
        for (const auto& w : words) {
            if (w.empty()) {
                ++empties;
            } else {
                for (char c : w) {
                    const int d = char_digit(c);
                    if (d < 0 || d >= k) {
                        throw InvalidCodebook("codeword \"" + w +
                                              "\" has letters outside the alphabet");
                    }
                }
            }
            code.codewords.push_back(w);
        }
        if (empties > (code.uses_epsilon ? 1u : 0u)) {
            throw InvalidCodebook("empty codeword not allowed here");
        }
        std::unordered_set<std::string> seen;
        for (const auto& w : code.codewords) {
            if (!seen.insert(w).second) {
                throw InvalidCodebook("duplicate codeword \"" + w + "\"");
            }
        }
        return code;
    }
    throw InvalidCodebook("unknown codebook kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Bounds report JSON.
// ---------------------------------------------------------------------------

inline std::string bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
        case BoundKind::value: return "value";
    }
    return "?";
}

inline std::string bounds_report_to_json(const BoundsReport& report) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(report.n) + ",\n";
    out += "  \"k\": " + std::to_string(report.k) + ",\n";
    out += "  \"H_k\": " + fmt_json_double(report.H_k) + ",\n";
    out += "  \"p1\": " + fmt_json_double(report.p1) + ",\n";
    out += std::string("  \"eps_gap_disagrees\": ") +
           (report.eps_gap_disagrees ? "true" : "false") + ",\n";
    out += "  \"records\": [\n";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const BoundRecord& r = report.records[i];
        out += "    {\"formula_id\": \"" + r.formula_id + "\", \"kind\": \"" +
               bound_kind_name(r.kind) + "\", \"target\": \"" + r.target +
               "\", \"value\": " + fmt_json_double(r.value) +
               ", \"strict\": " + (r.strict ? "true" : "false") + "}";
        out += i + 1 < report.records.size() ? ",\n" : "\n";
    }
    out += "  ]\n}";
    return out;
}

inline std::string oracle_result_to_json(const OracleResult& result) {
    std::string out = "{\n";
    out += "  \"optimal_length\": " + fmt_json_double(result.optimal_length) + ",\n";
    out += "  \"instances_searched\": " + std::to_string(result.instances_searched) + ",\n";
    out += "  \"witness\": " + codebook_to_json(result.witness) + "\n";
    out += "}";
    return out;
}

// ---------------------------------------------------------------------------
// Bench CSV; header fixed, empty cells where the oracle was skipped.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kBenchCsvHeader =
    "trial,family,param,n,k,H_k,L_plus,L_eps,L_space,oracle_opt,huffman_kplus1,lb_space,"
    "th_lb_plain,th_lb_p1,ub_th_plain_exact,ub_th_plain_loose,ub_th_p1,remark_gap,gap_cert";

inline std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
    std::string out{kBenchCsvHeader};
    out += '\n';
    for (const BenchRow& row : rows) {
        out += std::to_string(row.trial);
        out += ',';
        out += family_name(row.family);
        out += ',';
        out += fmt_csv_double(row.param);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.k);
        for (double v : {row.H_k, row.L_plus, row.L_eps, row.L_space}) {
            out += ',';
            out += fmt_csv_double(v);
        }
        out += ',';
        if (row.oracle_opt) out += fmt_csv_double(*row.oracle_opt);
        out += ',';
        out += fmt_csv_double(row.huffman);
        for (double v : {row.lb_space_v, row.th_lb_plain, row.th_lb_p1, row.ub_th_plain_exact,
                         row.ub_th_plain_loose, row.ub_th_p1, row.remark_gap}) {
            out += ',';
            out += fmt_csv_double(v);
        }
        out += ',';
        if (row.gap_cert) out += fmt_csv_double(*row.gap_cert);
        out += '\n';
    }
    return out;
}

}  // namespace spacecode
