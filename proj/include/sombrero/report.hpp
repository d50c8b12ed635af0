#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sombrero {

inline constexpr const char* kToolName = "sombrero";
inline constexpr const char* kToolVersion = "0.1.0";

/// 9 significant digits, "%.9g". Non-finite values print as "nan"/"inf".
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

/// `x` rounded to 9 significant digits so that every serialization of it
/// (human table, JSON) shows the same digits.
inline nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format_number(x).c_str(), nullptr);
}

/// Machine-readable record of one CLI run. Field order is insertion order and
/// is kept through parse → serialize.
class RunSummary {
public:
    using Json = nlohmann::ordered_json;

    explicit RunSummary(std::string_view command) {
        doc_["tool"] = kToolName;
        doc_["version"] = kToolVersion;
        doc_["command"] = std::string(command);
    }

    static RunSummary parse(std::string_view text) {
        RunSummary s;
        s.doc_ = Json::parse(text);
        return s;
    }

    Json& doc() { return doc_; }
    const Json& doc() const { return doc_; }

    Json& operator[](const std::string& key) { return doc_[key]; }

    std::string to_json() const { return doc_.dump(2) + "\n"; }

    /// Indented key/value listing of the same document.
    std::string to_human() const {
        std::ostringstream os;
        render(os, doc_, 0);
        return os.str();
    }

private:
    RunSummary() = default;

    static std::string scalar_text(const Json& v) {
        if (v.is_null()) return "-";
        if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_number(v.get<double>());
        return v.dump();
    }

    static void render(std::ostream& os, const Json& node, int depth) {
        const std::string pad(2 * depth, ' ');
        if (node.is_object()) {
            for (const auto& [key, value] : node.items()) {
                if (value.is_structured()) {
                    os << pad << key << ":\n";
                    render(os, value, depth + 1);
                } else {
                    std::string label = key;
                    if (label.size() < 18) label.resize(18, ' ');
                    os << pad << label << " " << scalar_text(value) << "\n";
                }
            }
        } else if (node.is_array()) {
            std::size_t i = 0;
            for (const auto& value : node) {
                if (value.is_structured()) {
                    os << pad << "[" << i << "]\n";
                    render(os, value, depth + 1);
                } else {
                    os << pad << "- " << scalar_text(value) << "\n";
                }
                ++i;
            }
        } else {
            os << pad << scalar_text(node) << "\n";
        }
    }

    Json doc_;
};

/// Comma-separated dataset: one header row, LF endings, 9-digit floats,
/// empty field for missing values.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Cells hold a number or nothing.
    void add_row(const std::vector<std::optional<double>>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            if (cells[i]) line += format_number(*cells[i]);
        }
        rows_.push_back(std::move(line));
    }

    std::size_t rows() const { return rows_.size(); }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) out += ',';
            out += header_[i];
        }
        out += '\n';
        for (const auto& r : rows_) {
            out += r;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::string> rows_;
};

}  // namespace sombrero
