// Copyright 2026 The srm-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srmforge/arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <regex>
#include <sstream>

#include "srmforge/error.hpp"

namespace srmforge::arff {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
    }
    return true;
}

class Cursor {
public:
    Cursor(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }
    char peek() { return done() ? '\0' : text_[pos_]; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    /// A quoted string or a bare token ending at whitespace or one of `stops`.
    std::string token(std::string_view stops) {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of line");
        char q = text_[pos_];
        if (q == '\'' || q == '"') {
            ++pos_;
            std::string out;
            while (true) {
                if (pos_ >= text_.size()) fail("unterminated quoted string");
                char c = text_[pos_++];
                if (c == q) break;
                if (c == '\\' && pos_ < text_.size()) {
                    char e = text_[pos_++];
                    switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    default: out += e;
                    }
                    continue;
                }
                out += c;
            }
            return out;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               stops.find(text_[pos_]) == std::string_view::npos)
            ++pos_;
        if (start == pos_) fail("expected a value");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string rest() {
        skip_space();
        auto r = std::string(trim(text_.substr(pos_)));
        pos_ = text_.size();
        return r;
    }

    [[noreturn]] void fail(const std::string& why) const { throw FormatError("line " + std::to_string(line_), why); }

private:
    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

bool needs_quote(std::string_view s) {
    if (s.empty()) return true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '\'' || c == '"' || c == '{' || c == '}' ||
            c == '%' || c == '\\' || c == '?')
            return true;
    }
    return false;
}

std::string nominal_header(const std::vector<std::string>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += quote(values[i]);
    }
    return out + "}";
}

} // namespace

std::string quote(std::string_view s) {
    if (!needs_quote(s)) return std::string(s);
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

std::string format_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

int label_count_marker(std::string_view relation) {
    static const std::regex marker(R"((^|\s|:)-C\s+(-?\d+))");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(relation.begin(), relation.end(), m, marker)) return 0;
    return std::stoi(m[2].str());
}

Document parse(std::string_view text) {
    Document doc;
    bool in_data = false;
    bool saw_relation = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '%') continue;

        Cursor cur(line, line_no);
        if (!in_data) {
            if (line.front() != '@') cur.fail("expected a header declaration");
            std::string keyword = cur.token("");
            if (iequals(keyword, "@relation")) {
                doc.relation = cur.token("");
                saw_relation = true;
            } else if (iequals(keyword, "@attribute")) {
                if (!saw_relation) cur.fail("@attribute before @relation");
                Attribute a;
                a.name = cur.token("{");
                if (cur.accept('{')) {
                    while (true) {
                        a.values.push_back(cur.token(",}"));
                        if (cur.accept('}')) break;
                        cur.expect(',');
                    }
                    if (!cur.done()) cur.fail("trailing text after nominal values");
                } else {
                    std::string type = cur.rest();
                    if (iequals(type, "numeric") || iequals(type, "real") || iequals(type, "integer")) {
                        a.numeric = true;
                    } else {
                        cur.fail("unsupported attribute type '" + type + "'");
                    }
                }
                doc.attributes.push_back(std::move(a));
            } else if (iequals(keyword, "@data")) {
                in_data = true;
            } else {
                cur.fail("unknown declaration '" + keyword + "'");
            }
            continue;
        }

        if (line.front() == '{') cur.fail("sparse rows are not supported");
        std::vector<std::string> row;
        while (true) {
            row.push_back(cur.token(","));
            if (cur.done()) break;
            cur.expect(',');
        }
        if (row.size() != doc.attributes.size())
            cur.fail("row has " + std::to_string(row.size()) + " cells, header declares " +
                     std::to_string(doc.attributes.size()));
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& a = doc.attributes[i];
            if (row[i] == "?") cur.fail("missing values are not supported (attribute " + a.name + ")");
            if (!a.numeric && std::find(a.values.begin(), a.values.end(), row[i]) == a.values.end())
                cur.fail("value '" + row[i] + "' not declared for attribute " + a.name);
        }
        doc.rows.push_back(std::move(row));
    }
    if (!saw_relation) throw FormatError("line 1", "missing @relation");
    if (!in_data) throw FormatError("line " + std::to_string(line_no), "missing @data");
    return doc;
}

std::string emit(const std::vector<LabeledRow>& records, const features::FeatureSchema& schema, const std::string& relation) {
    using features::FeatureKind;
    for (const auto& [v, labels] : records) features::check_vector(v, schema);

    std::ostringstream out;
    out << "% schema " << schema.version << "\n";
    out << "@relation " << quote(relation + ": -C " + std::to_string(kLabelCount)) << "\n\n";
    for (auto id : kLabelIds) out << "@attribute " << id << " {0,1}\n";
    for (const auto& e : schema.entries) {
        out << "@attribute " << quote(e.id) << " ";
        switch (e.kind) {
        case FeatureKind::numeric: out << "numeric"; break;
        case FeatureKind::binary: out << "{0,1}"; break;
        case FeatureKind::categorical: out << nominal_header(e.categories); break;
        }
        out << "\n";
    }
    out << "\n@data\n";
    for (const auto& [v, labels] : records) {
        for (std::size_t i = 0; i < kLabelCount; ++i) out << (labels.test(i) ? "1" : "0") << ",";
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            if (i) out << ",";
            const auto& e = schema.entries[i];
            switch (e.kind) {
            case FeatureKind::numeric: out << format_number(v.values[i]); break;
            case FeatureKind::binary: out << (v.values[i] != 0 ? "1" : "0"); break;
            case FeatureKind::categorical: out << quote(e.categories[static_cast<std::size_t>(v.values[i])]); break;
            }
        }
        out << "\n";
    }
    return out.str();
}

std::vector<LabeledRow> read_labeled(std::string_view text, const features::FeatureSchema& schema) {
    using features::FeatureKind;
    Document doc = parse(text);
    int marker = label_count_marker(doc.relation);
    if (marker != static_cast<int>(kLabelCount))
        throw SchemaMismatch("relation '" + doc.relation + "' must carry -C " + std::to_string(kLabelCount));
    if (doc.attributes.size() != kLabelCount + schema.size())
        throw SchemaMismatch("ARFF declares " + std::to_string(doc.attributes.size()) + " attributes, expected " +
                             std::to_string(kLabelCount + schema.size()));
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        const auto& a = doc.attributes[i];
        if (a.name != kLabelIds[i] || a.numeric || a.values != std::vector<std::string>{"0", "1"})
            throw SchemaMismatch("attribute " + std::to_string(i + 1) + " must be label " + std::string(kLabelIds[i]) + " {0,1}");
    }
    for (std::size_t j = 0; j < schema.size(); ++j) {
        const auto& a = doc.attributes[kLabelCount + j];
        const auto& e = schema.entries[j];
        bool ok = a.name == e.id;
        if (e.kind == FeatureKind::numeric) ok = ok && a.numeric;
        if (e.kind == FeatureKind::binary) ok = ok && !a.numeric && a.values == std::vector<std::string>{"0", "1"};
        if (e.kind == FeatureKind::categorical) ok = ok && !a.numeric && a.values == e.categories;
        if (!ok) throw SchemaMismatch("attribute '" + a.name + "' does not match schema entry '" + e.id + "'");
    }

    std::vector<LabeledRow> out;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const auto& row = doc.rows[r];
        LabelSet labels;
        for (std::size_t i = 0; i < kLabelCount; ++i) labels.set(i, row[i] == "1");
        features::FeatureVector v;
        v.schema_version = schema.version;
        for (std::size_t j = 0; j < schema.size(); ++j) {
            const auto& cell = row[kLabelCount + j];
            const auto& e = schema.entries[j];
            if (e.kind == FeatureKind::numeric) {
                double x = 0;
                auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
                if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                    throw FormatError("row " + std::to_string(r + 1), "bad number '" + cell + "' for " + e.id);
                v.values.push_back(x);
            } else if (e.kind == FeatureKind::binary) {
                v.values.push_back(cell == "1" ? 1.0 : 0.0);
            } else {
                auto it = std::find(e.categories.begin(), e.categories.end(), cell);
                v.values.push_back(static_cast<double>(it - e.categories.begin()));
            }
        }
        features::check_vector(v, schema);
        out.emplace_back(std::move(v), labels);
    }
    return out;
}

} // namespace srmforge::arff
