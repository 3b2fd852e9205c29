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

#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srmforge {

inline constexpr std::size_t kLabelCount = 10;

/// The fixed SRM taxonomy: three roles followed by seven CWE classes.
enum class Label : std::size_t {
    source = 0,
    sink,
    sanitizer,
    cwe78,
    cwe79,
    cwe89,
    cwe306,
    cwe601,
    cwe862,
    cwe863,
};

inline constexpr std::array<std::string_view, kLabelCount> kLabelIds = {
    "source", "sink", "sanitizer", "cwe78", "cwe79", "cwe89", "cwe306", "cwe601", "cwe862", "cwe863",
};

inline constexpr std::array<Label, 7> kCweLabels = {
    Label::cwe78, Label::cwe79, Label::cwe89, Label::cwe306, Label::cwe601, Label::cwe862, Label::cwe863,
};

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }
constexpr std::string_view label_id(Label l) noexcept { return kLabelIds[index_of(l)]; }
std::optional<Label> parse_label(std::string_view id);

constexpr bool is_cwe(Label l) noexcept { return index_of(l) >= index_of(Label::cwe78); }

/// "cwe89" -> "CWE-89"
std::string cwe_rule_id(Label cwe);
/// Human-readable weakness name, e.g. "SQL Injection".
std::string_view cwe_title(Label cwe);

/// Ten booleans aligned with the taxonomy order. The empty set marks a non-SRM.
class LabelSet {
public:
    LabelSet() = default;
    LabelSet(std::initializer_list<Label> labels) {
        for (Label l : labels) set(l);
    }

    static LabelSet from_bits(unsigned bits) {
        LabelSet s;
        s.bits_ = std::bitset<kLabelCount>(bits);
        return s;
    }

    bool has(Label l) const { return bits_.test(index_of(l)); }
    bool test(std::size_t i) const { return bits_.test(i); }
    void set(Label l, bool on = true) { bits_.set(index_of(l), on); }
    void set(std::size_t i, bool on = true) { bits_.set(i, on); }

    bool empty() const { return bits_.none(); }
    std::size_t count() const { return bits_.count(); }
    unsigned to_bits() const { return static_cast<unsigned>(bits_.to_ulong()); }

    bool has_role() const { return has(Label::source) || has(Label::sink) || has(Label::sanitizer); }
    bool has_cwe() const;

    /// Proper-or-equal subset in the bit sense.
    bool subset_of(const LabelSet& other) const { return (bits_ & ~other.bits_).none(); }

    /// Taxonomy-ordered bit string, e.g. "1000010000". Used as the stable class id.
    std::string key() const;
    std::vector<std::string> ids() const;

    friend bool operator==(const LabelSet&, const LabelSet&) = default;
    friend bool operator<(const LabelSet& a, const LabelSet& b) { return a.key() < b.key(); }

private:
    std::bitset<kLabelCount> bits_;
};

std::string to_string(const LabelSet& s);

} // namespace srmforge
