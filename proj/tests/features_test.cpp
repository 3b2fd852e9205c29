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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "srmforge/arff.hpp"
#include "srmforge/error.hpp"
#include "srmforge/features.hpp"
#include "test_util.hpp"

using namespace srmforge;
using namespace srmforge::features;
using srmforge::program::index_program;
using srmforge::program::SourceFile;
using srmforge::testing::fixture;
using srmforge::testing::read_file;

namespace {

program::ProgramModel servlet() {
    return index_program({SourceFile::from_text("org/demo/Servlet.java",
                                                 read_file(fixture("servlet/sanitized/org/demo/Servlet.java")))})
        .program;
}

double cell(const FeatureVector& v, std::string_view id) {
    auto i = default_schema().find(id);
    EXPECT_TRUE(i.has_value()) << id;
    return v.values.at(*i);
}

std::string category(const FeatureVector& v, std::string_view id) {
    auto i = *default_schema().find(id);
    return default_schema().entries[i].categories.at(static_cast<std::size_t>(v.values[i]));
}

FeatureVector random_vector(std::mt19937_64& rng) {
    const auto& schema = default_schema();
    FeatureVector v;
    v.schema_version = schema.version;
    std::uniform_real_distribution<double> real(0.0, 500.0);
    for (const auto& e : schema.entries) {
        switch (e.kind) {
        case FeatureKind::numeric: v.values.push_back(rng() % 3 == 0 ? real(rng) : static_cast<double>(rng() % 40)); break;
        case FeatureKind::binary: v.values.push_back(static_cast<double>(rng() % 2)); break;
        case FeatureKind::categorical: v.values.push_back(static_cast<double>(rng() % e.categories.size())); break;
        }
    }
    return v;
}

} // namespace

TEST(TokenMatch, Examples) {
    EXPECT_TRUE(token_match("encodeForSQL", "encod"));
    EXPECT_FALSE(token_match("executeQuery", "redirect"));
    EXPECT_TRUE(token_match("sendRedirect", "redirect"));
    EXPECT_FALSE(token_match("anything", ""));
}

TEST(TokenMatch, CaseInsensitivityProperty) {
    std::mt19937_64 rng(11);
    const std::string alphabet = "abcdeABCDE_$.";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s, t;
        for (int i = 0, n = static_cast<int>(rng() % 12); i < n; ++i) s += alphabet[rng() % alphabet.size()];
        for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) t += static_cast<char>('a' + rng() % 5);
        std::string lowered = s;
        for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        EXPECT_EQ(token_match(s, t), token_match(lowered, t)) << s << " / " << t;
        EXPECT_EQ(token_match(s, t), lowered.find(t) != std::string::npos);
    }
}

TEST(TokenTableTest, DefaultTableHas99LowercaseGroupsLedByTheFiveQuotedTokens) {
    const auto& t = default_token_table();
    ASSERT_EQ(t.groups.size(), 99u);
    std::vector<std::string> first;
    for (int i = 0; i < 5; ++i) first.push_back(t.groups[i].token);
    EXPECT_EQ(first, (std::vector<std::string>{"database", "delete", "replac", "encod", "redirect"}));
    EXPECT_EQ(t, load_token_table(srmforge::testing::data_file("tokens.json").string()));
}

TEST(TokenTableTest, RejectsMalformedTables) {
    EXPECT_THROW(parse_token_table("{"), FormatError);
    EXPECT_THROW(parse_token_table(R"({"schema_version":"x","groups":[]})"), FormatError);
    EXPECT_THROW(parse_token_table(R"({"schema_version":"x","groups":[{"id":"a","token":"SQL","scopes":["method_name"]}]})"),
                 FormatError);
    EXPECT_THROW(parse_token_table(R"({"schema_version":"x","groups":[{"id":"a","token":"sql","scopes":["body"]}]})"),
                 FormatError);
}

TEST(Schema, ArityIs13Numeric99Binary7Categorical) {
    const auto& s = default_schema();
    EXPECT_EQ(s.size(), 119u);
    EXPECT_EQ(s.count(FeatureKind::numeric), 13u);
    EXPECT_EQ(s.count(FeatureKind::binary), 99u);
    EXPECT_EQ(s.count(FeatureKind::categorical), 7u);
    std::set<std::string> ids;
    for (const auto& e : s.entries) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_TRUE(s.entries[11].extension);
    EXPECT_TRUE(s.entries[12].extension);
    EXPECT_FALSE(s.entries[10].extension);
}

TEST(CamelSplit, Examples) {
    EXPECT_EQ(camel_split("HttpServletRequest"), (std::vector<std::string>{"Http", "Servlet", "Request"}));
    EXPECT_EQ(camel_split("ESAPI"), (std::vector<std::string>{"ESAPI"}));
    EXPECT_EQ(camel_split("MySQLCodec"), (std::vector<std::string>{"My", "SQL", "Codec"}));
    EXPECT_EQ(camel_split("url_Helper2"), (std::vector<std::string>{"url", "Helper2"}));
}

TEST(StructuralCounts, ServletDoPost) {
    auto p = servlet();
    const auto* m = p.find_method("org.demo.Servlet.doPost(HttpServletRequest,HttpServletResponse)");
    ASSERT_NE(m, nullptr);
    auto c = structural_counts(*m, p);
    ASSERT_EQ(c.size(), 13u);
    EXPECT_EQ(c[0], 8);  // lines 15-22
    EXPECT_EQ(c[1], 6);  // invocations
    EXPECT_EQ(c[2], 0);  // branches
    EXPECT_EQ(c[3], 0);  // loops
    EXPECT_EQ(c[4], 0);  // handlers
    EXPECT_EQ(c[5], 2);  // parameters
    EXPECT_EQ(c[6], 4);  // usr, query, stmt, rs
    EXPECT_EQ(c[7], 4);  // req, usr, query, stmt
    EXPECT_EQ(c[8], 11); // class lines 12-23 minus the blank line 14
    EXPECT_EQ(c[9], 1);
    EXPECT_EQ(c[10], 1);
    EXPECT_EQ(c[11], 7);
    EXPECT_EQ(c[12], 0);
}

TEST(StructuralCounts, AbstractMethodHasZeroBodyCounts) {
    auto p = index_program({SourceFile::from_text("A.java", "abstract class A { abstract int f(int a, String b, long c); }")})
                 .program;
    auto c = structural_counts(p.classes[0].methods[0], p);
    EXPECT_EQ(c[5], 3);
    for (std::size_t i : {1, 2, 3, 4, 6, 7, 11, 12}) EXPECT_EQ(c[i], 0) << i;
}

TEST(StructuralCounts, IfElseContainingWhile) {
    auto p = index_program({SourceFile::from_text("N.java", R"(class N {
  void f(int a) {
    if (a > 0) {
      a = 1;
    } else {
      while (a < 10) {
        a = a + 1;
      }
    }
  }
})")})
                 .program;
    auto c = structural_counts(p.classes[0].methods[0], p);
    EXPECT_EQ(c[2], 1);
    EXPECT_EQ(c[3], 1);
    EXPECT_EQ(c[12], 2);
}

TEST(ExtractFeatures, ServletQuerTokenFiresThroughInvokedNames) {
    auto p = servlet();
    const auto& m = p.classes[0].methods[0];
    auto v = extract_features(m, p);
    EXPECT_EQ(v.values.size(), 119u);
    EXPECT_EQ(cell(v, "tok_quer"), 1);
    EXPECT_EQ(cell(v, "tok_encod"), 1);
    EXPECT_EQ(cell(v, "tok_servlet"), 1);
    EXPECT_EQ(cell(v, "tok_redirect"), 0);
    EXPECT_EQ(v, extract_features(m, p));
    EXPECT_EQ(category(v, "method_visibility"), "protected");
    EXPECT_EQ(category(v, "parameter_bucket"), "2");
    EXPECT_EQ(category(v, "constructor"), "no");
}

TEST(ExtractFeatures, PublicStaticVoidNoParams) {
    auto p = index_program({SourceFile::from_text("U.java", "public final class U { public static void run() {} U() {} }")})
                 .program;
    auto v = extract_features(p.classes[0].methods[0], p);
    EXPECT_EQ(category(v, "method_visibility"), "public");
    EXPECT_EQ(category(v, "method_static"), "yes");
    EXPECT_EQ(category(v, "return_category"), "void");
    EXPECT_EQ(category(v, "parameter_bucket"), "0");
    EXPECT_EQ(category(v, "class_visibility"), "public");
    EXPECT_EQ(category(v, "class_abstractness"), "concrete");
    EXPECT_EQ(category(v, "constructor"), "no");
    auto ctor = extract_features(p.classes[0].methods[1], p);
    EXPECT_EQ(category(ctor, "constructor"), "yes");
    EXPECT_EQ(category(ctor, "method_visibility"), "default");
}

TEST(ExtractFeatures, ReturnCategories) {
    auto p = index_program({SourceFile::from_text("R.java", R"(interface R {
  int a();
  String b();
  java.util.List<String> c();
  byte[] d();
  Object e();
  void f(int a, int b, int c, int d);
})")})
                 .program;
    std::vector<std::string> got;
    for (const auto& m : p.classes[0].methods) got.push_back(category(extract_features(m, p), "return_category"));
    EXPECT_EQ(got, (std::vector<std::string>{"primitive", "string-like", "collection-like", "collection-like", "other", "void"}));
    auto v = extract_features(p.classes[0].methods[5], p);
    EXPECT_EQ(category(v, "parameter_bucket"), "3+");
    EXPECT_EQ(category(v, "class_abstractness"), "abstract");
    EXPECT_EQ(category(v, "method_visibility"), "public");
}

TEST(ExtractFeatures, AlphaRenamingLeavesEveryCellUnchanged) {
    const char* original = R"(class S {
  String go(String in, java.sql.Statement st) throws Exception {
    String q = "x" + in;
    for (int i = 0; i < 3; i++) { q = q + i; }
    st.executeQuery(q);
    return q;
  }
})";
    const char* renamed = R"(class S {
  String go(String in, java.sql.Statement st) throws Exception {
    String zz = "x" + in;
    for (int k = 0; k < 3; k++) { zz = zz + k; }
    st.executeQuery(zz);
    return zz;
  }
})";
    auto a = index_program({SourceFile::from_text("S.java", original)}).program;
    auto b = index_program({SourceFile::from_text("S.java", renamed)}).program;
    EXPECT_EQ(extract_features(a.classes[0].methods[0], a), extract_features(b.classes[0].methods[0], b));
}

TEST(ExtractFeatures, StubProgramFromSignature) {
    auto sig = parse_signature("javax.servlet.http.HttpServletResponse.sendRedirect(String)");
    ASSERT_TRUE(sig);
    auto p = stub_program(*sig);
    const auto* m = p.find_method(sig->str());
    ASSERT_NE(m, nullptr);
    auto v = extract_features(*m, p);
    EXPECT_EQ(cell(v, "tok_redirect"), 1);
    EXPECT_EQ(cell(v, "tok_respons"), 1);
    EXPECT_EQ(cell(v, "parameters"), 1);
    EXPECT_EQ(cell(v, "class_name_tokens"), 3);
    EXPECT_EQ(category(v, "return_category"), "other");
}

TEST(CheckVector, RejectsWrongArityAndOutOfRangeCells) {
    std::mt19937_64 rng(1);
    auto v = random_vector(rng);
    EXPECT_NO_THROW(check_vector(v, default_schema()));
    auto short_v = v;
    short_v.values.pop_back();
    EXPECT_THROW(check_vector(short_v, default_schema()), SchemaMismatch);
    auto bad_cat = v;
    bad_cat.values.back() = 7;
    EXPECT_THROW(check_vector(bad_cat, default_schema()), SchemaMismatch);
    auto bad_version = v;
    bad_version.schema_version = "other";
    EXPECT_THROW(check_vector(bad_version, default_schema()), SchemaMismatch);
}

TEST(Arff, EmptyRecordsGiveHeaderWith129Attributes) {
    auto text = arff::emit({}, default_schema());
    auto doc = arff::parse(text);
    EXPECT_EQ(doc.attributes.size(), 129u);
    EXPECT_TRUE(doc.rows.empty());
    EXPECT_EQ(arff::label_count_marker(doc.relation), 10);
    EXPECT_EQ(doc.attributes[0].name, "source");
    EXPECT_EQ(doc.attributes[9].name, "cwe863");
    EXPECT_EQ(doc.attributes[10].name, "method_code_lines");
}

TEST(Arff, TwoRecordsGiveTwoRowsOf129Cells) {
    std::mt19937_64 rng(2);
    std::vector<arff::LabeledRow> rows = {{random_vector(rng), LabelSet{Label::sink, Label::cwe89}},
                                          {random_vector(rng), LabelSet{}}};
    auto text = arff::emit(rows, default_schema());
    auto doc = arff::parse(text);
    ASSERT_EQ(doc.rows.size(), 2u);
    for (const auto& r : doc.rows) EXPECT_EQ(r.size(), 129u);
}

TEST(Arff, RoundTripIsIdentityOnRandomMatrices) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<arff::LabeledRow> rows;
        for (int i = 0, n = static_cast<int>(rng() % 15); i < n; ++i) {
            rows.emplace_back(random_vector(rng), LabelSet::from_bits(static_cast<unsigned>(rng() % 1024)));
        }
        auto back = arff::read_labeled(arff::emit(rows, default_schema()), default_schema());
        ASSERT_EQ(back.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            EXPECT_EQ(back[i].first, rows[i].first);
            EXPECT_EQ(back[i].second, rows[i].second);
        }
    }
}

TEST(Arff, ParserHandlesQuotingCommentsAndErrors) {
    auto doc = arff::parse(
        "% comment\n@RELATION 'a b: -C 2'\n@attribute 'x y' {'3+',\"q,r\"}\n@attribute n REAL\n@data\n'3+', 1.5\n'q,r',2\n");
    EXPECT_EQ(doc.relation, "a b: -C 2");
    EXPECT_EQ(arff::label_count_marker(doc.relation), 2);
    EXPECT_EQ(doc.attributes[0].name, "x y");
    EXPECT_EQ(doc.attributes[0].values, (std::vector<std::string>{"3+", "q,r"}));
    EXPECT_EQ(doc.rows[1], (std::vector<std::string>{"q,r", "2"}));

    EXPECT_THROW(arff::parse("@relation r\n@attribute a {0,1}\n@data\n2\n"), FormatError);
    EXPECT_THROW(arff::parse("@relation r\n@attribute a numeric\n@data\n1,2\n"), FormatError);
    EXPECT_THROW(arff::parse("@relation r\n@attribute a string\n@data\n"), FormatError);
    EXPECT_THROW(arff::parse("@relation r\n@attribute a numeric\n"), FormatError);
    EXPECT_THROW(arff::parse("@relation r\n@attribute a numeric\n@data\n{0 1}\n"), FormatError);
    EXPECT_EQ(arff::quote("3+"), "3+");
    EXPECT_EQ(arff::quote("it's"), "'it\\'s'");
}

TEST(Arff, ReadLabeledRejectsForeignHeaders) {
    EXPECT_THROW(arff::read_labeled("@relation r\n@attribute a numeric\n@data\n", default_schema()), SchemaMismatch);
    auto text = arff::emit({}, default_schema());
    auto pos = text.find("tok_sql");
    text.replace(pos, 7, "tok_xyz");
    EXPECT_THROW(arff::read_labeled(text, default_schema()), SchemaMismatch);
}

TEST(Arff, EmitRejectsVectorsOfAnotherSchema) {
    std::mt19937_64 rng(4);
    auto v = random_vector(rng);
    v.values.resize(50);
    EXPECT_THROW(arff::emit({{v, LabelSet{}}}, default_schema()), SchemaMismatch);
}
