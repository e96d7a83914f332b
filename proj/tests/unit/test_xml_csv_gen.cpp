/* Copyright 2026 The adtquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "adtquant/formats.hpp"
#include "adtquant/rng.hpp"

using namespace adtquant;

namespace {

AdtGraph powermeter() {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/powermeter.dot");
  std::stringstream text;
  text << in.rdbuf();
  return parse_dot(text.str());
}

}  // namespace

TEST(AdtoolXml, ImportsRefinementsAndCountermeasures) {
  const auto g = parse_adtool_xml(R"(<?xml version="1.0"?>
<adtree>
  <node refinement="sequential">
    <label>root</label>
    <node><label>first step</label></node>
    <node refinement="conjunctive">
      <label>second</label>
      <node><label>x</label></node>
      <node><label>y</label></node>
      <node switchRole="yes"><label>guard</label></node>
    </node>
  </node>
</adtree>)");
  EXPECT_TRUE(validate(g).empty());
  EXPECT_EQ(g.goal, "root");
  EXPECT_EQ(g.at("root").gate, GateType::SAND);
  EXPECT_EQ(g.at("second").gate, GateType::AND);
  EXPECT_EQ(g.at("guard").player, Player::defender);
  const auto inputs = g.input_map();
  ASSERT_EQ(inputs.at("second").size(), 3u);
  EXPECT_EQ(g.at(inputs.at("second")[2]).gate, GateType::NOT);
  // "first step" is not a valid id, so it gets a fresh id and keeps its text as label.
  const auto& first = inputs.at("root")[0];
  EXPECT_EQ(first.front(), 'n');
  EXPECT_EQ(g.at(first).label, "first step");
}

TEST(AdtoolXml, CounteredLeafAndDisjunctionWithCounter) {
  const auto g = parse_adtool_xml(R"(<adtree><node refinement="disjunctive"><label>top</label>
      <node><label>a</label><node switchRole="yes"><label>c</label></node></node>
      <node><label>b</label></node>
      <node switchRole="yes"><label>d</label></node>
    </node></adtree>)");
  EXPECT_TRUE(validate(g).empty());
  EXPECT_EQ(g.at("top").gate, GateType::AND);
  const auto inputs = g.input_map();
  EXPECT_EQ(g.at(inputs.at("top")[0]).gate, GateType::OR);
  EXPECT_EQ(g.at("a").gate, GateType::AND);
  EXPECT_TRUE(g.at(inputs.at("a")[0]).is_basic_event());
}

TEST(AdtoolXml, RejectsMalformedDocuments) {
  for (const char* text :
       {"<adtree>", "<other/>", "<adtree><node><label>a</label></node><node><label>b</label></node></adtree>",
        "<adtree><node refinement=\"xor\"><label>a</label></node></adtree>",
        "<adtree><node><label>a</label><node><label>b</label></node></node></adtree>",
        "<adtree><node switchRole=\"yes\"><label>a</label></node></adtree>",
        "<adtree><node></node></adtree>"}) {
    try {
      parse_adtool_xml(text);
      ADD_FAILURE() << text;
    } catch (const AdtError& e) {
      EXPECT_EQ(e.code(), codes::kParse) << text;
    }
  }
}

TEST(AdtoolXml, ExportWarnsAboutDroppedQuantities) {
  const auto x = emit_adtool_xml(powermeter());
  ASSERT_EQ(x.diagnostics.size(), 1u);
  EXPECT_EQ(x.diagnostics.front().code, codes::kXmlDropped);
  EXPECT_NE(x.text.find("<label>tamper alarm</label>"), std::string::npos);
  EXPECT_NE(x.text.find("switchRole=\"yes\""), std::string::npos);
}

TEST(AdtoolXml, ExportRejectsUnrepresentableGates) {
  AdtGraph g;
  g.add_basic_event("a").add_basic_event("b");
  g.add_gate("s", GateType::SOR, {"a", "b"});
  g.set_goal("s");
  try {
    emit_adtool_xml(g);
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.code(), codes::kXmlUnsupported);
  }
}

TEST(AdtoolXml, EscapesLabels) {
  AdtGraph g;
  g.add_basic_event("a", Player::attacker, {}, "x < y & \"z\"");
  g.set_goal("a");
  const auto text = emit_adtool_xml(g).text;
  EXPECT_NE(text.find("x &lt; y &amp; &quot;z&quot;"), std::string::npos);
  EXPECT_EQ(parse_adtool_xml(text).at(parse_adtool_xml(text).goal).label, "x < y & \"z\"");
}

TEST(Csv, HeaderBlankLinesAndWhitespace) {
  const auto s = parse_csv_samples("time\r\n 1.5\n\n2\r\n+3e0\n");
  EXPECT_EQ(s.source, "time");
  EXPECT_EQ(s.values, (std::vector<double>{1.5, 2.0, 3.0}));
}

TEST(Csv, ErrorsNameTheLine) {
  try {
    parse_csv_samples("1\n2\nabc\n");
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.code(), codes::kCsv);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_csv_samples("value\n1\n"), AdtError);
  EXPECT_THROW(parse_csv_samples("1\ninf\n"), AdtError);
  EXPECT_THROW(parse_csv_samples(""), AdtError);
}

TEST(SplitMix, MatchesReferenceSequence) {
  // Reference values of SplitMix64 seeded with 1234567.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
  SplitMix64 r2(7);
  for (int i = 0; i < 1000; ++i) {
    const double d = r2.next_double();
    EXPECT_GE(d, 0.0);
    EXPECT_LT(d, 1.0);
    EXPECT_LT(r2.next_below(7), 7u);
  }
}

TEST(Generator, ShapeAndDeterminism) {
  const auto g = gen_benchmark(678, 42);
  EXPECT_EQ(g.vertices.size(), 1355u);
  EXPECT_EQ(g.basic_events().size(), 678u);
  EXPECT_TRUE(validate(g).empty());
  EXPECT_FALSE(has_errors(feedback(g, Target::analysis_pac)));
  EXPECT_EQ(g.sinks(), std::vector<VertexId>{g.goal});
  EXPECT_EQ(emit_dot(g), emit_dot(gen_benchmark(678, 42)));
  EXPECT_NE(emit_dot(g), emit_dot(gen_benchmark(678, 43)));
  for (const auto& [id, v] : g.vertices) {
    if (!v.is_basic_event()) continue;
    EXPECT_LE(*v.quant.prob_eps, 0.05);
    EXPECT_EQ(*v.quant.prob_delta, 0.05);
  }
}

TEST(Generator, FirstStepsFollowTheDocumentedProcedure) {
  const auto g = gen_benchmark(3, 9);
  SplitMix64 rng(9);
  for (int i = 0; i < 3; ++i) {
    const double p = rng.next_double();
    const double eps = 0.05 * rng.next_double();
    EXPECT_EQ(*g.at("b" + std::to_string(i)).quant.prob, p);
    EXPECT_EQ(*g.at("b" + std::to_string(i)).quant.prob_eps, eps);
  }
  const auto i = rng.next_below(3);
  auto j = rng.next_below(2);
  if (j >= i) ++j;
  const auto type = rng.next_below(2) == 0 ? GateType::AND : GateType::OR;
  EXPECT_EQ(g.at("g0").gate, type);
  const auto inputs = g.input_map().at("g0");
  EXPECT_EQ(inputs, (std::vector<VertexId>{"b" + std::to_string(i), "b" + std::to_string(j)}));
  EXPECT_EQ(g.goal, "g1");
}

TEST(Generator, SizeGuard) {
  EXPECT_THROW(gen_benchmark(0, 1), AdtError);
  const auto one = gen_benchmark(1, 1);
  EXPECT_EQ(one.goal, "b0");
}
