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

#include "adtquant/formats.hpp"

using namespace adtquant;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_dot(text);
  } catch (const AdtError& e) {
    return e.code() + " " + e.diagnostics().front().message;
  }
  return "no error";
}

}  // namespace

TEST(DotParse, ReadsSchemaAttributes) {
  const auto g = parse_dot(R"(
    strict digraph "t" {
      rankdir = BT;
      a [prob=0.3, prob_eps="0.01", prob_delta=0.05, cost_s=2, cost_f=1, label="step A"];
      b [player=defender, delay_s="4", delay_f=3, delay_eps_s=0.5, delay_delta=0.1];
      g [type=AND, goal="true", color=red];
      a -> g; b -> g [weight=2];
    })");
  EXPECT_EQ(g.name, "t");
  EXPECT_EQ(g.goal, "g");
  EXPECT_EQ(g.graph_attributes.at("rankdir"), "BT");
  const auto& a = g.at("a");
  EXPECT_TRUE(a.is_basic_event());
  EXPECT_EQ(a.label, "step A");
  EXPECT_DOUBLE_EQ(*a.quant.prob, 0.3);
  EXPECT_DOUBLE_EQ(*a.quant.prob_eps, 0.01);
  EXPECT_DOUBLE_EQ(a.quant.cost->succeed, 2.0);
  EXPECT_EQ(g.at("b").player, Player::defender);
  EXPECT_DOUBLE_EQ(*g.at("b").quant.delay->eps_succeed, 0.5);
  EXPECT_FALSE(g.at("b").quant.delay->eps_fail);
  EXPECT_EQ(g.at("g").extra.at("color"), "red");
  ASSERT_EQ(g.input_edges.size(), 2u);
  EXPECT_EQ(g.input_edges[1].extra.at("weight"), "2");
}

TEST(DotParse, EdgeChainsAndKinds) {
  const auto g = parse_dot(R"(digraph {
    a; b; c;
    t [type=TR]; r [type=RE]; o [type=OR, goal=true];
    a -> o; b -> o;
    c -> t -> a [kind=trigger];
    c -> r;
    r -> b [kind="reset"];
  })");
  // An attribute list applies to every edge of the chain.
  EXPECT_EQ(g.trigger_edges.size(), 2u);
  EXPECT_EQ(g.reset_edges.size(), 1u);
}

TEST(DotParse, GoalFromUniqueSink) {
  const auto g = parse_dot("digraph { a -> x; b -> x; x [type=OR]; }");
  EXPECT_EQ(g.goal, "x");
  EXPECT_TRUE(g.at("a").is_basic_event());
}

TEST(DotParse, GoalErrors) {
  EXPECT_EQ(parse_error_of("digraph { a; b; }").substr(0, 16), "E_GOAL_AMBIGUOUS");
  EXPECT_EQ(parse_error_of("digraph { a [goal=true]; b [goal=true]; }").substr(0, 16),
            "E_GOAL_AMBIGUOUS");
  EXPECT_EQ(parse_error_of("digraph { }").substr(0, 9), "E_NO_GOAL");
}

TEST(DotParse, CommentsAndNumerals) {
  const auto g = parse_dot(
      "# preprocessor-style line\n"
      "digraph { // line\n"
      "  /* block\n comment */ 10 [type=NOT];\n"
      "  007 -> 10 [kind=input];\n"
      "  007 [prob=.5];\n"
      "}\n");
  EXPECT_TRUE(validate(g).empty());
  EXPECT_DOUBLE_EQ(*g.at("007").quant.prob, 0.5);
}

TEST(DotParse, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(parse_error_of("digraph {\n  a -> ;\n}"), "E_PARSE line 2, column 8: expected a node id after '->'");
}

TEST(DotParse, RejectsUnsupportedSyntax) {
  for (const char* text : {"graph { a -- b; }", "digraph { subgraph s { a; } }",
                           "digraph { node [shape=box]; a; }", "digraph { a:p -> b; }",
                           "digraph { a -> b", "digraph { a [label=\"x]; }",
                           "digraph { a [label=<b>x</b>]; }", "digraph { /* open"}) {
    EXPECT_EQ(parse_error_of(text).substr(0, 7), "E_PARSE") << text;
  }
}

TEST(DotParse, AttributeErrorsNameTheVertex) {
  try {
    parse_dot("digraph { a [prob=1.5]; }");
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.code(), codes::kAttribute);
    EXPECT_EQ(e.diagnostics().front().vertex, "a");
  }
  EXPECT_EQ(parse_error_of("digraph { a [type=XOR]; }").substr(0, 11), "E_ATTRIBUTE");
  EXPECT_EQ(parse_error_of("digraph { a [player=nobody]; }").substr(0, 11), "E_ATTRIBUTE");
  EXPECT_EQ(parse_error_of("digraph { a [prob=abc]; }").substr(0, 11), "E_ATTRIBUTE");
  EXPECT_EQ(parse_error_of("digraph { a [cost_s=-1, cost_f=1]; }").substr(0, 11), "E_ATTRIBUTE");
  EXPECT_EQ(parse_error_of("digraph { a -> b [kind=magic]; }").substr(0, 11), "E_ATTRIBUTE");
}

TEST(DotEmit, CanonicalForm) {
  AdtGraph g;
  g.name = "m";
  QuantAnnotation q;
  q.prob = 0.1;
  g.add_basic_event("b", Player::attacker, q, "say \"hi\"");
  g.add_basic_event("a", Player::defender);
  g.add_gate("node", GateType::OR, {"a", "b"});
  g.set_goal("node");
  EXPECT_EQ(emit_dot(g),
            "digraph m {\n"
            "  a [player=\"defender\", type=\"BE\"];\n"
            "  b [label=\"say \\\"hi\\\"\", player=\"attacker\", prob=\"0.1\", type=\"BE\"];\n"
            "  \"node\" [goal=\"true\", type=\"OR\"];\n"
            "  a -> \"node\";\n"
            "  b -> \"node\";\n"
            "}\n");
}

TEST(DotEmit, RealsUseShortestRoundTrip) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(1e-20), "1e-20");
  EXPECT_EQ(format_complement(0.99), "0.01");
  EXPECT_EQ(format_complement(0.24), "0.76");
}

TEST(DotRoundTrip, KeepsForeignAttributesAndSideEdges) {
  const std::string text = R"(digraph "my model" {
    graph [rankdir=BT, "odd key"="v"];
    c [x_custom="1"];
    a [label="line\nwith \\ backslash"];
    t [type=TR];
    top [type=SAND, style=filled, goal="true"];
    a -> top [penwidth=2];
    c -> t;
    b -> top;
    t -> a [kind=trigger, color=blue];
  })";
  const auto g = parse_dot(text);
  const auto emitted = emit_dot(g);
  const auto again = parse_dot(emitted);
  EXPECT_EQ(g, again);
  EXPECT_EQ(emit_dot(again), emitted);
}
