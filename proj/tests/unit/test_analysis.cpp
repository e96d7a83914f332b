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

#include "adtquant/analysis.hpp"
#include "adtquant/formats.hpp"

using namespace adtquant;

namespace {

AdtGraph load(const std::string& name) {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/" + name);
  std::stringstream text;
  text << in.rdbuf();
  return parse_dot(text.str());
}

QuantAnnotation costs(double s, double f) {
  QuantAnnotation q;
  q.cost = QuantPair{s, f};
  q.delay = QuantPair{s, f};
  return q;
}

double prob_at(const AnalysisResult& r, const VertexId& id) { return std::get<double>(r.per_vertex.at(id)); }
ValuePair pair_at(const AnalysisResult& r, const VertexId& id) {
  return std::get<ValuePair>(r.per_vertex.at(id));
}

}  // namespace

TEST(AnalysisProb, PowerMeterFigureValues) {
  const auto r = analyze(load("powermeter.dot"), Domain::prob);
  EXPECT_EQ(r.goal, "10");
  EXPECT_NEAR(prob_at(r, "4"), 0.92818, 1e-9);
  EXPECT_NEAR(prob_at(r, "19"), 0.9188982, 1e-9);
  EXPECT_NEAR(prob_at(r, "17"), 0.5, 1e-12);
  EXPECT_NEAR(prob_at(r, "10"), 0.4594491, 1e-9);
  EXPECT_EQ(r.per_vertex.size(), 9u);
}

TEST(AnalysisProb, GateRules) {
  EXPECT_DOUBLE_EQ(rules::prob_and(0.5, 0.4), 0.2);
  EXPECT_DOUBLE_EQ(rules::prob_or(0.5, 0.4), 0.7);
  EXPECT_DOUBLE_EQ(rules::prob_not(0.25), 0.75);
  EXPECT_LE(rules::prob_or(1.0, 1.0), 1.0);
}

TEST(AnalysisPairs, RuleTable) {
  using rules::Op;
  auto r = rules::pair_rule(Domain::cost_min, true);
  EXPECT_EQ(r.succeed, Op::add);
  EXPECT_EQ(r.fail, Op::min);
  r = rules::pair_rule(Domain::cost_min, false);
  EXPECT_EQ(r.succeed, Op::min);
  EXPECT_EQ(r.fail, Op::add);
  r = rules::pair_rule(Domain::delay_min, true);
  EXPECT_EQ(r.succeed, Op::max);
  EXPECT_EQ(r.fail, Op::min);
  r = rules::pair_rule(Domain::delay_max, false);
  EXPECT_EQ(r.succeed, Op::max);
  EXPECT_EQ(r.fail, Op::max);
}

TEST(AnalysisPairs, AndOrNotInEachDomain) {
  AdtGraph g;
  g.add_basic_event("a", Player::attacker, costs(1, 10));
  g.add_basic_event("b", Player::attacker, costs(2, 20));
  g.add_basic_event("c", Player::defender, costs(4, 40));
  g.add_gate("x", GateType::AND, {"a", "b"});
  g.add_gate("n", GateType::NOT, {"c"});
  g.add_gate("top", GateType::OR, {"x", "n"});
  g.set_goal("top");

  auto r = analyze(g, Domain::cost_min);
  EXPECT_EQ(pair_at(r, "x"), (ValuePair{3, 10}));
  EXPECT_EQ(pair_at(r, "n"), (ValuePair{40, 4}));
  EXPECT_EQ(pair_at(r, "top"), (ValuePair{3, 14}));

  r = analyze(g, Domain::cost_max);
  EXPECT_EQ(pair_at(r, "x"), (ValuePair{3, 20}));
  EXPECT_EQ(pair_at(r, "top"), (ValuePair{40, 24}));

  r = analyze(g, Domain::delay_min);
  EXPECT_EQ(pair_at(r, "x"), (ValuePair{2, 10}));
  EXPECT_EQ(pair_at(r, "top"), (ValuePair{2, 10}));

  r = analyze(g, Domain::delay_max);
  EXPECT_EQ(pair_at(r, "top"), (ValuePair{40, 20}));
}

TEST(AnalysisShape, NaryGatesFoldLeftToRight) {
  AdtGraph g;
  for (auto [id, p] : {std::pair{"a", 0.1}, {"b", 0.2}, {"c", 0.3}}) {
    QuantAnnotation q;
    q.prob = p;
    g.add_basic_event(id, Player::attacker, q);
  }
  g.add_gate("top", GateType::OR, {"a", "b", "c"});
  g.set_goal("top");
  EXPECT_DOUBLE_EQ(prob_at(analyze(g, Domain::prob), "top"),
                   rules::prob_or(rules::prob_or(0.1, 0.2), 0.3));
}

TEST(AnalysisShape, TriggeredEventIsConjunctionWithItsSource) {
  AdtGraph g;
  QuantAnnotation q;
  q.prob = 0.5;
  g.add_basic_event("a", Player::attacker, q).add_basic_event("b", Player::attacker, q);
  q.prob = 0.4;
  g.add_basic_event("s", Player::attacker, q);
  g.add_gate("t", GateType::TR, {"s"});
  g.add_trigger("t", "a");
  g.add_gate("top", GateType::AND, {"a", "b"});
  g.set_goal("top");
  const auto r = analyze(g, Domain::prob);
  EXPECT_DOUBLE_EQ(prob_at(r, "t"), 0.4);
  EXPECT_DOUBLE_EQ(prob_at(r, "a"), 0.2);
  EXPECT_DOUBLE_EQ(prob_at(r, "top"), 0.1);
  EXPECT_TRUE(r.per_vertex.count("s"));
}

TEST(AnalysisShape, RejectsWhatHasNoStaticMeaning) {
  AdtGraph g;
  QuantAnnotation q;
  q.prob = 0.5;
  g.add_basic_event("a", Player::attacker, q).add_basic_event("b", Player::attacker, q);
  g.add_gate("s", GateType::SAND, {"a", "b"});
  g.set_goal("s");
  try {
    analyze(g, Domain::prob);
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.code(), codes::kAnalysisShape);
  }
}

TEST(AnalysisAnnotations, MissingValuesAreListedPerEvent) {
  auto g = load("powermeter.dot");
  try {
    analyze(g, Domain::cost_min);
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.diagnostics().size(), 5u);
    EXPECT_EQ(e.code(), codes::kMissingAnnotation);
  }
  const auto lv = leaf_valuation(g, Domain::delay_max);
  EXPECT_EQ(lv.missing.size(), 5u);
  EXPECT_TRUE(lv.values.empty());
}

TEST(AnalysisDomains, NamesRoundTrip) {
  for (Domain d : {Domain::prob, Domain::cost_min, Domain::cost_max, Domain::delay_min,
                   Domain::delay_max}) {
    EXPECT_EQ(parse_domain(to_string(d)), d);
  }
  EXPECT_FALSE(parse_domain("cost"));
  EXPECT_FALSE(is_pair_domain(Domain::prob));
  EXPECT_TRUE(is_pair_domain(Domain::delay_min));
}
