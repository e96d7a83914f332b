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
#include "adtquant/oracle.hpp"
#include "checks.hpp"

using namespace adtquant;

namespace {

AdtGraph powermeter() {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/powermeter.dot");
  std::stringstream text;
  text << in.rdbuf();
  return parse_dot(text.str());
}

}  // namespace

TEST(OracleBool, EvaluatesTheStructure) {
  const auto g = powermeter();
  auto v = bool_eval(g, {{"2", "9"}});
  EXPECT_TRUE(v.at("4"));
  EXPECT_TRUE(v.at("19"));
  EXPECT_TRUE(v.at("17"));
  EXPECT_TRUE(v.at("10"));
  v = bool_eval(g, {{"2", "9", "6"}});
  EXPECT_FALSE(v.at("10"));
  EXPECT_THROW(bool_eval(g, {{"4"}}), AdtError);
}

TEST(OracleEnum, PowerMeterProbability) {
  const auto g = powermeter();
  EXPECT_NEAR(enum_prob(g, "10"), 0.4594491, 1e-9);
  EXPECT_NEAR(enum_prob_serial(g, "10"), enum_prob(g, "10"), 1e-15);
  EXPECT_NEAR(enum_unsat_mass(g, "10"), 1 - 0.4594491, 1e-9);
  EXPECT_NEAR(powerset_prob(g, "4"), 0.92818, 1e-12);
}

TEST(OraclePowerset, LeafAndGateSets) {
  AdtGraph g;
  g.add_basic_event("a").add_basic_event("b");
  g.add_gate("n", GateType::NOT, {"b"});
  g.add_gate("top", GateType::AND, {"a", "n"});
  g.set_goal("top");
  const auto ps = powerset_eval(g);
  using Sets = std::set<std::set<VertexId>>;
  EXPECT_EQ(ps.decode(ps.per_vertex.at("a").sat), (Sets{{"a"}}));
  EXPECT_EQ(ps.decode(ps.per_vertex.at("a").unsat), (Sets{{}}));
  EXPECT_EQ(ps.decode(ps.per_vertex.at("top").sat), (Sets{{"a"}}));
  EXPECT_EQ(ps.decode(ps.per_vertex.at("top").unsat), (Sets{{}, {"b"}, {"a", "b"}}));
}

TEST(OracleWitness, CostAndDelayOnSmallTree) {
  AdtGraph g;
  QuantAnnotation q;
  q.prob = 0.5;
  q.cost = QuantPair{1, 10};
  q.delay = QuantPair{1, 10};
  g.add_basic_event("a", Player::attacker, q);
  q.cost = QuantPair{2, 20};
  q.delay = QuantPair{2, 20};
  g.add_basic_event("b", Player::attacker, q);
  g.add_gate("top", GateType::AND, {"a", "b"});
  g.set_goal("top");
  EXPECT_EQ(enum_min_cost(g), (ValuePair{3, 10}));
  EXPECT_EQ(enum_min_cost_serial(g), (ValuePair{3, 10}));
  EXPECT_EQ(witness_delay_min(g), (ValuePair{2, 10}));
  EXPECT_EQ(witness_delay_min_serial(g), (ValuePair{2, 10}));
}

TEST(OracleGuard, EventCap) {
  const auto big = gen_benchmark(25, 3);
  try {
    enum_prob(big, big.goal);
    FAIL();
  } catch (const AdtError& e) {
    EXPECT_EQ(e.code(), codes::kSizeGuard);
  }
  EXPECT_THROW(enum_prob(big, big.goal, {24, false}), AdtError);
  EXPECT_NO_THROW(enum_prob(gen_benchmark(12, 3), "g0"));
}

TEST(OracleParallel, SerialAndParallelAgree) {
  testkit::Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto g = testkit::random_boolean_tree(rng, {12, 0.2, 3});
    // Summation order differs between the chunked and the serial kernel.
    EXPECT_NEAR(enum_prob(g, g.goal), enum_prob_serial(g, g.goal), 1e-13);
    EXPECT_EQ(enum_min_cost(g), enum_min_cost_serial(g));
    EXPECT_EQ(witness_delay_min(g), witness_delay_min_serial(g));
  }
}

TEST(OracleProperty, AgreesWithBottomUpOnRandomTrees) {
  testkit::Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    const auto g = testkit::random_boolean_tree(rng, {10, 0.2, 3});
    EXPECT_EQ(testkit::check_oracle_agreement(g), "") << emit_dot(g);
  }
}

TEST(OracleProperty, PowersetMatchesBooleanEvaluation) {
  testkit::Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto g = testkit::random_boolean_tree(rng, {8, 0.3, 3});
    EXPECT_EQ(testkit::check_powerset_agreement(g), "") << emit_dot(g);
    for (const auto& [id, v] : g.vertices) {
      EXPECT_NEAR(powerset_prob(g, id), enum_prob(g, id), 1e-12);
    }
  }
}

TEST(OracleProperty, TriggeredEventsAgreeToo) {
  AdtGraph g;
  for (auto [id, p] : {std::pair{"a", 0.3}, {"b", 0.6}, {"s", 0.8}}) {
    QuantAnnotation q;
    q.prob = p;
    q.cost = QuantPair{p * 10, 1};
    q.delay = QuantPair{p * 10, 2};
    g.add_basic_event(id, Player::attacker, q);
  }
  g.add_gate("t", GateType::TR, {"s"});
  g.add_trigger("t", "a");
  g.add_gate("top", GateType::OR, {"a", "b"});
  g.set_goal("top");
  EXPECT_EQ(testkit::check_oracle_agreement(g), "");
  EXPECT_EQ(testkit::check_powerset_agreement(g), "");
}
