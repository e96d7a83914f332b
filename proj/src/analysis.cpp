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

#include "adtquant/analysis.hpp"

#include <algorithm>

namespace adtquant {

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::prob: return "prob";
    case Domain::cost_min: return "cost-min";
    case Domain::cost_max: return "cost-max";
    case Domain::delay_min: return "delay-min";
    case Domain::delay_max: return "delay-max";
  }
  return "prob";
}

std::optional<Domain> parse_domain(std::string_view name) {
  for (auto d : {Domain::prob, Domain::cost_min, Domain::cost_max, Domain::delay_min,
                 Domain::delay_max}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

bool is_pair_domain(Domain domain) { return domain != Domain::prob; }

namespace rules {

double prob_or(double x, double y) { return std::clamp(x + y - x * y, 0.0, 1.0); }

PairRule pair_rule(Domain domain, bool conjunctive) {
  switch (domain) {
    case Domain::cost_min:
      return conjunctive ? PairRule{Op::add, Op::min} : PairRule{Op::min, Op::add};
    case Domain::cost_max:
      return conjunctive ? PairRule{Op::add, Op::max} : PairRule{Op::max, Op::add};
    case Domain::delay_min:
      return conjunctive ? PairRule{Op::max, Op::min} : PairRule{Op::min, Op::max};
    case Domain::delay_max:
      return PairRule{Op::max, Op::max};
    case Domain::prob: break;
  }
  return PairRule{Op::add, Op::add};
}

double apply(Op op, double x, double y) {
  switch (op) {
    case Op::add: return x + y;
    case Op::min: return std::min(x, y);
    case Op::max: return std::max(x, y);
  }
  return x + y;
}

}  // namespace rules

namespace {

std::optional<NodeValue> project(const QuantAnnotation& q, Domain domain) {
  if (domain == Domain::prob) {
    if (!q.prob) return std::nullopt;
    return NodeValue{*q.prob};
  }
  const auto& pair = (domain == Domain::cost_min || domain == Domain::cost_max) ? q.cost : q.delay;
  if (!pair) return std::nullopt;
  return NodeValue{ValuePair{pair->succeed, pair->fail}};
}

NodeValue combine(Domain domain, bool conjunctive, const NodeValue& x, const NodeValue& y) {
  if (domain == Domain::prob) {
    double a = std::get<double>(x), b = std::get<double>(y);
    return conjunctive ? rules::prob_and(a, b) : rules::prob_or(a, b);
  }
  const auto rule = rules::pair_rule(domain, conjunctive);
  const auto& a = std::get<ValuePair>(x);
  const auto& b = std::get<ValuePair>(y);
  return ValuePair{rules::apply(rule.succeed, a.succeed, b.succeed),
                   rules::apply(rule.fail, a.fail, b.fail)};
}

NodeValue negate(Domain domain, const NodeValue& x) {
  if (domain == Domain::prob) return rules::prob_not(std::get<double>(x));
  const auto& p = std::get<ValuePair>(x);
  return ValuePair{p.fail, p.succeed};
}

}  // namespace

LeafValuation leaf_valuation(const AdtGraph& graph, Domain domain) {
  LeafValuation result;
  for (const auto& [id, v] : graph.vertices) {
    if (!v.is_basic_event()) continue;
    if (auto value = project(v.quant, domain)) {
      result.values.emplace(id, *value);
    } else {
      result.missing.push_back(make_error(
          codes::kMissingAnnotation,
          "basic event has no " + std::string(domain == Domain::prob ? "prob"
                                              : (domain == Domain::cost_min ||
                                                 domain == Domain::cost_max)
                                                  ? "cost"
                                                  : "delay") +
              " annotation",
          id));
    }
  }
  return result;
}

AnalysisResult analyze(const AdtGraph& graph, Domain domain) {
  const auto plan = make_eval_plan(graph);
  auto leaves = leaf_valuation(graph, domain);

  Diagnostics missing;
  for (const auto& d : leaves.missing) {
    if (plan.index.count(*d.vertex)) missing.push_back(d);
  }
  if (!missing.empty()) throw AdtError(std::move(missing));

  std::vector<NodeValue> values(plan.nodes.size());
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    const auto& node = plan.nodes[i];
    if (node.vertex->is_basic_event()) {
      const auto& own = leaves.values.at(node.id);
      values[i] = node.trigger ? combine(domain, true, values[*node.trigger], own) : own;
      continue;
    }
    switch (*node.vertex->gate) {
      case GateType::AND:
      case GateType::OR: {
        const bool conjunctive = *node.vertex->gate == GateType::AND;
        NodeValue acc = values[node.inputs.front()];
        for (std::size_t k = 1; k < node.inputs.size(); ++k) {
          acc = combine(domain, conjunctive, acc, values[node.inputs[k]]);
        }
        values[i] = acc;
        break;
      }
      case GateType::NOT: values[i] = negate(domain, values[node.inputs.front()]); break;
      case GateType::TR: values[i] = values[node.inputs.front()]; break;
      default: throw AdtError(codes::kAnalysisShape, "gate has no static interpretation", node.id);
    }
  }

  AnalysisResult result;
  result.domain = domain;
  result.goal = graph.goal;
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    result.per_vertex.emplace(plan.nodes[i].id, values[i]);
  }
  return result;
}

}  // namespace adtquant
