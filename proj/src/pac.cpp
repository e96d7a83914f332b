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

#include "adtquant/pac.hpp"

#include <algorithm>

namespace adtquant {

double combine_delta(double d1, double d2, DeltaRule rule) {
  if (rule == DeltaRule::union_bound) return std::min(1.0, d1 + d2);
  return 1.0 - (1.0 - d1) * (1.0 - d2);
}

PacInterval interval(const PacValue& v, bool probability) {
  double lo = std::max(0.0, v.value - v.eps);
  double hi = v.value + v.eps;
  if (probability) hi = std::min(hi, 1.0);
  return PacInterval{lo, std::max(lo, hi)};
}

PacValue pac_not(const PacValue& a) { return PacValue{rules::prob_not(a.value), a.eps, a.delta}; }

PacValue pac_mul(const PacValue& a, const PacValue& b, DeltaRule rule) {
  return PacValue{rules::prob_and(a.value, b.value),
                  a.value * b.eps + b.value * a.eps + a.eps * b.eps,
                  combine_delta(a.delta, b.delta, rule)};
}

PacValue pac_prob_or(const PacValue& a, const PacValue& b, DeltaRule rule) {
  return PacValue{rules::prob_or(a.value, b.value),
                  a.eps + b.eps + a.value * b.eps + b.value * a.eps + a.eps * b.eps,
                  combine_delta(a.delta, b.delta, rule)};
}

PacValue pac_add(const PacValue& a, const PacValue& b, DeltaRule rule) {
  return PacValue{a.value + b.value, a.eps + b.eps, combine_delta(a.delta, b.delta, rule)};
}

PacValue pac_max(const PacValue& a, const PacValue& b, DeltaRule rule) {
  return PacValue{std::max(a.value, b.value), std::max(a.eps, b.eps),
                  combine_delta(a.delta, b.delta, rule)};
}

PacValue pac_min(const PacValue& a, const PacValue& b, DeltaRule rule) {
  return PacValue{std::min(a.value, b.value), std::max(a.eps, b.eps),
                  combine_delta(a.delta, b.delta, rule)};
}

namespace {

PacValue apply(rules::Op op, const PacValue& a, const PacValue& b, DeltaRule rule) {
  switch (op) {
    case rules::Op::add: return pac_add(a, b, rule);
    case rules::Op::min: return pac_min(a, b, rule);
    case rules::Op::max: return pac_max(a, b, rule);
  }
  return pac_add(a, b, rule);
}

PacNodeValue combine(Domain domain, bool conjunctive, const PacNodeValue& x,
                     const PacNodeValue& y, DeltaRule rule) {
  if (domain == Domain::prob) {
    const auto& a = std::get<PacValue>(x);
    const auto& b = std::get<PacValue>(y);
    return conjunctive ? pac_mul(a, b, rule) : pac_prob_or(a, b, rule);
  }
  const auto r = rules::pair_rule(domain, conjunctive);
  const auto& a = std::get<PacPair>(x);
  const auto& b = std::get<PacPair>(y);
  return PacPair{apply(r.succeed, a.succeed, b.succeed, rule), apply(r.fail, a.fail, b.fail, rule)};
}

PacNodeValue negate(const PacNodeValue& x) {
  if (const auto* v = std::get_if<PacValue>(&x)) return pac_not(*v);
  const auto& p = std::get<PacPair>(x);
  return PacPair{p.fail, p.succeed};
}

std::optional<PacNodeValue> leaf_value(const QuantAnnotation& q, Domain domain, bool exact_ok) {
  if (domain == Domain::prob) {
    if (!q.prob) return std::nullopt;
    if (!q.prob_eps && !q.prob_delta && !exact_ok) return std::nullopt;
    return PacValue{*q.prob, q.prob_eps.value_or(0.0), q.prob_delta.value_or(0.0)};
  }
  const auto& pair = (domain == Domain::cost_min || domain == Domain::cost_max) ? q.cost : q.delay;
  if (!pair) return std::nullopt;
  if (!pair->has_pac() && !exact_ok) return std::nullopt;
  const double delta = pair->delta.value_or(0.0);
  return PacPair{PacValue{pair->succeed, pair->eps_succeed.value_or(0.0), delta},
                 PacValue{pair->fail, pair->eps_fail.value_or(0.0), delta}};
}

}  // namespace

PacAnalysisResult analyze_pac(const AdtGraph& graph, Domain domain, DeltaRule rule,
                              bool exact_leaves_allowed) {
  const auto plan = make_eval_plan(graph);

  std::vector<PacNodeValue> values(plan.nodes.size());
  Diagnostics missing;
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    const auto& node = plan.nodes[i];
    if (!node.vertex->is_basic_event()) continue;
    if (auto v = leaf_value(node.vertex->quant, domain, exact_leaves_allowed)) {
      values[i] = *v;
    } else {
      missing.push_back(make_error(codes::kMissingAnnotation,
                                   "basic event has no PAC-annotated " +
                                       std::string(domain == Domain::prob ? "prob"
                                                   : (domain == Domain::cost_min ||
                                                      domain == Domain::cost_max)
                                                       ? "cost"
                                                       : "delay") +
                                       " (give eps and delta; exact values are (0,0)-PAC)",
                                   node.id));
    }
  }
  if (!missing.empty()) throw AdtError(std::move(missing));

  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    const auto& node = plan.nodes[i];
    if (node.vertex->is_basic_event()) {
      if (node.trigger) values[i] = combine(domain, true, values[*node.trigger], values[i], rule);
      continue;
    }
    switch (*node.vertex->gate) {
      case GateType::AND:
      case GateType::OR: {
        const bool conjunctive = *node.vertex->gate == GateType::AND;
        PacNodeValue acc = values[node.inputs.front()];
        for (std::size_t k = 1; k < node.inputs.size(); ++k) {
          acc = combine(domain, conjunctive, acc, values[node.inputs[k]], rule);
        }
        values[i] = acc;
        break;
      }
      case GateType::NOT: values[i] = negate(values[node.inputs.front()]); break;
      case GateType::TR: values[i] = values[node.inputs.front()]; break;
      default: throw AdtError(codes::kAnalysisShape, "gate has no static interpretation", node.id);
    }
  }

  PacAnalysisResult result;
  result.domain = domain;
  result.delta_rule = rule;
  result.goal = graph.goal;
  const bool probability = domain == Domain::prob;
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    PacEntry entry;
    entry.value = values[i];
    if (const auto* v = std::get_if<PacValue>(&values[i])) {
      entry.interval = interval(*v, probability);
    } else {
      const auto& p = std::get<PacPair>(values[i]);
      entry.interval = interval(p.succeed, false);
      entry.fail_interval = interval(p.fail, false);
    }
    result.per_vertex.emplace(plan.nodes[i].id, std::move(entry));
  }
  return result;
}

}  // namespace adtquant
