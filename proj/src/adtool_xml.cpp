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

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <functional>
#include <set>
#include <sstream>

#include "adtquant/formats.hpp"

// ADTool stores strict trees: every <node> is a refinement of its parent, and a
// child with switchRole="yes" is a countermeasure owned by the other player.
// Mapping used here:
//   conjunctive / disjunctive / sequential  <->  AND / OR / SAND
//   countermeasure child c of an AND gate   <->  NOT(c) input of that gate
//   node without children                   <->  basic event of the current role

namespace adtquant {

namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

[[noreturn]] void parse_error(const std::string& message) {
  throw AdtError(codes::kParse, message);
}

struct XmlNode {
  std::string label;
  std::string refinement;
  bool switch_role = false;
  std::vector<XmlNode> children;
};

XmlNode read_node(const pt::ptree& tree) {
  XmlNode node;
  node.refinement = tree.get<std::string>("<xmlattr>.refinement", "disjunctive");
  if (node.refinement != "conjunctive" && node.refinement != "disjunctive" &&
      node.refinement != "sequential") {
    parse_error("unknown refinement \"" + node.refinement + "\"");
  }
  node.switch_role = tree.get<std::string>("<xmlattr>.switchRole", "no") == "yes";
  bool has_label = false;
  for (const auto& [name, child] : tree) {
    if (name == "label") {
      node.label = std::string(trim(child.data()));
      has_label = true;
    } else if (name == "node") {
      node.children.push_back(read_node(child));
    }
  }
  if (!has_label || node.label.empty()) parse_error("<node> without a <label>");
  return node;
}

class Importer {
 public:
  explicit Importer(const XmlNode& root) {
    std::map<std::string, int> counts;
    std::function<void(const XmlNode&)> count = [&](const XmlNode& n) {
      ++counts[n.label];
      for (const auto& c : n.children) count(c);
    };
    count(root);
    for (const auto& [label, k] : counts) {
      if (k == 1 && is_valid_vertex_id(label)) reserved_.insert(label);
    }
  }

  AdtGraph run(const XmlNode& root) {
    graph_.goal = build(root, Player::attacker);
    return std::move(graph_);
  }

 private:
  std::string fresh() {
    std::string id;
    do {
      id = "n" + std::to_string(++counter_);
    } while (reserved_.count(id) || graph_.contains(id));
    return id;
  }

  std::pair<std::string, std::string> name(const XmlNode& n) {
    if (reserved_.count(n.label)) return {n.label, ""};
    return {fresh(), n.label};
  }

  VertexId build(const XmlNode& n, Player role) {
    auto [id, label] = name(n);
    std::vector<const XmlNode*> regular, counters;
    for (const auto& c : n.children) (c.switch_role ? counters : regular).push_back(&c);

    if (regular.empty() && counters.empty()) {
      graph_.add_basic_event(id, role, {}, label);
      return id;
    }
    if (regular.size() == 1 && counters.empty()) {
      parse_error("node \"" + n.label + "\" refines into a single child");
    }

    std::vector<VertexId> inputs;
    if (regular.empty()) {
      // A countered basic event: the attack step itself plus its countermeasures.
      std::string step = fresh();
      graph_.add_basic_event(step, role, {}, {});
      inputs.push_back(step);
    } else if (counters.empty() || n.refinement == "conjunctive" || regular.size() == 1) {
      for (const auto* c : regular) inputs.push_back(build(*c, role));
    } else {
      std::string inner = fresh();
      std::vector<VertexId> refined;
      for (const auto* c : regular) refined.push_back(build(*c, role));
      graph_.add_gate(inner, n.refinement == "sequential" ? GateType::SAND : GateType::OR,
                      refined);
      inputs.push_back(inner);
    }
    for (const auto* c : counters) {
      std::string neg = fresh();
      graph_.add_gate(neg, GateType::NOT, {build(*c, opponent(role))});
      inputs.push_back(neg);
    }

    GateType type = GateType::AND;
    if (counters.empty()) {
      type = n.refinement == "conjunctive"  ? GateType::AND
             : n.refinement == "sequential" ? GateType::SAND
                                            : GateType::OR;
    }
    graph_.add_gate(id, type, inputs, label);
    return id;
  }

  AdtGraph graph_;
  std::set<std::string> reserved_;
  int counter_ = 0;
};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

AdtGraph parse_adtool_xml(std::string_view text) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    parse_error("line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto root = doc.get_child_optional("adtree");
  if (!root) parse_error("missing <adtree> root element");
  std::vector<const pt::ptree*> tops;
  for (const auto& [name, child] : *root) {
    if (name == "node") tops.push_back(&child);
  }
  if (tops.size() != 1) {
    parse_error("<adtree> must contain exactly one top-level <node>, found " +
                std::to_string(tops.size()));
  }
  XmlNode top = read_node(*tops.front());
  if (top.switch_role) parse_error("the root node cannot switch role");
  return Importer(top).run(top);
}

XmlExport emit_adtool_xml(const AdtGraph& graph) {
  Diagnostics diagnostics = feedback(graph, Target::export_xml);
  if (has_errors(diagnostics)) {
    Diagnostics errors;
    for (auto& d : diagnostics) {
      if (d.severity == Severity::error) errors.push_back(std::move(d));
    }
    throw AdtError(std::move(errors));
  }

  auto inputs = graph.input_map();
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<adtree>\n";

  std::function<void(const VertexId&, int, bool)> write = [&](const VertexId& id, int depth,
                                                              bool switched) {
    const auto& v = graph.at(id);
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    std::string refinement = "disjunctive";
    if (v.gate == GateType::AND) refinement = "conjunctive";
    if (v.gate == GateType::SAND) refinement = "sequential";
    out += pad + "<node refinement=\"" + refinement + "\"";
    if (switched) out += " switchRole=\"yes\"";
    out += ">\n";
    out += pad + "  <label>" + escape(v.label.empty() ? id : v.label) + "</label>\n";
    std::vector<VertexId> counters;
    for (const auto& c : inputs[id]) {
      if (graph.at(c).gate == GateType::NOT) {
        counters.push_back(inputs[c].front());
      } else {
        write(c, depth + 1, false);
      }
    }
    for (const auto& c : counters) write(c, depth + 1, true);
    out += pad + "</node>\n";
  };
  write(graph.goal, 1, false);
  out += "</adtree>\n";
  return XmlExport{std::move(out), std::move(diagnostics)};
}

}  // namespace adtquant
