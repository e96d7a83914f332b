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

#include <cmath>
#include <functional>
#include <set>

#include "adtquant/export.hpp"
#include "adtquant/formats.hpp"

// One timed automaton per basic event:
//   [Waiting --trigger_T?-->] Idle --x=0--> choice --p--> AttemptingSuccess --x>=ds--> Succeeded
//                                                --1-p--> AttemptingFailure --x>=df--> Failed
// reset_R? edges lead back to Idle from every later location. SAND/SOR inputs
// wait on their left sibling through guards on the Idle edge. A Monitor
// template broadcasts triggers and resets and moves to `goal` once the goal holds.

namespace adtquant {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Transition {
  std::string source, target, guard, sync, assign, probability;
};

struct Location {
  std::string id, name, invariant, rate;
};

class TemplateWriter {
 public:
  explicit TemplateWriter(std::string name) : name_(std::move(name)) {}

  std::string loc(const std::string& suffix) const { return name_ + "." + suffix; }

  void location(const std::string& suffix, const std::string& name, std::string invariant = {},
                std::string rate = {}) {
    locations_.push_back({loc(suffix), name, std::move(invariant), std::move(rate)});
  }
  void branchpoint(const std::string& suffix) { branchpoints_.push_back(loc(suffix)); }
  void init(const std::string& suffix) { init_ = loc(suffix); }
  void declare(const std::string& line) { declaration_ += line + "\n"; }
  void edge(Transition t) {
    t.source = loc(t.source);
    t.target = loc(t.target);
    transitions_.push_back(std::move(t));
  }

  std::string str() const {
    std::string out = "  <template>\n    <name>" + name_ + "</name>\n";
    if (!declaration_.empty()) {
      out += "    <declaration>" + xml_escape(declaration_) + "</declaration>\n";
    }
    for (const auto& l : locations_) {
      out += "    <location id=\"" + l.id + "\">\n      <name>" + l.name + "</name>\n";
      if (!l.invariant.empty()) {
        out += "      <label kind=\"invariant\">" + xml_escape(l.invariant) + "</label>\n";
      }
      if (!l.rate.empty()) {
        out += "      <label kind=\"exponentialrate\">" + l.rate + "</label>\n";
      }
      out += "    </location>\n";
    }
    for (const auto& b : branchpoints_) out += "    <branchpoint id=\"" + b + "\"/>\n";
    out += "    <init ref=\"" + init_ + "\"/>\n";
    for (const auto& t : transitions_) {
      out += "    <transition>\n      <source ref=\"" + t.source + "\"/>\n      <target ref=\"" +
             t.target + "\"/>\n";
      auto label = [&](const char* kind, const std::string& text) {
        if (!text.empty()) {
          out += std::string("      <label kind=\"") + kind + "\">" + xml_escape(text) + "</label>\n";
        }
      };
      label("guard", t.guard);
      label("synchronisation", t.sync);
      label("assignment", t.assign);
      label("probability", t.probability);
      out += "    </transition>\n";
    }
    out += "  </template>\n";
    return out;
  }

 private:
  std::string name_;
  std::string declaration_;
  std::vector<Location> locations_;
  std::vector<std::string> branchpoints_;
  std::string init_;
  std::vector<Transition> transitions_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

ExportArtifact export_uppaal(const AdtGraph& graph, std::optional<double> horizon) {
  Diagnostics notes = feedback(graph, Target::export_uppaal);
  {
    Diagnostics errors;
    for (const auto& d : notes) {
      if (d.severity == Severity::error) errors.push_back(d);
    }
    if (!errors.empty()) throw AdtError(std::move(errors));
  }
  if (horizon && !(*horizon >= 0.0 && std::isfinite(*horizon))) {
    throw AdtError(codes::kAttribute, "horizon must be a finite non-negative number");
  }

  const auto relevant = relevant_vertices(graph, true);
  const std::set<VertexId> members(relevant.begin(), relevant.end());
  const auto inputs = graph.input_map();

  std::vector<VertexId> events;
  Diagnostics missing;
  for (const auto& id : relevant) {
    const auto& v = graph.at(id);
    if (!v.is_basic_event()) continue;
    events.push_back(id);
    if (!v.quant.prob) {
      missing.push_back(make_error(codes::kMissingAnnotation, "basic event has no probability", id,
                                   Target::export_uppaal));
    }
    if (!v.quant.delay) {
      missing.push_back(make_error(codes::kMissingAnnotation, "basic event has no delay", id,
                                   Target::export_uppaal));
    }
  }
  if (!missing.empty()) throw AdtError(std::move(missing));

  auto ok = [&](const VertexId& id) {
    return graph.at(id).is_basic_event() ? "s_" + id : "ok_" + id + "()";
  };
  auto ko = [&](const VertexId& id) {
    return graph.at(id).is_basic_event() ? "f_" + id : "ko_" + id + "()";
  };

  // Order guards from SAND/SOR ancestors, collected per basic event.
  std::map<VertexId, std::vector<std::string>> order_guards;
  std::set<VertexId> visited;
  std::function<void(const VertexId&, std::vector<std::string>)> walk =
      [&](const VertexId& id, std::vector<std::string> guards) {
        if (!visited.insert(id).second) return;
        const auto& v = graph.at(id);
        if (v.is_basic_event()) {
          order_guards[id] = std::move(guards);
          return;
        }
        const auto& in = inputs.at(id);
        for (std::size_t i = 0; i < in.size(); ++i) {
          auto g = guards;
          if (i > 0 && v.gate == GateType::SAND) g.push_back(ok(in[i - 1]));
          if (i > 0 && v.gate == GateType::SOR) g.push_back(ko(in[i - 1]));
          walk(in[i], std::move(g));
        }
      };
  for (const auto& id : relevant) {
    bool root = true;
    for (const auto& e : graph.input_edges) {
      if (e.from == id && members.count(e.to)) root = false;
    }
    if (root) walk(id, {});
  }

  std::vector<VertexId> tr_gates, re_gates;
  for (const auto& id : relevant) {
    if (graph.at(id).gate == GateType::TR) tr_gates.push_back(id);
    if (graph.at(id).gate == GateType::RE) re_gates.push_back(id);
  }
  std::map<VertexId, std::vector<VertexId>> triggers_of;
  std::map<VertexId, std::vector<VertexId>> resets_of;
  for (const auto& e : graph.trigger_edges) {
    if (members.count(e.from) && members.count(e.to)) triggers_of[e.to].push_back(e.from);
  }
  for (const auto& e : graph.reset_edges) {
    if (members.count(e.from) && members.count(e.to)) resets_of[e.to].push_back(e.from);
  }

  // Global declarations.
  std::string decl = "// attack-defense tree";
  if (!graph.name.empty()) decl += " " + graph.name;
  decl += ", goal " + graph.goal + "\n";
  decl += "// s_<id>: basic event succeeded, f_<id>: basic event failed\n";
  for (const auto& id : events) decl += "bool s_" + id + " = false;\nbool f_" + id + " = false;\n";
  decl += "bool goal = false;\n";
  for (const auto& t : tr_gates) decl += "broadcast chan trigger_" + t + ";\n";
  for (const auto& r : re_gates) decl += "broadcast chan reset_" + r + ";\n";
  for (const auto& id : topo_order(graph)) {
    if (!members.count(id)) continue;
    const auto& v = graph.at(id);
    if (v.is_basic_event()) continue;
    const auto& in = inputs.at(id);
    std::vector<std::string> oks, kos;
    for (const auto& c : in) {
      oks.push_back(ok(c));
      kos.push_back(ko(c));
    }
    std::string succ, fail;
    switch (*v.gate) {
      case GateType::AND:
      case GateType::SAND:
        succ = join(oks, " && ");
        fail = join(kos, " || ");
        break;
      case GateType::OR:
      case GateType::SOR:
        succ = join(oks, " || ");
        fail = join(kos, " && ");
        break;
      case GateType::NOT:
        succ = kos.front();
        fail = oks.front();
        break;
      case GateType::TR:
      case GateType::RE:
        succ = oks.front();
        fail = kos.front();
        break;
    }
    decl += "bool ok_" + id + "() { return " + succ + "; }\n";
    decl += "bool ko_" + id + "() { return " + fail + "; }\n";
  }

  std::string body;
  std::vector<std::string> instances;
  double total_delay = 0.0;
  for (const auto& id : events) {
    const auto& v = graph.at(id);
    const double p = *v.quant.prob;
    const auto& delay = *v.quant.delay;
    total_delay += delay.succeed;
    const std::string name = "BE_" + id;
    instances.push_back(name);
    TemplateWriter t(name);
    t.declare("// " + std::string(to_string(v.player)) + " step" +
              (v.label.empty() ? "" : ": " + v.label));
    t.declare("clock x;");
    const bool triggered = triggers_of.count(id) != 0;
    if (triggered) t.location("waiting", "Waiting");
    t.location("idle", "Idle", {}, "1");
    t.location("try_ok", "AttemptingSuccess", "x <= " + format_real(delay.succeed));
    t.location("try_ko", "AttemptingFailure", "x <= " + format_real(delay.fail));
    t.location("ok", "Succeeded");
    t.location("ko", "Failed");
    t.branchpoint("choice");
    t.init(triggered ? "waiting" : "idle");
    for (const auto& g : triggers_of[id]) t.edge({"waiting", "idle", "", "trigger_" + g + "?", "", ""});
    t.edge({"idle", "choice", join(order_guards[id], " && "), "", "x = 0", ""});
    if (p > 0.0) t.edge({"choice", "try_ok", "", "", "", format_real(p)});
    if (p < 1.0) t.edge({"choice", "try_ko", "", "", "", format_complement(p)});
    t.edge({"try_ok", "ok", "x >= " + format_real(delay.succeed), "", "s_" + id + " = true", ""});
    t.edge({"try_ko", "ko", "x >= " + format_real(delay.fail), "", "f_" + id + " = true", ""});
    for (const auto& r : resets_of[id]) {
      for (const char* from : {"try_ok", "try_ko", "ok", "ko"}) {
        t.edge({from, "idle", "", "reset_" + r + "?", "s_" + id + " = false, f_" + id + " = false",
                ""});
      }
    }
    body += t.str();
  }

  TemplateWriter monitor("Monitor");
  for (const auto& g : tr_gates) monitor.declare("bool fired_" + g + " = false;");
  for (const auto& g : re_gates) monitor.declare("bool fired_" + g + " = false;");
  monitor.location("watch", "watch", {}, "1000");
  monitor.location("goal", "goal");
  monitor.init("watch");
  for (const auto& g : tr_gates) {
    monitor.edge({"watch", "watch", ok(inputs.at(g).front()) + " && !fired_" + g,
                  "trigger_" + g + "!", "fired_" + g + " = true", ""});
  }
  for (const auto& g : re_gates) {
    monitor.edge({"watch", "watch", ok(inputs.at(g).front()) + " && !fired_" + g,
                  "reset_" + g + "!", "fired_" + g + " = true", ""});
  }
  monitor.edge({"watch", "goal", ok(graph.goal), "", "goal = true", ""});
  body += monitor.str();
  instances.push_back("Monitor");

  std::string xml =
      "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
      "<!DOCTYPE nta PUBLIC '-//Uppaal Team//DTD Flat System 1.1//EN' "
      "'http://www.it.uu.se/research/group/darts/uppaal/flat-1_2.dtd'>\n"
      "<nta>\n  <declaration>" +
      xml_escape(decl) + "</declaration>\n" + body + "  <system>system " +
      join(instances, ", ") + ";</system>\n</nta>\n";

  const double t_max = horizon.value_or(total_delay);
  ExportArtifact artifact;
  artifact.files["model.xml"] = std::move(xml);
  artifact.files["queries.q"] =
      std::string("// probability that the goal is reached within ") + format_real(t_max) +
      (horizon ? " time units\n" : " time units (sum of success delays)\n") + "Pr[<=" +
      format_real(t_max) + "](<> Monitor.goal)\n";
  artifact.diagnostics = std::move(notes);
  return artifact;
}

}  // namespace adtquant
