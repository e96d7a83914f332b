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

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cctype>
#include <charconv>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "adtquant/export.hpp"
#include "adtquant/prism_subset.hpp"

namespace adtquant {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kUppaalKeywords = {"bool",  "int",    "clock",  "chan", "broadcast",
                                               "urgent", "return", "true",  "false", "double",
                                               "const",  "void",   "system"};

std::vector<std::string> identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word(text.substr(i, j - i));
      if (!kUppaalKeywords.count(word)) out.push_back(std::move(word));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      // Skip numerals including exponents such as 1e-05.
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '.' ||
                                 ((text[i] == '-' || text[i] == '+') &&
                                  (text[i - 1] == 'e' || text[i - 1] == 'E')))) {
        ++i;
      }
    } else {
      ++i;
    }
  }
  return out;
}

bool balanced(std::string_view text) {
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (depth < 0) return false;
  }
  return depth == 0;
}

std::string strip_comments(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find("//");
    out += (pos == std::string::npos ? line : line.substr(0, pos)) + "\n";
  }
  return out;
}

struct Declarations {
  std::set<std::string> variables;
  std::set<std::string> channels;
  std::set<std::string> functions;

  bool knows(const std::string& name) const {
    return variables.count(name) || channels.count(name) || functions.count(name);
  }
};

// Reads the declaration forms the exporter writes; everything else is a syntax error.
void read_declarations(const std::string& raw, Declarations& scope, const Declarations* outer,
                       const std::string& where, Diagnostics& out) {
  static const std::regex var(R"(^(bool|int|clock)\s+([A-Za-z_]\w*)(\s*=\s*([^;]+))?;$)");
  static const std::regex chan(R"(^(broadcast\s+|urgent\s+)*chan\s+([A-Za-z_]\w*);$)");
  static const std::regex func(
      R"(^bool\s+([A-Za-z_]\w*)\(\)\s*\{\s*return\s+(.+);\s*\}$)");
  auto known = [&](const std::string& n) { return scope.knows(n) || (outer && outer->knows(n)); };
  std::istringstream in(strip_comments(raw));
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    std::smatch m;
    if (std::regex_match(line, m, var)) {
      for (const auto& id : identifiers(m[4].str())) {
        if (!known(id)) out.push_back(make_error(codes::kEmitUndeclared, where + ": '" + id + "' used before declaration"));
      }
      scope.variables.insert(m[2].str());
    } else if (std::regex_match(line, m, chan)) {
      scope.channels.insert(m[2].str());
    } else if (std::regex_match(line, m, func)) {
      const std::string body = m[2].str();
      if (!balanced(body)) {
        out.push_back(make_error(codes::kEmitSyntax, where + ": unbalanced parentheses in " + m[1].str()));
      }
      for (const auto& id : identifiers(body)) {
        if (!known(id)) out.push_back(make_error(codes::kEmitUndeclared, where + ": '" + id + "' used before declaration"));
      }
      scope.functions.insert(m[1].str());
    } else {
      out.push_back(make_error(codes::kEmitSyntax, where + ": cannot read declaration '" + line + "'"));
    }
  }
}

std::optional<double> number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

struct TemplateInfo {
  std::set<std::string> location_names;
};

Diagnostics validate_uppaal(std::string_view content, std::map<std::string, TemplateInfo>* templates_out) {
  Diagnostics out;
  pt::ptree doc;
  try {
    std::istringstream in{std::string(content)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    out.push_back(make_error(codes::kEmitSyntax, "line " + std::to_string(e.line()) + ": " + e.message()));
    return out;
  }
  auto nta = doc.get_child_optional("nta");
  if (!nta) {
    out.push_back(make_error(codes::kEmitStructure, "missing <nta> root element"));
    return out;
  }

  Declarations global;
  if (auto d = nta->get_child_optional("declaration")) {
    read_declarations(d->data(), global, nullptr, "global declaration", out);
  } else {
    out.push_back(make_error(codes::kEmitStructure, "missing global <declaration>"));
  }

  std::map<std::string, TemplateInfo> templates;
  std::set<std::string> all_ids;
  for (const auto& [tag, tmpl] : *nta) {
    if (tag != "template") continue;
    const std::string name = tmpl.get<std::string>("name", "");
    const std::string where = "template " + (name.empty() ? std::string("?") : name);
    if (name.empty()) out.push_back(make_error(codes::kEmitStructure, "template without <name>"));
    if (templates.count(name)) out.push_back(make_error(codes::kEmitStructure, where + " declared twice"));
    auto& info = templates[name];

    Declarations local;
    if (auto d = tmpl.get_child_optional("declaration")) {
      read_declarations(d->data(), local, &global, where, out);
    }
    auto known = [&](const std::string& n) { return local.knows(n) || global.knows(n); };
    auto check_expr = [&](const std::string& text, const std::string& what) {
      if (!balanced(text)) out.push_back(make_error(codes::kEmitSyntax, where + ": unbalanced " + what));
      for (const auto& id : identifiers(text)) {
        if (!known(id)) {
          out.push_back(make_error(codes::kEmitUndeclared, where + ": " + what + " uses undeclared '" + id + "'"));
        }
      }
    };

    std::set<std::string> locations, branchpoints;
    for (const auto& [ltag, node] : tmpl) {
      if (ltag != "location" && ltag != "branchpoint") continue;
      const auto id = node.get<std::string>("<xmlattr>.id", "");
      if (id.empty()) {
        out.push_back(make_error(codes::kEmitStructure, where + ": " + ltag + " without id"));
        continue;
      }
      if (!all_ids.insert(id).second) {
        out.push_back(make_error(codes::kEmitStructure, where + ": duplicate id '" + id + "'"));
      }
      (ltag == "location" ? locations : branchpoints).insert(id);
      if (ltag == "location") {
        if (auto n = node.get_optional<std::string>("name")) info.location_names.insert(*n);
        for (const auto& [k, label] : node) {
          if (k != "label") continue;
          const auto kind = label.get<std::string>("<xmlattr>.kind", "");
          if (kind == "invariant") {
            check_expr(label.data(), "invariant");
          } else if (kind == "exponentialrate") {
            if (!number(label.data())) out.push_back(make_error(codes::kEmitSyntax, where + ": rate is not a number"));
          } else {
            out.push_back(make_error(codes::kEmitStructure, where + ": unexpected location label '" + kind + "'"));
          }
        }
      }
    }
    const auto init = tmpl.get<std::string>("init.<xmlattr>.ref", "");
    if (!locations.count(init)) {
      out.push_back(make_error(codes::kEmitStructure, where + ": <init> does not name a location"));
    }

    std::map<std::string, double> branch_weight;
    for (const auto& [ttag, tr] : tmpl) {
      if (ttag != "transition") continue;
      const auto source = tr.get<std::string>("source.<xmlattr>.ref", "");
      const auto target = tr.get<std::string>("target.<xmlattr>.ref", "");
      if (!locations.count(source) && !branchpoints.count(source)) {
        out.push_back(make_error(codes::kEmitStructure, where + ": transition from unknown '" + source + "'"));
      }
      if (!locations.count(target) && !branchpoints.count(target)) {
        out.push_back(make_error(codes::kEmitStructure, where + ": transition to unknown '" + target + "'"));
      }
      bool weighted = false;
      for (const auto& [k, label] : tr) {
        if (k != "label") continue;
        const auto kind = label.get<std::string>("<xmlattr>.kind", "");
        const std::string text = label.data();
        if (kind == "guard" || kind == "assignment") {
          check_expr(text, kind);
        } else if (kind == "synchronisation") {
          static const std::regex sync(R"(^\s*([A-Za-z_]\w*)\s*[!?]\s*$)");
          std::smatch m;
          if (!std::regex_match(text, m, sync)) {
            out.push_back(make_error(codes::kEmitSyntax, where + ": malformed synchronisation '" + text + "'"));
          } else if (!global.channels.count(m[1].str())) {
            out.push_back(make_error(codes::kEmitUndeclared, where + ": undeclared channel '" + m[1].str() + "'"));
          }
        } else if (kind == "probability") {
          weighted = true;
          auto w = number(text);
          if (!w || !(*w >= 0.0)) {
            out.push_back(make_error(codes::kEmitWeights, where + ": probability weight '" + text + "'"));
          } else {
            branch_weight[source] += *w;
          }
        } else {
          out.push_back(make_error(codes::kEmitStructure, where + ": unexpected transition label '" + kind + "'"));
        }
      }
      if (weighted && !branchpoints.count(source)) {
        out.push_back(make_error(codes::kEmitStructure, where + ": probability weight outside a branchpoint"));
      }
    }
    for (const auto& b : branchpoints) {
      const double sum = branch_weight.count(b) ? branch_weight[b] : 0.0;
      if (std::abs(sum - 1.0) > 1e-9) {
        out.push_back(make_error(codes::kEmitWeights,
                                 where + ": branch weights at '" + b + "' sum to " + std::to_string(sum)));
      }
    }
  }
  if (templates.empty()) out.push_back(make_error(codes::kEmitStructure, "no <template> elements"));

  auto system = nta->get_optional<std::string>("system");
  if (!system) {
    out.push_back(make_error(codes::kEmitStructure, "missing <system>"));
  } else {
    static const std::regex line(R"(^\s*system\s+([A-Za-z_]\w*(\s*,\s*[A-Za-z_]\w*)*)\s*;\s*$)");
    std::smatch m;
    if (!std::regex_match(*system, m, line)) {
      out.push_back(make_error(codes::kEmitSyntax, "cannot read <system> line"));
    } else {
      const auto listed = identifiers(m[1].str());
      for (const auto& id : listed) {
        if (!templates.count(id)) {
          out.push_back(make_error(codes::kEmitUndeclared, "system instantiates unknown template '" + id + "'"));
        }
      }
      for (const auto& [name, info] : templates) {
        if (std::find(listed.begin(), listed.end(), name) == listed.end()) {
          out.push_back(make_error(codes::kEmitStructure, "template '" + name + "' is never instantiated"));
        }
      }
    }
  }
  if (templates_out) *templates_out = std::move(templates);
  return out;
}

Diagnostics check_uppaal_queries(std::string_view text,
                                 const std::map<std::string, TemplateInfo>& templates) {
  Diagnostics out;
  static const std::regex query(
      R"(^Pr\[<=([0-9.eE+-]+)\]\(<>\s*([A-Za-z_]\w*)\.([A-Za-z_]\w*)\)$)");
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line.compare(b, 2, "//") == 0) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    std::smatch m;
    if (!std::regex_match(line, m, query) || !number(m[1].str())) {
      out.push_back(make_error(codes::kEmitQuery, "cannot read query '" + line + "'"));
      continue;
    }
    ++count;
    auto it = templates.find(m[2].str());
    if (it == templates.end() || !it->second.location_names.count(m[3].str())) {
      out.push_back(make_error(codes::kEmitQuery, "query refers to unknown location " + m[2].str() +
                                                      "." + m[3].str()));
    }
  }
  if (count == 0) out.push_back(make_error(codes::kEmitQuery, "query file has no query"));
  return out;
}

}  // namespace

Diagnostics validate_emitted(std::string_view content, ExportTarget kind) {
  if (kind == ExportTarget::uppaal_xml) return validate_uppaal(content, nullptr);
  Diagnostics out;
  prism::parse_model(content, out);
  return out;
}

Diagnostics validate_emitted(const ExportArtifact& artifact, ExportTarget kind) {
  const std::string model_file = kind == ExportTarget::prism_smg ? "model.prism" : "model.xml";
  const std::string query_file = kind == ExportTarget::prism_smg ? "props.props" : "queries.q";
  Diagnostics out;
  for (const auto& f : {model_file, query_file}) {
    if (!artifact.files.count(f)) out.push_back(make_error(codes::kEmitStructure, "missing file " + f));
  }
  if (!out.empty()) return out;
  const auto& model = artifact.files.at(model_file);
  const auto& queries = artifact.files.at(query_file);
  if (kind == ExportTarget::prism_smg) {
    auto parsed = prism::parse_model(model, out);
    if (parsed) {
      auto q = prism::check_properties(queries, *parsed);
      out.insert(out.end(), q.begin(), q.end());
    }
  } else {
    std::map<std::string, TemplateInfo> templates;
    out = validate_uppaal(model, &templates);
    auto q = check_uppaal_queries(queries, templates);
    out.insert(out.end(), q.begin(), q.end());
  }
  return out;
}

}  // namespace adtquant
