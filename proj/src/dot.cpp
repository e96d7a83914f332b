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
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "adtquant/formats.hpp"

namespace adtquant {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_complement(double p) {
  // 15 significant digits drop the representation noise of 1 - p (0.01, not 0.010000000000000009).
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), 1.0 - p,
                                 std::chars_format::general, 15);
  double rounded = 0.0;
  std::from_chars(buf.data(), ptr, rounded);
  return format_real(rounded);
}

namespace {

// --- lexer -------------------------------------------------------------------

enum class Tok { id, lbrace, rbrace, lbracket, rbracket, equals, semicolon, comma, arrow, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  bool quoted = false;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      advance();
      t.kind = kind;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '=': return single(Tok::equals);
      case ';': return single(Tok::semicolon);
      case ',': return single(Tok::comma);
      case '"': return quoted(t);
      default: break;
    }
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      t.kind = Tok::arrow;
      t.text = "->";
      return t;
    }
    if (c == '-' && peek(1) == '-') fail(t, "undirected edges are not supported");
    if (is_id_start(c)) {
      t.kind = Tok::id;
      while (pos_ < text_.size() && is_id_char(text_[pos_])) t.text += advance();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      t.kind = Tok::id;
      if (c == '-') t.text += advance();
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        t.text += advance();
      }
      if (pos_ < text_.size() && is_id_start(text_[pos_])) {
        fail(t, "malformed numeral '" + t.text + text_[pos_] + "'");
      }
      if (t.text == "-" || t.text == ".") fail(t, "malformed numeral");
      return t;
    }
    if (c == '<') fail(t, "HTML strings are not supported");
    if (c == ':') fail(t, "ports are not supported");
    fail(t, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw AdtError(codes::kParse, "line " + std::to_string(at.line) + ", column " +
                                      std::to_string(at.column) + ": " + message);
  }

 private:
  static bool is_id_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }
  static bool is_id_char(char c) {
    return is_id_start(c) || std::isdigit(static_cast<unsigned char>(c));
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '#' && column_ == 1) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        Token at{Tok::end, {}, false, line_, column_};
        advance();
        advance();
        while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) fail(at, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token quoted(Token t) {
    advance();
    t.kind = Tok::id;
    t.quoted = true;
    while (true) {
      if (pos_ >= text_.size()) fail(t, "unterminated string");
      char c = advance();
      if (c == '"') break;
      if (c == '\\' && (peek(0) == '"' || peek(0) == '\\')) {
        t.text += advance();
      } else if (c == '\\' && peek(0) == '\n') {
        advance();
      } else {
        t.text += c;
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_keyword(const Token& t, std::string_view word) {
  if (t.kind != Tok::id || t.quoted || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

// --- parser --------------------------------------------------------------------

struct RawEdge {
  std::string from, to;
  Attributes attrs;
  Token at;
};

struct RawGraph {
  std::string name;
  Attributes graph_attrs;
  std::vector<std::string> node_order;
  std::map<std::string, Attributes> nodes;
  std::map<std::string, Token> first_seen;
  std::vector<RawEdge> edges;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  RawGraph parse() {
    if (is_keyword(tok_, "strict")) shift();
    if (is_keyword(tok_, "graph")) Lexer::fail(tok_, "undirected graphs are not supported");
    if (!is_keyword(tok_, "digraph")) Lexer::fail(tok_, "expected 'digraph'");
    shift();
    if (tok_.kind == Tok::id) {
      graph_.name = tok_.text;
      shift();
    }
    expect(Tok::lbrace, "'{'");
    while (tok_.kind != Tok::rbrace) {
      if (tok_.kind == Tok::end) Lexer::fail(tok_, "missing '}'");
      statement();
      if (tok_.kind == Tok::semicolon) shift();
    }
    shift();
    if (tok_.kind != Tok::end) Lexer::fail(tok_, "trailing content after graph");
    return std::move(graph_);
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  Token expect(Tok kind, std::string_view what) {
    if (tok_.kind != kind) Lexer::fail(tok_, "expected " + std::string(what));
    Token t = tok_;
    shift();
    return t;
  }

  void statement() {
    if (tok_.kind != Tok::id) Lexer::fail(tok_, "expected a statement");
    if (is_keyword(tok_, "subgraph")) Lexer::fail(tok_, "subgraphs are not supported");
    if (is_keyword(tok_, "node") || is_keyword(tok_, "edge")) {
      Lexer::fail(tok_, "default attribute statements are not supported");
    }
    if (is_keyword(tok_, "graph")) {
      shift();
      attr_lists(graph_.graph_attrs);
      return;
    }
    Token first = tok_;
    shift();
    if (tok_.kind == Tok::equals) {
      shift();
      Token value = expect(Tok::id, "a value");
      graph_.graph_attrs[first.text] = value.text;
      return;
    }
    if (tok_.kind == Tok::arrow) {
      std::vector<Token> chain{first};
      while (tok_.kind == Tok::arrow) {
        shift();
        if (tok_.kind == Tok::lbrace) Lexer::fail(tok_, "subgraphs are not supported");
        chain.push_back(expect(Tok::id, "a node id after '->'"));
      }
      Attributes attrs;
      attr_lists(attrs);
      for (const auto& t : chain) touch(t);
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        graph_.edges.push_back(RawEdge{chain[i].text, chain[i + 1].text, attrs, chain[i]});
      }
      return;
    }
    touch(first);
    attr_lists(graph_.nodes[first.text]);
  }

  void touch(const Token& t) {
    if (graph_.nodes.count(t.text)) return;
    graph_.nodes[t.text];
    graph_.node_order.push_back(t.text);
    graph_.first_seen.emplace(t.text, t);
  }

  void attr_lists(Attributes& into) {
    while (tok_.kind == Tok::lbracket) {
      shift();
      while (tok_.kind != Tok::rbracket) {
        Token key = expect(Tok::id, "an attribute name");
        expect(Tok::equals, "'='");
        Token value = expect(Tok::id, "an attribute value");
        into[key.text] = value.text;
        if (tok_.kind == Tok::comma || tok_.kind == Tok::semicolon) shift();
      }
      shift();
    }
  }

  Lexer lexer_;
  Token tok_;
  RawGraph graph_;
};

// --- interpretation ----------------------------------------------------------

[[noreturn]] void attribute_error(const std::string& id, const std::string& message) {
  throw AdtError(codes::kAttribute, message, id);
}

double real_attribute(const std::string& id, const std::string& key, const std::string& text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    attribute_error(id, key + "=\"" + text + "\" is not a finite real");
  }
  return value;
}

std::optional<double> take_real(Attributes& attrs, const std::string& id, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  double v = real_attribute(id, key, it->second);
  attrs.erase(it);
  return v;
}

void require_unit(const std::string& id, const std::string& key, std::optional<double> v) {
  if (v && (*v < 0.0 || *v > 1.0)) {
    attribute_error(id, key + " = " + format_real(*v) + " lies outside [0,1]");
  }
}

void require_non_negative(const std::string& id, const std::string& key, std::optional<double> v) {
  if (v && *v < 0.0) attribute_error(id, key + " = " + format_real(*v) + " is negative");
}

std::optional<QuantPair> take_pair(Attributes& attrs, const std::string& id,
                                   const std::string& prefix) {
  auto s = take_real(attrs, id, prefix + "_s");
  auto f = take_real(attrs, id, prefix + "_f");
  auto es = take_real(attrs, id, prefix + "_eps_s");
  auto ef = take_real(attrs, id, prefix + "_eps_f");
  auto d = take_real(attrs, id, prefix + "_delta");
  if (!s && !f && !es && !ef && !d) return std::nullopt;
  if (!s || !f) attribute_error(id, prefix + "_s and " + prefix + "_f must be given together");
  for (auto [key, v] : {std::pair{prefix + "_s", s}, std::pair{prefix + "_f", f},
                        std::pair{prefix + "_eps_s", es}, std::pair{prefix + "_eps_f", ef}}) {
    require_non_negative(id, key, v);
  }
  require_unit(id, prefix + "_delta", d);
  if ((es || ef) && !d) attribute_error(id, prefix + " eps given without " + prefix + "_delta");
  return QuantPair{*s, *f, es, ef, d};
}

Vertex interpret_vertex(const std::string& id, Attributes attrs, bool& is_goal) {
  Vertex v;
  if (auto it = attrs.find("type"); it != attrs.end()) {
    if (it->second != "BE") {
      auto gate = parse_gate_type(it->second);
      if (!gate) attribute_error(id, "unknown type \"" + it->second + "\"");
      v.gate = gate;
    }
    attrs.erase(it);
  }
  if (auto it = attrs.find("player"); it != attrs.end()) {
    auto player = parse_player(it->second);
    if (!player) attribute_error(id, "unknown player \"" + it->second + "\"");
    if (v.gate) attribute_error(id, "player applies to basic events only");
    v.player = *player;
    attrs.erase(it);
  }
  if (auto it = attrs.find("label"); it != attrs.end()) {
    v.label = it->second;
    attrs.erase(it);
  }
  is_goal = false;
  if (auto it = attrs.find("goal"); it != attrs.end()) {
    if (it->second != "true" && it->second != "false") {
      attribute_error(id, "goal must be \"true\" or \"false\"");
    }
    is_goal = it->second == "true";
    attrs.erase(it);
  }

  auto& q = v.quant;
  q.prob = take_real(attrs, id, "prob");
  q.prob_eps = take_real(attrs, id, "prob_eps");
  q.prob_delta = take_real(attrs, id, "prob_delta");
  require_unit(id, "prob", q.prob);
  require_non_negative(id, "prob_eps", q.prob_eps);
  require_unit(id, "prob_delta", q.prob_delta);
  if ((q.prob_eps || q.prob_delta) && !q.prob) {
    attribute_error(id, "prob_eps/prob_delta given without prob");
  }
  if (q.prob_eps && !q.prob_delta) attribute_error(id, "prob_eps given without prob_delta");
  q.cost = take_pair(attrs, id, "cost");
  q.delay = take_pair(attrs, id, "delay");
  if (v.gate && !q.empty()) attribute_error(id, "quantities apply to basic events only");

  v.extra = std::move(attrs);
  return v;
}

// --- emission ----------------------------------------------------------------

bool is_bare_id(std::string_view s) {
  if (s.empty()) return false;
  static const std::set<std::string> keywords = {"node", "edge", "graph", "digraph", "subgraph",
                                                 "strict"};
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (keywords.count(lower)) return false;
  const bool all_digits =
      std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (all_digits) return true;
  if (std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string id_text(std::string_view s) { return is_bare_id(s) ? std::string(s) : quote(s); }

std::string attr_block(const Attributes& attrs) {
  if (attrs.empty()) return {};
  std::string out = " [";
  bool first = true;
  for (const auto& [k, v] : attrs) {
    if (!first) out += ", ";
    first = false;
    out += id_text(k) + "=" + quote(v);
  }
  return out + "]";
}

void put_pair(Attributes& attrs, const std::string& prefix, const std::optional<QuantPair>& p) {
  if (!p) return;
  attrs[prefix + "_s"] = format_real(p->succeed);
  attrs[prefix + "_f"] = format_real(p->fail);
  if (p->eps_succeed) attrs[prefix + "_eps_s"] = format_real(*p->eps_succeed);
  if (p->eps_fail) attrs[prefix + "_eps_f"] = format_real(*p->eps_fail);
  if (p->delta) attrs[prefix + "_delta"] = format_real(*p->delta);
}

}  // namespace

AdtGraph parse_dot(std::string_view text) {
  RawGraph raw = Parser(text).parse();

  AdtGraph graph;
  graph.name = raw.name;
  graph.graph_attributes = raw.graph_attrs;

  std::vector<std::string> goals;
  for (auto& [id, attrs] : raw.nodes) {
    bool is_goal = false;
    graph.vertices.emplace(id, interpret_vertex(id, attrs, is_goal));
    if (is_goal) goals.push_back(id);
  }

  for (auto& e : raw.edges) {
    Attributes attrs = e.attrs;
    std::string kind = "input";
    if (auto it = attrs.find("kind"); it != attrs.end()) {
      kind = it->second;
      attrs.erase(it);
    }
    Edge edge{e.from, e.to, std::move(attrs)};
    if (kind == "input") {
      graph.input_edges.push_back(std::move(edge));
    } else if (kind == "trigger") {
      graph.trigger_edges.push_back(std::move(edge));
    } else if (kind == "reset") {
      graph.reset_edges.push_back(std::move(edge));
    } else {
      throw AdtError(codes::kAttribute,
                     "edge " + e.from + " -> " + e.to + ": unknown kind \"" + kind + "\"", e.to);
    }
  }

  if (goals.size() > 1) {
    std::string list;
    for (const auto& g : goals) list += (list.empty() ? "" : ", ") + g;
    throw AdtError(codes::kGoalAmbiguous, "several vertices are marked goal: " + list);
  }
  if (goals.size() == 1) {
    graph.goal = goals.front();
  } else {
    auto sinks = graph.sinks();
    if (sinks.empty()) throw AdtError(codes::kNoGoal, "graph has no vertices without successors");
    if (sinks.size() > 1) {
      std::string list;
      for (const auto& s : sinks) list += (list.empty() ? "" : ", ") + s;
      throw AdtError(codes::kGoalAmbiguous, "no goal attribute and several sinks: " + list);
    }
    graph.goal = sinks.front();
  }
  return graph;
}

std::string emit_dot(const AdtGraph& graph) {
  std::string out = "digraph ";
  if (!graph.name.empty()) out += id_text(graph.name) + " ";
  out += "{\n";
  if (!graph.graph_attributes.empty()) {
    out += "  graph" + attr_block(graph.graph_attributes) + ";\n";
  }
  for (const auto& [id, v] : graph.vertices) {
    Attributes attrs = v.extra;
    attrs["type"] = v.gate ? std::string(to_string(*v.gate)) : "BE";
    if (v.is_basic_event()) attrs["player"] = std::string(to_string(v.player));
    if (!v.label.empty()) attrs["label"] = v.label;
    if (id == graph.goal) attrs["goal"] = "true";
    if (v.quant.prob) attrs["prob"] = format_real(*v.quant.prob);
    if (v.quant.prob_eps) attrs["prob_eps"] = format_real(*v.quant.prob_eps);
    if (v.quant.prob_delta) attrs["prob_delta"] = format_real(*v.quant.prob_delta);
    put_pair(attrs, "cost", v.quant.cost);
    put_pair(attrs, "delay", v.quant.delay);
    out += "  " + id_text(id) + attr_block(attrs) + ";\n";
  }
  auto edges = [&](const std::vector<Edge>& list, const char* kind) {
    for (const auto& e : list) {
      Attributes attrs = e.extra;
      if (kind) attrs["kind"] = kind;
      out += "  " + id_text(e.from) + " -> " + id_text(e.to) + attr_block(attrs) + ";\n";
    }
  };
  edges(graph.input_edges, nullptr);
  edges(graph.trigger_edges, "trigger");
  edges(graph.reset_edges, "reset");
  out += "}\n";
  return out;
}

}  // namespace adtquant
