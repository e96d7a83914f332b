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

#include "adtquant/prism_subset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <algorithm>
#include <set>

namespace adtquant::prism {

namespace {

enum class Tok { ident, number, string, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
};

struct SyntaxError {
  std::size_t line;
  std::string message;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1;
  static const char* const kSymbols[] = {"->", "!=", "<=", ">=", "..", "<<", ">>", "[", "]", "(",
                                         ")",  ";",  ":",  ",",  "+",  "=",  "<",  ">",  "&", "|",
                                         "!",  "'",  "/",  "?"};
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), 0.0, line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      auto digits = [&] {
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      };
      digits();
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        digits();
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          digits();
        }
      }
      Token t{Tok::number, std::string(s.substr(i, j - i)), 0.0, line};
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      out.push_back(std::move(t));
      i = j;
    } else if (c == '"') {
      std::size_t j = s.find('"', i + 1);
      if (j == std::string_view::npos) throw SyntaxError{line, "unterminated string"};
      out.push_back({Tok::string, std::string(s.substr(i + 1, j - i - 1)), 0.0, line});
      i = j + 1;
    } else {
      bool matched = false;
      for (const char* sym : kSymbols) {
        const std::string_view sv(sym);
        if (s.substr(i, sv.size()) == sv) {
          out.push_back({Tok::symbol, std::string(sv), 0.0, line});
          i += sv.size();
          matched = true;
          break;
        }
      }
      if (!matched) throw SyntaxError{line, std::string("unexpected character '") + c + "'"};
    }
  }
  out.push_back({Tok::end, "", 0.0, line});
  return out;
}

Expr node(Expr::Kind kind) {
  Expr e;
  e.kind = kind;
  return e;
}

class Reader {
 public:
  explicit Reader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(std::string_view text) const {
    return peek().kind != Tok::string && peek().kind != Tok::end && peek().text == text;
  }
  bool at_end() const { return peek().kind == Tok::end; }

  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  Token expect(std::string_view text) {
    if (!at(text)) fail("expected '" + std::string(text) + "'");
    return take();
  }
  Token expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what));
    return take();
  }
  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    throw SyntaxError{t.line, message + (t.kind == Tok::end ? " at end of input"
                                                            : " near '" + t.text + "'")};
  }

  Expr expression() {
    Expr left = conjunction();
    if (!at("|")) return left;
    Expr e = node(Expr::Kind::disjunction);
    e.operands.push_back(std::move(left));
    while (at("|")) {
      take();
      e.operands.push_back(conjunction());
    }
    return e;
  }

  double integer() {
    auto t = expect(Tok::number, "an integer");
    if (t.number != std::floor(t.number)) fail("expected an integer");
    return t.number;
  }

 private:
  Expr conjunction() {
    Expr left = unary();
    if (!at("&")) return left;
    Expr e = node(Expr::Kind::conjunction);
    e.operands.push_back(std::move(left));
    while (at("&")) {
      take();
      e.operands.push_back(unary());
    }
    return e;
  }

  Expr unary() {
    if (at("!")) {
      take();
      Expr e = node(Expr::Kind::negation);
      e.operands.push_back(unary());
      return e;
    }
    Expr left = primary();
    for (const char* op : {"=", "!=", "<=", ">=", "<", ">"}) {
      if (at(op)) {
        take();
        Expr e = node(Expr::Kind::compare);
        e.op = op;
        e.operands.push_back(std::move(left));
        e.operands.push_back(primary());
        return e;
      }
    }
    return left;
  }

  Expr primary() {
    if (at("(")) {
      take();
      Expr e = expression();
      expect(")");
      return e;
    }
    if (peek().kind == Tok::number) {
      Expr e;
      e.number = take().number;
      return e;
    }
    if (peek().kind == Tok::ident) {
      auto t = take();
      Expr e;
      if (t.text == "true" || t.text == "false") {
        e.number = t.text == "true" ? 1.0 : 0.0;
      } else {
        e.kind = Expr::Kind::variable;
        e.name = t.text;
      }
      return e;
    }
    fail("expected an expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct Scope {
  std::map<std::string, std::size_t> variables;
  std::map<std::string, std::size_t> formulas;
};

void resolve(Expr& e, const Scope& scope, std::size_t formula_limit, Diagnostics& out) {
  if (e.kind == Expr::Kind::variable) {
    if (auto it = scope.variables.find(e.name); it != scope.variables.end()) {
      e.ref = it->second;
    } else if (auto f = scope.formulas.find(e.name);
               f != scope.formulas.end() && f->second < formula_limit) {
      e.kind = Expr::Kind::formula;
      e.ref = f->second;
    } else {
      out.push_back(make_error(codes::kEmitUndeclared, "undeclared identifier '" + e.name + "'"));
    }
  }
  for (auto& o : e.operands) resolve(o, scope, formula_limit, out);
}

double eval(const Expr& e, const std::vector<int>& state, const Model& model) {
  switch (e.kind) {
    case Expr::Kind::number: return e.number;
    case Expr::Kind::variable: return state[e.ref];
    case Expr::Kind::formula: return eval(model.formulas[e.ref].second, state, model);
    case Expr::Kind::negation: return eval(e.operands[0], state, model) == 0.0 ? 1.0 : 0.0;
    case Expr::Kind::conjunction:
      for (const auto& o : e.operands) {
        if (eval(o, state, model) == 0.0) return 0.0;
      }
      return 1.0;
    case Expr::Kind::disjunction:
      for (const auto& o : e.operands) {
        if (eval(o, state, model) != 0.0) return 1.0;
      }
      return 0.0;
    case Expr::Kind::compare: {
      const double a = eval(e.operands[0], state, model);
      const double b = eval(e.operands[1], state, model);
      if (e.op == "=") return a == b;
      if (e.op == "!=") return a != b;
      if (e.op == "<") return a < b;
      if (e.op == "<=") return a <= b;
      if (e.op == ">") return a > b;
      return a >= b;
    }
  }
  return 0.0;
}

Diagnostic syntax_diagnostic(const SyntaxError& e) {
  return make_error(codes::kEmitSyntax, "line " + std::to_string(e.line) + ": " + e.message);
}

std::vector<std::string> action_list(Reader& r) {
  std::vector<std::string> actions;
  while (!r.at("endplayer")) {
    r.expect("[");
    actions.push_back(r.expect(Tok::ident, "an action name").text);
    r.expect("]");
    if (!r.at(",")) break;
    r.take();
  }
  r.expect("endplayer");
  return actions;
}

Branch branch(Reader& r) {
  Branch b;
  if (r.peek().kind == Tok::number) {
    b.weight = r.take().number;
    if (r.at("/")) {
      r.take();
      const double d = r.expect(Tok::number, "a denominator").number;
      if (d == 0.0) r.fail("division by zero");
      b.weight /= d;
    }
    r.expect(":");
    if (r.at("true")) {
      r.take();
      return b;
    }
  }
  while (true) {
    r.expect("(");
    Assign a;
    a.target = r.expect(Tok::ident, "a variable").text;
    r.expect("'");
    r.expect("=");
    a.value = r.expression();
    r.expect(")");
    b.assignments.push_back(std::move(a));
    if (!r.at("&")) return b;
    r.take();
  }
}

Command command(Reader& r) {
  Command c;
  r.expect("[");
  if (!r.at("]")) c.action = r.expect(Tok::ident, "an action name").text;
  r.expect("]");
  c.guard = r.expression();
  r.expect("->");
  if (r.at("true")) {
    r.take();
    c.branches.push_back(Branch{});
  } else {
    c.branches.push_back(branch(r));
    while (r.at("+")) {
      r.take();
      c.branches.push_back(branch(r));
    }
  }
  r.expect(";");
  return c;
}

Variable variable(Reader& r) {
  Variable v;
  v.name = r.expect(Tok::ident, "a variable declaration or command").text;
  r.expect(":");
  r.expect("[");
  v.low = static_cast<int>(r.integer());
  r.expect("..");
  v.high = static_cast<int>(r.integer());
  r.expect("]");
  r.expect("init");
  v.init = static_cast<int>(r.integer());
  r.expect(";");
  return v;
}

void check_model(Model& model, Diagnostics& out) {
  Scope scope;
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    const auto& v = model.variables[i];
    if (!scope.variables.emplace(v.name, i).second) {
      out.push_back(make_error(codes::kEmitStructure, "variable '" + v.name + "' declared twice"));
    }
    if (v.low > v.high || v.init < v.low || v.init > v.high) {
      out.push_back(make_error(codes::kEmitStructure, "variable '" + v.name + "' has a bad range"));
    }
  }
  for (std::size_t i = 0; i < model.formulas.size(); ++i) {
    if (!scope.formulas.emplace(model.formulas[i].first, i).second ||
        scope.variables.count(model.formulas[i].first)) {
      out.push_back(make_error(codes::kEmitStructure,
                               "formula '" + model.formulas[i].first + "' declared twice"));
    }
  }
  for (std::size_t i = 0; i < model.formulas.size(); ++i) {
    resolve(model.formulas[i].second, scope, i, out);
  }
  const std::size_t all = model.formulas.size();
  for (auto& [name, e] : model.labels) resolve(e, scope, all, out);

  std::map<std::string, int> owners;
  for (const auto& [player, actions] : model.players) {
    for (const auto& a : actions) ++owners[a];
  }
  for (const auto& [action, count] : owners) {
    if (count > 1) {
      out.push_back(make_error(codes::kEmitStructure,
                               "action '" + action + "' belongs to several players"));
    }
  }

  for (auto& c : model.commands) {
    const std::string where = "command [" + c.action + "]";
    if (!c.action.empty() && !owners.count(c.action)) {
      out.push_back(make_error(codes::kEmitUndeclared,
                               where + ": action is not controlled by any player"));
    }
    resolve(c.guard, scope, all, out);
    double sum = 0.0;
    for (auto& b : c.branches) {
      if (!(b.weight > 0.0 && b.weight <= 1.0)) {
        out.push_back(make_error(codes::kEmitWeights,
                                 where + ": branch weight outside (0,1]"));
      }
      sum += b.weight;
      for (auto& a : b.assignments) {
        auto it = scope.variables.find(a.target);
        if (it == scope.variables.end()) {
          out.push_back(make_error(codes::kEmitUndeclared,
                                   where + ": assignment to undeclared '" + a.target + "'"));
          continue;
        }
        a.variable = it->second;
        resolve(a.value, scope, all, out);
        const auto& v = model.variables[a.variable];
        if (a.value.kind == Expr::Kind::number &&
            (a.value.number < v.low || a.value.number > v.high)) {
          out.push_back(make_error(codes::kEmitStructure,
                                   where + ": value out of range for '" + v.name + "'"));
        }
      }
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      out.push_back(make_error(codes::kEmitWeights,
                               where + ": branch weights sum to " + std::to_string(sum)));
    }
  }
}

}  // namespace

std::optional<Model> parse_model(std::string_view text, Diagnostics& out) {
  Model model;
  std::size_t modules = 0;
  try {
    Reader r(tokenize(text));
    if (!r.at("smg")) {
      out.push_back(make_error(codes::kEmitStructure, "model must start with 'smg'"));
      return std::nullopt;
    }
    r.take();
    while (!r.at_end()) {
      if (r.at("player")) {
        r.take();
        auto name = r.expect(Tok::ident, "a player name").text;
        if (model.players.count(name)) {
          out.push_back(make_error(codes::kEmitStructure, "player '" + name + "' declared twice"));
        }
        model.players[name] = action_list(r);
      } else if (r.at("formula")) {
        r.take();
        auto name = r.expect(Tok::ident, "a formula name").text;
        r.expect("=");
        model.formulas.emplace_back(name, r.expression());
        r.expect(";");
      } else if (r.at("label")) {
        r.take();
        auto name = r.expect(Tok::string, "a quoted label name").text;
        r.expect("=");
        if (model.labels.count(name)) {
          out.push_back(make_error(codes::kEmitStructure, "label \"" + name + "\" defined twice"));
        }
        model.labels[name] = r.expression();
        r.expect(";");
      } else if (r.at("module")) {
        r.take();
        ++modules;
        model.module = r.expect(Tok::ident, "a module name").text;
        while (!r.at("endmodule")) {
          if (r.at("[")) {
            model.commands.push_back(command(r));
          } else {
            model.variables.push_back(variable(r));
          }
        }
        r.take();
      } else {
        r.fail("expected 'player', 'module', 'formula' or 'label'");
      }
    }
  } catch (const SyntaxError& e) {
    out.push_back(syntax_diagnostic(e));
    return std::nullopt;
  }
  if (modules != 1) {
    out.push_back(make_error(codes::kEmitStructure,
                             "expected exactly one module, found " + std::to_string(modules)));
  }
  check_model(model, out);
  return model;
}

Diagnostics check_properties(std::string_view text, const Model& model) {
  Diagnostics out;
  std::size_t queries = 0;
  try {
    Reader r(tokenize(text));
    while (!r.at_end()) {
      r.expect("<<");
      while (true) {
        auto player = r.expect(Tok::ident, "a player name").text;
        if (!model.players.count(player)) {
          out.push_back(make_error(codes::kEmitQuery, "query names unknown player '" + player + "'"));
        }
        if (!r.at(",")) break;
        r.take();
      }
      r.expect(">>");
      if (!r.at("Pmax") && !r.at("Pmin")) r.fail("expected Pmax or Pmin");
      r.take();
      r.expect("=");
      r.expect("?");
      r.expect("[");
      r.expect("F");
      auto label = r.expect(Tok::string, "a quoted label").text;
      if (!model.labels.count(label)) {
        out.push_back(make_error(codes::kEmitQuery, "query refers to undefined label \"" + label + "\""));
      }
      r.expect("]");
      ++queries;
    }
  } catch (const SyntaxError& e) {
    out.push_back(syntax_diagnostic(e));
    return out;
  }
  if (queries == 0) out.push_back(make_error(codes::kEmitQuery, "properties file has no query"));
  return out;
}

double reach_probability_always_attempt(const Model& model, const std::string& label,
                                        std::size_t max_states) {
  auto target = model.labels.find(label);
  if (target == model.labels.end()) {
    throw AdtError(codes::kEmitQuery, "label \"" + label + "\" is not defined");
  }
  using State = std::vector<int>;
  std::map<State, std::size_t> index;
  std::vector<State> states;
  std::vector<std::vector<std::pair<double, std::size_t>>> successors;

  auto intern = [&](State s) {
    auto [it, fresh] = index.emplace(s, states.size());
    if (fresh) {
      if (states.size() >= max_states) {
        throw AdtError(codes::kSizeGuard, "state space exceeds " + std::to_string(max_states));
      }
      states.push_back(std::move(s));
    }
    return it->second;
  };

  State init;
  for (const auto& v : model.variables) init.push_back(v.init);
  intern(init);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State s = states[i];
    const Command* chosen = nullptr;
    int rank = 3;
    for (const auto& c : model.commands) {
      if (eval(c.guard, s, model) == 0.0) continue;
      const int r = c.action.rfind("attempt_", 0) == 0 ? 0 : c.action.rfind("skip_", 0) == 0 ? 2 : 1;
      if (r < rank) {
        rank = r;
        chosen = &c;
      }
    }
    std::vector<std::pair<double, std::size_t>> next;
    if (chosen) {
      for (const auto& b : chosen->branches) {
        State t = s;
        for (const auto& a : b.assignments) t[a.variable] = static_cast<int>(eval(a.value, s, model));
        next.emplace_back(b.weight, intern(std::move(t)));
      }
    }
    successors.push_back(std::move(next));
  }

  std::vector<char> goal(states.size());
  std::vector<double> p(states.size(), 0.0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    goal[i] = eval(target->second, states[i], model) != 0.0;
    if (goal[i]) p[i] = 1.0;
  }
  for (int iter = 0; iter < 100000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (goal[i]) continue;
      double v = 0.0;
      for (const auto& [w, j] : successors[i]) v += w * p[j];
      change = std::max(change, std::abs(v - p[i]));
      p[i] = v;
    }
    if (change == 0.0) break;
  }
  return p[0];
}

}  // namespace adtquant::prism
