// Copyright 2026 The qdse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenQASM 2.0 reader and writer for the single-register subset used by the
// benchmark corpora. User `gate` definitions are expanded inline; u1/u2/u3
// are lowered to rz/sx sequences on ingest.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdse/circuit.hpp"

namespace qdse {

class QasmError : public std::runtime_error {
 public:
  QasmError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace qasm_detail {

enum class Tok { Ident, Real, Int, String, Symbol, End };

struct Token {
  Tok type;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int tl = line;
    const int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                        std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      out.push_back({real ? Tok::Real : Tok::Int, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw QasmError("unterminated string", tl, tc);
      out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), tl, tc});
      advance(j - i + 1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", tl, tc});
      advance(2);
      continue;
    }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::Symbol, "==", tl, tc});
      advance(2);
      continue;
    }
    static constexpr std::string_view kSymbols = ";,()[]{}+-*/^";
    if (kSymbols.find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw QasmError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct GateDef {
  std::vector<std::string> params;
  std::vector<std::string> args;
  std::vector<Token> body;  // terminated by an End token
};

/// Operand as written: register name plus optional index.
struct Operand {
  std::string reg;
  std::optional<int> index;
  int line;
  int col;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Circuit parse_program() {
    expect_ident("OPENQASM");
    const Token& ver = next();
    if ((ver.type != Tok::Real && ver.type != Tok::Int) || std::stod(ver.text) != 2.0) {
      throw QasmError("only OPENQASM 2.0 is supported", ver.line, ver.col);
    }
    expect_symbol(";");
    while (peek().type != Tok::End) statement();
    Circuit circ(qreg_size_, creg_size_);
    for (Gate& g : gates_) circ.append(std::move(g));
    return circ;
  }

 private:
  // Expression evaluation environment inside gate bodies.
  struct Env {
    const std::map<std::string, double>* params = nullptr;
    const std::map<std::string, Qubit>* args = nullptr;
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw QasmError(msg, t.line, t.col); }
  bool is_symbol(std::string_view s) const { return peek().type == Tok::Symbol && peek().text == s; }
  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'", peek());
    next();
  }
  void expect_ident(std::string_view s) {
    if (peek().type != Tok::Ident || peek().text != s) fail("expected '" + std::string(s) + "'", peek());
    next();
  }
  std::string ident() {
    if (peek().type != Tok::Ident) fail("expected identifier", peek());
    return next().text;
  }
  int integer() {
    if (peek().type != Tok::Int) fail("expected integer", peek());
    const Token& t = next();
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) fail("integer out of range", t);
    return v;
  }

  void statement() {
    const Token& head = peek();
    if (head.type != Tok::Ident) fail("expected statement", head);
    const std::string& kw = head.text;
    if (kw == "include") {
      next();
      if (peek().type != Tok::String) fail("expected file name", peek());
      next();
      expect_symbol(";");
    } else if (kw == "qreg" || kw == "creg") {
      declare_register();
    } else if (kw == "gate") {
      define_gate();
    } else if (kw == "opaque" || kw == "if" || kw == "reset") {
      fail("unsupported statement '" + kw + "'", head);
    } else if (kw == "measure") {
      next();
      Operand q = operand();
      expect_symbol("->");
      Operand c = operand();
      expect_symbol(";");
      emit_measure(q, c);
    } else if (kw == "barrier") {
      next();
      std::vector<Operand> ops = operand_list();
      expect_symbol(";");
      std::vector<Qubit> qs;
      for (const Operand& op : ops) {
        for (Qubit q : expand_qubits(op)) qs.push_back(q);
      }
      push_gate(make_gate(GateKind::Barrier, std::move(qs)), head);
    } else {
      gate_call(Env{});
    }
  }

  void declare_register() {
    const Token& kw = next();
    const Token& name_tok = peek();
    std::string name = ident();
    expect_symbol("[");
    const Token& size_tok = peek();
    int size = integer();
    expect_symbol("]");
    expect_symbol(";");
    if (size <= 0) fail("register size must be positive", size_tok);
    if (name == qreg_name_ || name == creg_name_) fail("register redeclaration: '" + name + "'", name_tok);
    if (kw.text == "qreg") {
      if (!qreg_name_.empty()) fail("only one quantum register is supported", name_tok);
      qreg_name_ = name;
      qreg_size_ = size;
    } else {
      if (!creg_name_.empty()) fail("only one classical register is supported", name_tok);
      creg_name_ = name;
      creg_size_ = size;
    }
  }

  void define_gate() {
    const Token& kw = next();
    std::string name = ident();
    GateDef def;
    if (is_symbol("(")) {
      next();
      if (!is_symbol(")")) {
        def.params.push_back(ident());
        while (is_symbol(",")) {
          next();
          def.params.push_back(ident());
        }
      }
      expect_symbol(")");
    }
    def.args.push_back(ident());
    while (is_symbol(",")) {
      next();
      def.args.push_back(ident());
    }
    expect_symbol("{");
    int nesting = 1;
    while (true) {
      const Token& t = peek();
      if (t.type == Tok::End) fail("unterminated gate body", kw);
      if (t.type == Tok::Symbol && t.text == "{") ++nesting;
      if (t.type == Tok::Symbol && t.text == "}" && --nesting == 0) break;
      def.body.push_back(next());
    }
    const Token& close = next();
    def.body.push_back({Tok::End, "", close.line, close.col});
    // Library definitions of built-in gates (e.g. an inlined qelib1) are ignored.
    if (builtin(name)) return;
    defs_[name] = std::move(def);
  }

  static bool builtin(const std::string& name) {
    if (name == "u1" || name == "u2" || name == "u3" || name == "U" || name == "u" || name == "CX") return true;
    return gate_kind_from_name(name).has_value() && name != "measure" && name != "barrier";
  }

  Operand operand() {
    Operand op;
    op.line = peek().line;
    op.col = peek().col;
    op.reg = ident();
    if (is_symbol("[")) {
      next();
      op.index = integer();
      expect_symbol("]");
    }
    return op;
  }

  std::vector<Operand> operand_list() {
    std::vector<Operand> ops{operand()};
    while (is_symbol(",")) {
      next();
      ops.push_back(operand());
    }
    return ops;
  }

  std::vector<Qubit> expand_qubits(const Operand& op) const {
    if (op.reg != qreg_name_) throw QasmError("unknown quantum register '" + op.reg + "'", op.line, op.col);
    if (op.index) {
      if (*op.index < 0 || *op.index >= qreg_size_) throw QasmError("index out of range", op.line, op.col);
      return {*op.index};
    }
    std::vector<Qubit> all(static_cast<std::size_t>(qreg_size_));
    for (int i = 0; i < qreg_size_; ++i) all[i] = i;
    return all;
  }

  void emit_measure(const Operand& q, const Operand& c) {
    std::vector<Qubit> qs = expand_qubits(q);
    if (c.reg != creg_name_) throw QasmError("unknown classical register '" + c.reg + "'", c.line, c.col);
    std::vector<Clbit> cs;
    if (c.index) {
      if (*c.index < 0 || *c.index >= creg_size_) throw QasmError("index out of range", c.line, c.col);
      cs.push_back(*c.index);
    } else {
      for (int i = 0; i < creg_size_; ++i) cs.push_back(i);
    }
    if (qs.size() != cs.size()) throw QasmError("register size mismatch in measure", q.line, q.col);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      gates_.push_back(make_measure(qs[i], cs[i]));
    }
  }

  void push_gate(Gate g, const Token& where) {
    try {
      validate_gate(g);
    } catch (const std::invalid_argument& e) {
      fail(e.what(), where);
    }
    gates_.push_back(std::move(g));
  }

  // --- expressions -------------------------------------------------------

  double expr(const Env& env) {
    double v = term(env);
    while (is_symbol("+") || is_symbol("-")) {
      const bool plus = next().text == "+";
      const double rhs = term(env);
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term(const Env& env) {
    double v = unary(env);
    while (is_symbol("*") || is_symbol("/")) {
      const bool mul = next().text == "*";
      const double rhs = unary(env);
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double unary(const Env& env) {
    if (is_symbol("-")) {
      next();
      return -unary(env);
    }
    if (is_symbol("+")) {
      next();
      return unary(env);
    }
    return power(env);
  }

  double power(const Env& env) {
    const double base = primary(env);
    if (is_symbol("^")) {
      next();
      return std::pow(base, unary(env));
    }
    return base;
  }

  double primary(const Env& env) {
    const Token& t = peek();
    if (t.type == Tok::Int || t.type == Tok::Real) {
      next();
      return std::strtod(t.text.c_str(), nullptr);
    }
    if (t.type == Tok::Symbol && t.text == "(") {
      next();
      const double v = expr(env);
      expect_symbol(")");
      return v;
    }
    if (t.type == Tok::Ident) {
      next();
      if (t.text == "pi") return std::numbers::pi;
      if (env.params) {
        auto it = env.params->find(t.text);
        if (it != env.params->end()) return it->second;
      }
      static const std::map<std::string, double (*)(double)> kFuncs{
          {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
          {"tan", [](double x) { return std::tan(x); }},   {"exp", [](double x) { return std::exp(x); }},
          {"ln", [](double x) { return std::log(x); }},    {"sqrt", [](double x) { return std::sqrt(x); }},
      };
      auto f = kFuncs.find(t.text);
      if (f != kFuncs.end()) {
        expect_symbol("(");
        const double v = expr(env);
        expect_symbol(")");
        return f->second(v);
      }
      fail("unknown identifier '" + t.text + "' in expression", t);
    }
    fail("expected expression", t);
  }

  // --- gate application --------------------------------------------------

  void gate_call(const Env& env) {
    const Token& name_tok = peek();
    const std::string name = ident();
    std::vector<double> params;
    if (is_symbol("(")) {
      next();
      if (!is_symbol(")")) {
        params.push_back(expr(env));
        while (is_symbol(",")) {
          next();
          params.push_back(expr(env));
        }
      }
      expect_symbol(")");
    }
    std::vector<Operand> ops = operand_list();
    expect_symbol(";");

    // Resolve operands; in gate bodies they are formal argument names.
    std::vector<std::vector<Qubit>> resolved;
    for (const Operand& op : ops) {
      if (env.args) {
        auto it = env.args->find(op.reg);
        if (it == env.args->end() || op.index) {
          throw QasmError("unknown gate argument '" + op.reg + "'", op.line, op.col);
        }
        resolved.push_back({it->second});
      } else {
        resolved.push_back(expand_qubits(op));
      }
    }
    // Register broadcast: whole-register operands must agree in size.
    std::size_t width = 1;
    for (const auto& r : resolved) {
      if (r.size() > 1) {
        if (width > 1 && r.size() != width) fail("register size mismatch in broadcast", name_tok);
        width = r.size();
      }
    }
    for (std::size_t k = 0; k < width; ++k) {
      std::vector<Qubit> qs;
      for (const auto& r : resolved) qs.push_back(r.size() == 1 ? r[0] : r[k]);
      apply(name, params, qs, name_tok);
    }
  }

  void apply(const std::string& name, const std::vector<double>& params, const std::vector<Qubit>& qs,
             const Token& where) {
    using std::numbers::pi;
    auto need = [&](std::size_t np, std::size_t nq) {
      if (params.size() != np) fail("gate '" + name + "' expects " + std::to_string(np) + " parameter(s)", where);
      if (qs.size() != nq) fail("gate '" + name + "' expects " + std::to_string(nq) + " qubit operand(s)", where);
    };
    auto rz = [&](double a) { push_gate(make_gate(GateKind::RZ, {qs[0]}, {a}), where); };
    auto sx = [&]() { push_gate(make_gate(GateKind::SX, {qs[0]}), where); };
    if (name == "u1") {
      need(1, 1);
      rz(params[0]);
      return;
    }
    if (name == "u2") {
      need(2, 1);
      rz(params[1] - pi / 2);
      sx();
      rz(params[0] + pi / 2);
      return;
    }
    if (name == "u3" || name == "U" || name == "u") {
      need(3, 1);
      rz(params[2]);
      sx();
      rz(params[0] + pi);
      sx();
      rz(params[1] + pi);
      return;
    }
    if (name == "CX") {
      push_gate(make_gate(GateKind::CX, qs, params), where);
      return;
    }
    if (auto def = defs_.find(name); def != defs_.end()) {
      expand(def->second, name, params, qs, where);
      return;
    }
    auto kind = gate_kind_from_name(name);
    if (!kind || *kind == GateKind::Measure || *kind == GateKind::Barrier) {
      fail("unknown gate '" + name + "'", where);
    }
    push_gate(make_gate(*kind, qs, params), where);
  }

  void expand(const GateDef& def, const std::string& name, const std::vector<double>& params,
              const std::vector<Qubit>& qs, const Token& where) {
    if (params.size() != def.params.size()) {
      fail("gate '" + name + "' expects " + std::to_string(def.params.size()) + " parameter(s)", where);
    }
    if (qs.size() != def.args.size()) {
      fail("gate '" + name + "' expects " + std::to_string(def.args.size()) + " qubit operand(s)", where);
    }
    if (depth_ > 64) fail("gate definitions nest too deeply", where);
    std::map<std::string, double> pmap;
    for (std::size_t i = 0; i < params.size(); ++i) pmap[def.params[i]] = params[i];
    std::map<std::string, Qubit> amap;
    for (std::size_t i = 0; i < qs.size(); ++i) amap[def.args[i]] = qs[i];

    Parser sub(def.body);
    sub.defs_ = defs_;
    sub.qreg_name_ = qreg_name_;
    sub.qreg_size_ = qreg_size_;
    sub.depth_ = depth_ + 1;
    const Env env{&pmap, &amap};
    while (sub.peek().type != Tok::End) {
      if (sub.peek().type == Tok::Ident && sub.peek().text == "barrier") {
        const Token& head = sub.next();
        std::vector<Qubit> bq;
        for (const Operand& op : sub.operand_list()) {
          auto it = amap.find(op.reg);
          if (it == amap.end()) throw QasmError("unknown gate argument '" + op.reg + "'", op.line, op.col);
          bq.push_back(it->second);
        }
        sub.expect_symbol(";");
        sub.push_gate(make_gate(GateKind::Barrier, std::move(bq)), head);
      } else {
        sub.gate_call(env);
      }
    }
    for (Gate& g : sub.gates_) gates_.push_back(std::move(g));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string qreg_name_;
  std::string creg_name_;
  int qreg_size_ = 0;
  int creg_size_ = 0;
  int depth_ = 0;
  std::map<std::string, GateDef> defs_;
  std::vector<Gate> gates_;
};

}  // namespace qasm_detail

/// Parses OpenQASM 2.0 source. Throws QasmError carrying line and column.
inline Circuit parse_qasm(std::string_view text) {
  qasm_detail::Parser parser(qasm_detail::tokenize(text));
  return parser.parse_program();
}

inline Circuit read_qasm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

inline std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// One gate per line; angles with 17 significant digits so that the text
/// parses back to the identical doubles.
inline std::string emit_qasm(const Circuit& circ) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (circ.num_qubits() > 0) out += "qreg q[" + std::to_string(circ.num_qubits()) + "];\n";
  if (circ.num_clbits() > 0) out += "creg c[" + std::to_string(circ.num_clbits()) + "];\n";
  for (const Gate& g : circ) {
    if (g.is_measure()) {
      out += "measure q[" + std::to_string(g.qubits[0]) + "] -> c[" + std::to_string(g.clbits[0]) + "];\n";
      continue;
    }
    out += g.name();
    if (!g.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) out += ',';
        out += format_angle(g.params[i]);
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out += ',';
      out += "q[" + std::to_string(g.qubits[i]) + "]";
    }
    out += ";\n";
  }
  return out;
}

}  // namespace qdse
