// Copyright 2026 The cvnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Line-oriented circuit description language.
//
//   # two-mode squeezer feeding an amplifier
//   squeeze r=0.5 out=a1,a2
//   squeeze r=0.5 out=a3,a4
//   pa gain=8 in=a2,a3 out=a2p
//   bs t=0.125 in=a2p,a4 out=a4p
//   polrot theta=0.3927 in=h,v out=plus,minus
//
// One statement per line: an element kind, its real parameter, `in=` and
// `out=` identifier lists. Inputs must be defined earlier and not yet fed to
// another element; outputs must be new identifiers.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cvnet/elements.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/quad.hpp"

namespace cvnet {

enum class ElementKind { Squeeze, Amplify, BeamSplit, PolRot };

struct ElementSpec {
  ElementKind kind;
  std::string_view name;
  std::string_view param;
  std::size_t inputs;
  std::size_t outputs;
};

inline constexpr ElementSpec kElementSpecs[] = {
    {ElementKind::Squeeze, "squeeze", "r", 0, 2},
    {ElementKind::Amplify, "pa", "gain", 2, 1},
    {ElementKind::BeamSplit, "bs", "t", 2, 1},
    {ElementKind::PolRot, "polrot", "theta", 2, 2},
};

inline const ElementSpec& element_spec(ElementKind kind) {
  for (const auto& s : kElementSpecs) {
    if (s.kind == kind) return s;
  }
  throw std::logic_error("unhandled element kind");
}

inline std::optional<ElementKind> element_kind(std::string_view name) {
  for (const auto& s : kElementSpecs) {
    if (s.name == name) return s.kind;
  }
  return std::nullopt;
}

/// Empty string when the value is admissible, otherwise the complaint.
inline std::string check_parameter(ElementKind kind, double value) {
  switch (kind) {
    case ElementKind::Squeeze:
      return std::isfinite(value) && value >= 0.0 ? "" : "r must be ≥ 0";
    case ElementKind::Amplify:
      return std::isfinite(value) && value >= 1.0 ? "" : "gain must be ≥ 1";
    case ElementKind::BeamSplit:
      return value >= 0.0 && value <= 1.0 ? "" : "t must lie in [0, 1]";
    case ElementKind::PolRot:
      return std::isfinite(value) ? "" : "theta must be finite";
  }
  return "unknown element";
}

struct Statement {
  ElementKind kind = ElementKind::Squeeze;
  std::map<std::string, double> params;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t line = 0;  // source line, not part of equality

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.params == b.params && a.inputs == b.inputs &&
           a.outputs == b.outputs;
  }
};

struct CircuitAst {
  std::vector<Statement> statements;
  friend bool operator==(const CircuitAst&, const CircuitAst&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(s[0])) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

inline std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Identifier {
  std::string name;
  std::size_t column;
};

inline std::vector<Identifier> split_identifiers(std::size_t line_no, std::string_view list,
                                                 std::size_t column) {
  std::vector<Identifier> ids;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = list.find(',', start);
    const std::string_view item =
        list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!is_identifier(item)) {
      throw ParseError(line_no, column + start,
                       "invalid mode identifier '" + std::string(item) + "'");
    }
    ids.push_back({std::string(item), column + start});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ids;
}

}  // namespace detail

inline CircuitAst parse_circuit(std::string_view text) {
  CircuitAst ast;
  std::set<std::string> defined;
  std::set<std::string> consumed;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;

    const auto kind = element_kind(tokens[0].text);
    if (!kind) {
      throw ParseError(line_no, tokens[0].column,
                       "unknown element kind '" + std::string(tokens[0].text) + "'");
    }
    const ElementSpec& spec = element_spec(*kind);
    Statement st;
    st.kind = *kind;
    st.line = line_no;
    std::optional<std::vector<detail::Identifier>> ins, outs;

    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto& tok = tokens[t];
      const std::size_t eq = tok.text.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParseError(line_no, tok.column,
                         "expected key=value, got '" + std::string(tok.text) + "'");
      }
      const std::string key(tok.text.substr(0, eq));
      const std::string_view value = tok.text.substr(eq + 1);
      const std::size_t value_col = tok.column + eq + 1;
      if (key == "in" || key == "out") {
        auto& slot = key == "in" ? ins : outs;
        if (slot) throw ParseError(line_no, tok.column, "duplicate key '" + key + "'");
        slot = detail::split_identifiers(line_no, value, value_col);
        continue;
      }
      if (key != spec.param) {
        throw ParseError(line_no, tok.column,
                         "unknown parameter '" + key + "' for " + std::string(spec.name));
      }
      if (st.params.count(key)) {
        throw ParseError(line_no, tok.column, "duplicate key '" + key + "'");
      }
      const auto number = detail::parse_number(value);
      if (!number) {
        throw ParseError(line_no, value_col, "invalid number '" + std::string(value) + "'");
      }
      if (const std::string why = check_parameter(*kind, *number); !why.empty()) {
        throw ParseError(line_no, value_col, why);
      }
      st.params.emplace(key, *number);
    }

    if (!st.params.count(std::string(spec.param))) {
      throw ParseError(line_no, tokens[0].column,
                       "missing parameter '" + std::string(spec.param) + "'");
    }
    const std::size_t in_count = ins ? ins->size() : 0;
    if (in_count != spec.inputs) {
      throw ParseError(line_no, ins ? ins->front().column : tokens[0].column,
                       std::string(spec.name) + " takes " + std::to_string(spec.inputs) +
                           " input(s), got " + std::to_string(in_count));
    }
    if (!outs || outs->size() != spec.outputs) {
      throw ParseError(line_no, outs ? outs->front().column : tokens[0].column,
                       std::string(spec.name) + " produces " + std::to_string(spec.outputs) +
                           " output(s), got " + std::to_string(outs ? outs->size() : 0));
    }

    std::set<std::string> seen_inputs;
    if (ins) {
      for (const auto& id : *ins) {
        if (!defined.count(id.name)) {
          throw ParseError(line_no, id.column, "undefined mode '" + id.name + "'");
        }
        if (consumed.count(id.name) || !seen_inputs.insert(id.name).second) {
          throw ParseError(line_no, id.column, "mode '" + id.name + "' already consumed");
        }
        st.inputs.push_back(id.name);
      }
    }
    for (const auto& id : *outs) {
      if (defined.count(id.name) ||
          std::find(st.outputs.begin(), st.outputs.end(), id.name) != st.outputs.end()) {
        throw ParseError(line_no, id.column, "duplicate output identifier '" + id.name + "'");
      }
      st.outputs.push_back(id.name);
    }
    for (const auto& name : st.inputs) consumed.insert(name);
    for (const auto& name : st.outputs) defined.insert(name);
    ast.statements.push_back(std::move(st));
  }
  return ast;
}

inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace detail {
inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i];
  }
  return s;
}
}  // namespace detail

/// Canonical text: one statement per line, shortest round-trip reals.
inline std::string serialize_circuit(const CircuitAst& ast) {
  std::string out;
  for (const auto& st : ast.statements) {
    out += element_spec(st.kind).name;
    for (const auto& [key, value] : st.params) out += " " + key + "=" + format_real(value);
    if (!st.inputs.empty()) out += " in=" + detail::join(st.inputs);
    out += " out=" + detail::join(st.outputs) + "\n";
  }
  return out;
}

struct CircuitState {
  std::vector<std::string> order;  // definition order
  std::map<std::string, OpticalMode> modes;
  std::set<std::string> consumed;

  const OpticalMode& mode(const std::string& name) const {
    const auto it = modes.find(name);
    if (it == modes.end()) throw UsageError("unknown mode '" + name + "'");
    return it->second;
  }

  /// Modes not fed into any later element, in definition order.
  std::vector<std::string> live() const {
    std::vector<std::string> out;
    for (const auto& n : order) {
      if (!consumed.count(n)) out.push_back(n);
    }
    return out;
  }
};

inline CircuitState evaluate_circuit(const CircuitAst& ast, SeedRegistry& registry) {
  CircuitState state;
  const auto define = [&](const std::string& name, OpticalMode m) {
    state.order.push_back(name);
    state.modes.emplace(name, std::move(m));
  };
  for (const auto& st : ast.statements) {
    const double value = st.params.at(std::string(element_spec(st.kind).param));
    std::vector<const OpticalMode*> in;
    for (const auto& n : st.inputs) in.push_back(&state.mode(n));
    switch (st.kind) {
      case ElementKind::Squeeze: {
        auto [a, b] = two_mode_squeeze(registry, SqueezeParam(value));
        define(st.outputs[0], std::move(a));
        define(st.outputs[1], std::move(b));
        break;
      }
      case ElementKind::Amplify:
        define(st.outputs[0], parametric_amplify(*in[0], *in[1], GainParam(value)));
        break;
      case ElementKind::BeamSplit:
        define(st.outputs[0], beam_split(*in[0], *in[1], value));
        break;
      case ElementKind::PolRot: {
        auto [plus, minus] = polarization_combine(*in[0], *in[1], value);
        define(st.outputs[0], std::move(plus));
        define(st.outputs[1], std::move(minus));
        break;
      }
    }
    for (const auto& n : st.inputs) state.consumed.insert(n);
  }
  return state;
}

}  // namespace cvnet
