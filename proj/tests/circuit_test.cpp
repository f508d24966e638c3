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

#include "cvnet/circuit.hpp"

#include <cmath>
#include <string>

#include "cvnet/chain.hpp"
#include "cvnet/separability.hpp"
#include "fixture_corpus.hpp"
#include "gtest/gtest.h"

using namespace cvnet;
using cvnet::test_support::fixture_dir;
using cvnet::test_support::load_fixtures;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(circuit, parses_statements) {
  const CircuitAst ast = parse_circuit(
      "squeeze r=0.5 out=a1,a2\n"
      "squeeze r=0.5 out=a3,a4\n"
      "pa gain=8 in=a2,a3 out=a2p\n"
      "bs t=0.125 in=a2p,a4 out=a4p\n");
  ASSERT_EQ(ast.statements.size(), 4u);
  const Statement& pa = ast.statements[2];
  EXPECT_EQ(pa.kind, ElementKind::Amplify);
  EXPECT_EQ(pa.params.at("gain"), 8.0);
  EXPECT_EQ(pa.inputs, (std::vector<std::string>{"a2", "a3"}));
  EXPECT_EQ(pa.outputs, (std::vector<std::string>{"a2p"}));
  EXPECT_EQ(pa.line, 3u);
}

TEST(circuit, empty_text_is_an_empty_circuit) {
  EXPECT_TRUE(parse_circuit("").statements.empty());
  EXPECT_TRUE(parse_circuit("# nothing\n\n   \n").statements.empty());
}

TEST(circuit, error_positions) {
  const ParseError e1 = parse_failure("squeeze r=0.5 out=a,b\n\nbs t=2 in=a,b out=c\n");
  EXPECT_EQ(e1.line(), 3u);
  EXPECT_EQ(e1.column(), 6u);
  EXPECT_EQ(e1.message(), "t must lie in [0, 1]");
  EXPECT_EQ(std::string(e1.what()), "line 3, column 6: t must lie in [0, 1]");

  const ParseError e2 = parse_failure("squeeze r=0.5 out=a,b\npa gain=2 in=a,q out=c\n");
  EXPECT_EQ(e2.line(), 2u);
  EXPECT_EQ(e2.column(), 16u);
  EXPECT_NE(e2.message().find("undefined mode 'q'"), std::string::npos);

  const ParseError e3 = parse_failure("  laser p=1\n");
  EXPECT_EQ(e3.line(), 1u);
  EXPECT_EQ(e3.column(), 3u);
}

TEST(circuit, domain_messages) {
  EXPECT_EQ(parse_failure("squeeze r=-1 out=a,b").message(), "r must be ≥ 0");
  EXPECT_EQ(parse_failure("squeeze r=0 out=a,b\npa gain=0.9 in=a,b out=c").message(),
            "gain must be ≥ 1");
  EXPECT_EQ(parse_failure("squeeze r=0 out=a,b\npolrot theta=nan in=a,b out=c,d").message(),
            "theta must be finite");
}

TEST(circuit, consumed_modes_cannot_be_reused) {
  const ParseError e = parse_failure(
      "squeeze r=0 out=a,b\nbs t=0.5 in=a,b out=c\nbs t=0.5 in=a,c out=d\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(e.message().find("already consumed"), std::string::npos);
  EXPECT_EQ(parse_failure("squeeze r=0 out=a,b\nbs t=0.5 in=a,a out=c\n").line(), 2u);
}

TEST(circuit, valid_corpus_parses_and_round_trips) {
  const auto fixtures = load_fixtures(fixture_dir("valid"));
  ASSERT_GE(fixtures.size(), 10u);
  for (const auto& f : fixtures) {
    SCOPED_TRACE(f.name);
    CircuitAst ast;
    ASSERT_NO_THROW(ast = parse_circuit(f.text));
    EXPECT_FALSE(ast.statements.empty());
    const std::string canonical = serialize_circuit(ast);
    const CircuitAst again = parse_circuit(canonical);
    EXPECT_EQ(again, ast);
    EXPECT_EQ(serialize_circuit(again), canonical);
  }
}

TEST(circuit, invalid_corpus_reports_the_expected_line) {
  const auto fixtures = load_fixtures(fixture_dir("invalid"));
  ASSERT_GE(fixtures.size(), 10u);
  for (const auto& f : fixtures) {
    SCOPED_TRACE(f.name);
    ASSERT_GT(f.expected_line, 0u);
    EXPECT_EQ(parse_failure(f.text).line(), f.expected_line);
  }
}

TEST(circuit, serialization_uses_shortest_round_trip_reals) {
  const CircuitAst ast = parse_circuit("squeeze   out=a,b  r=0.1000\n");
  EXPECT_EQ(serialize_circuit(ast), "squeeze r=0.1 out=a,b\n");
  const CircuitAst tiny = parse_circuit("squeeze r=1e-300 out=a,b\n");
  EXPECT_EQ(parse_circuit(serialize_circuit(tiny)), tiny);
}

TEST(circuit, evaluation_matches_the_built_in_chain) {
  const CircuitAst ast = parse_circuit(
      "squeeze r=0.5 out=a1,a2\n"
      "squeeze r=0.5 out=a3,a4\n"
      "pa gain=8 in=a2,a3 out=a2p\n"
      "bs t=0.125 in=a2p,a4 out=a4p\n");
  SeedRegistry reg;
  const CircuitState state = evaluate_circuit(ast, reg);
  EXPECT_EQ(state.live(), (std::vector<std::string>{"a1", "a4p"}));

  SeedRegistry ref_reg;
  const ChainModes chain =
      build_aoes_chain(ref_reg, SqueezeParam(0.5), SqueezeParam(0.5), GainParam(8.0));
  const DuanReport from_dsl = duan_margin(correlation_block(state.mode("a1"), state.mode("a2p")));
  const DuanReport from_chain = duan_margin(correlation_block(chain.a1, chain.a2_amp));
  EXPECT_NEAR(from_dsl.margin, from_chain.margin, 1e-12);
  EXPECT_NEAR(from_dsl.margin, 0.14405120146489558, 1e-12);

  const auto& out = state.mode("a4p");
  EXPECT_NEAR(second_moment(out.x, out.x), second_moment(chain.a4_out.x, chain.a4_out.x), 1e-12);
  EXPECT_THROW(state.mode("nope"), UsageError);
}

TEST(circuit, evaluation_preserves_commutators) {
  for (const auto& f : load_fixtures(fixture_dir("valid"))) {
    SCOPED_TRACE(f.name);
    SeedRegistry reg;
    const CircuitState state = evaluate_circuit(parse_circuit(f.text), reg);
    for (const auto& name : state.order) {
      const OpticalMode& m = state.mode(name);
      EXPECT_TRUE(m.x.all_finite() && m.p.all_finite());
      EXPECT_NEAR(commutator_norm(m), 1.0, 1e-9);
    }
  }
}
