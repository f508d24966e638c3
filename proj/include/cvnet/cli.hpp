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

// Command-line driver. `run_command` takes the argument list without the
// program name and writes to the given streams; exit codes are 0 on success,
// 1 on domain or input errors and 2 on usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvnet/bell.hpp"
#include "cvnet/chain.hpp"
#include "cvnet/circuit.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/hybrid.hpp"
#include "cvnet/oracle.hpp"
#include "cvnet/separability.hpp"

namespace cvnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// %.10g, the precision of every number the CLI prints.
inline std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// "start:stop:count"
inline LinearRange parse_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw UsageError("range must look like start:stop:count, got '" + text + "'");
  }
  const auto start = detail::parse_number(std::string_view(text).substr(0, first));
  const auto stop =
      detail::parse_number(std::string_view(text).substr(first + 1, second - first - 1));
  std::size_t count = 0;
  const std::string_view tail = std::string_view(text).substr(second + 1);
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), count);
  if (!start || !stop || ec != std::errc() || ptr != tail.data() + tail.size()) {
    throw UsageError("range must look like start:stop:count, got '" + text + "'");
  }
  return {*start, *stop, count};
}

struct SweepSpec {
  SweepGrid grid;
  std::string output_path;
};

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "r1,r2,G3,bell_analytic,bell_engine,violated\n";
  for (const auto& r : rows) {
    out += fmt12(r.r1) + "," + fmt12(r.r2) + "," + fmt12(r.g3) + "," + fmt12(r.bell_analytic) +
           "," + fmt12(r.bell_engine) + "," + (r.violated ? "1" : "0") + "\n";
  }
  return out;
}

inline void emit_sweep_csv(const SweepSpec& spec, unsigned threads = 1) {
  const std::string text = sweep_csv(sweep_bell(spec.grid, threads));
  std::ofstream file(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open '" + spec.output_path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw DomainError("failed writing '" + spec.output_path + "'");
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void report_moments(const CircuitState& st, const std::vector<std::string>& names,
                           std::ostream& out) {
  for (const auto& n : names) {
    const OpticalMode& m = st.mode(n);
    out << "mode " << n << ": <x^2>=" << fmt10(second_moment(m.x, m.x))
        << " <p^2>=" << fmt10(second_moment(m.p, m.p))
        << " commutator=" << fmt10(commutator_norm(m)) << "\n";
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const OpticalMode& a = st.mode(names[i]);
      const OpticalMode& b = st.mode(names[j]);
      out << "pair " << names[i] << " " << names[j]
          << ": <xx>=" << fmt10(second_moment(a.x, b.x))
          << " <pp>=" << fmt10(second_moment(a.p, b.p)) << "\n";
    }
  }
}

inline void report_covariance(const CircuitState& st, const std::vector<std::string>& names,
                              std::ostream& out) {
  std::vector<const QuadratureForm*> forms;
  std::vector<std::string> labels;
  for (const auto& n : names) {
    forms.push_back(&st.mode(n).x);
    forms.push_back(&st.mode(n).p);
    labels.push_back("x_" + n);
    labels.push_back("p_" + n);
  }
  out << "quadrature";
  for (const auto& l : labels) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < forms.size(); ++j) {
      out << " " << fmt10(second_moment(*forms[i], *forms[j]));
    }
    out << "\n";
  }
}

inline void report_duan(const CircuitState& st, const std::vector<std::string>& names,
                        std::ostream& out) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      out << "duan " << names[i] << " " << names[j] << ": ";
      const CovarianceBlock block = correlation_block(st.mode(names[i]), st.mode(names[j]));
      try {
        const DuanReport r = duan_margin(block);
        out << "a^2=" << fmt10(r.a_sq) << " u_var=" << fmt10(r.u_var)
            << " v_var=" << fmt10(r.v_var) << " bound=" << fmt10(r.bound)
            << " margin=" << fmt10(r.margin) << " "
            << (r.separable ? "separable" : "entangled") << "\n";
      } catch (const CriterionUndefinedError& e) {
        out << e.what() << "\n";
      }
    }
  }
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Continuous-variable chain-network Bell test simulator", "cvnet"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Evaluate a circuit description file");
  std::string circuit_path;
  std::string report = "moments";
  std::vector<std::string> report_modes;
  run->add_option("file", circuit_path, "Circuit file")->required();
  run->add_option("--report", report, "moments | covariance | duan")
      ->check(CLI::IsMember({"moments", "covariance", "duan"}));
  run->add_option("--modes", report_modes, "Modes to report (default: unconsumed)")
      ->delimiter(',');

  // bell
  auto* bell = app.add_subcommand("bell", "Conditional Bell value of the two-chain network");
  BellConfig defaults;
  double r1 = defaults.r1.value(), r2 = defaults.r2.value(), g3 = defaults.g3.value();
  double theta0 = defaults.thetas[0], theta1 = defaults.thetas[1];
  double phi0 = defaults.varthetas[0], phi1 = defaults.varthetas[1];
  std::string method = "analytic";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  const auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--r1", r1, "Squeezing of the end-node sources");
    sub->add_option("--r2", r2, "Squeezing of the swapping sources");
    sub->add_option("--g3", g3, "Amplifier intensity gain");
  };
  add_physics(bell);
  bell->add_option("--method", method, "analytic | engine | mc")
      ->check(CLI::IsMember({"analytic", "engine", "mc"}));
  bell->add_option("--theta0", theta0);
  bell->add_option("--theta1", theta1);
  bell->add_option("--phi0", phi0);
  bell->add_option("--phi1", phi1);
  bell->add_option("--samples", samples, "Monte Carlo samples (mc method)");
  bell->add_option("--seed", seed, "Monte Carlo seed (mc method)");
  bell->add_option("--threads", threads, "Worker threads, 0 = hardware");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Bell value over an (r1, r2) grid as CSV");
  std::string r1_range, r2_range, out_path;
  double sweep_g3 = 8.0;
  sweep->add_option("--r1", r1_range, "start:stop:count")->required();
  sweep->add_option("--r2", r2_range, "start:stop:count")->required();
  sweep->add_option("--g3", sweep_g3, "Amplifier intensity gain");
  sweep->add_option("--out", out_path, "Output CSV path")->required();
  sweep->add_option("--threads", threads, "Worker threads, 0 = hardware");

  // bound
  auto* bound = app.add_subcommand("bound", "Hybrid-model maximum of the Bell value");
  std::string scenario = "ab";
  std::size_t b_alphabet = 2;
  std::string bound_method = "lp";
  bound->add_option("--scenario", scenario, "ab | bc (which link is classical)")
      ->check(CLI::IsMember({"ab", "bc"}));
  bound->add_option("--b-alphabet", b_alphabet, "Size of Bob's outcome alphabet");
  bound->add_option("--method", bound_method, "lp | vertices")
      ->check(CLI::IsMember({"lp", "vertices"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Monte Carlo check of the Wick-reduced rates");
  add_physics(oracle);
  oracle->add_option("--samples", samples, "Number of samples");
  oracle->add_option("--seed", seed, "RNG seed");
  oracle->add_option("--threads", threads, "Worker threads, 0 = hardware");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("cvnet");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      const CircuitAst ast = parse_circuit(detail::read_file(circuit_path));
      SeedRegistry registry;
      const CircuitState state = evaluate_circuit(ast, registry);
      const std::vector<std::string> names = report_modes.empty() ? state.live() : report_modes;
      for (const auto& n : names) (void)state.mode(n);
      if (report == "moments") detail::report_moments(state, names, out);
      if (report == "covariance") detail::report_covariance(state, names, out);
      if (report == "duan") detail::report_duan(state, names, out);
    } else if (bell->parsed()) {
      BellConfig config{SqueezeParam(r1), SqueezeParam(r2), GainParam(g3),
                        {theta0, theta1}, {phi0, phi1}};
      require_detection(config);
      if (method == "mc") {
        SeedRegistry registry;
        const BellNetwork net = build_bell_network(registry, config);
        const WickReport rep = validate_wick(net, {samples, seed, threads});
        out << fmt10(rep.bell.mean) << " +- " << fmt10(rep.bell.std_error) << "\n";
      } else {
        out << fmt10(bell_value(config, method == "engine" ? BellMethod::Engine
                                                           : BellMethod::Analytic))
            << "\n";
      }
    } else if (sweep->parsed()) {
      SweepSpec spec{{parse_range(r1_range), parse_range(r2_range), sweep_g3}, out_path};
      emit_sweep_csv(spec, threads);
    } else if (bound->parsed()) {
      const HybridScenario sc{scenario == "ab" ? ClassicalLink::AliceBob
                                               : ClassicalLink::BobCharlie,
                              b_alphabet};
      const double v = bound_method == "lp" ? max_bell_hybrid(sc).value
                                            : max_bell_hybrid_vertices(sc);
      out << fmt10(v) << "\n";
    } else if (oracle->parsed()) {
      BellConfig config{SqueezeParam(r1), SqueezeParam(r2), GainParam(g3)};
      SeedRegistry registry;
      const BellNetwork net = build_bell_network(registry, config);
      const WickReport rep = validate_wick(net, {samples, seed, threads});
      out << "quantity analytic estimate std_error z\n";
      const char* sign[] = {"+", "-"};
      for (const auto& r : rep.rates) {
        out << "R" << sign[static_cast<int>(r.a)] << sign[static_cast<int>(r.c)] << "(" << r.x
            << "," << r.z << ") " << fmt10(r.analytic) << " " << fmt10(r.estimate.mean) << " "
            << fmt10(r.estimate.std_error) << " " << fmt10(r.estimate.z_score(r.analytic))
            << "\n";
      }
      out << "bell " << fmt10(rep.bell_analytic) << " " << fmt10(rep.bell.mean) << " "
          << fmt10(rep.bell.std_error) << " " << fmt10(rep.bell.z_score(rep.bell_analytic))
          << "\n";
      out << (rep.within(5.0) ? "concordant within 5 standard errors"
                              : "DISCORDANT beyond 5 standard errors")
          << "\n";
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << circuit_path << ": " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return kExitDomain;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace cvnet
