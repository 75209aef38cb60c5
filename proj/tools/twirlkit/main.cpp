// Copyright 2026 The twirlkit developers
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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/convergence.hpp"
#include "twirlkit/qubit_classifier.hpp"
#include "twirlkit/qudit_builder.hpp"
#include "twirlkit/serialization.hpp"
#include "twirlkit/tolerances.hpp"

namespace {

using nlohmann::json;
using namespace twirlkit;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDisagreement = 2;

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string input;
  int d = 0;
  int n_max = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // resolved per command when empty
  int restarts = 16;
  bool verbose = false;
  std::string figure;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + opt.out);
  out << text;
}

/// Resolves --format against the per-command default and allowed set.
std::string resolve_format(const Options& opt, const std::string& fallback,
                           bool csv_allowed) {
  std::string format = opt.format.empty() ? fallback : opt.format;
  if (format == "csv" && !csv_allowed)
    throw std::invalid_argument("csv output is not available for this command");
  return format;
}

/// Ensemble plus the construction recipe when the input was a recipe.
struct LoadedInput {
  UnitaryEnsemble ensemble;
  std::optional<ConstructionSpec> spec;
};

LoadedInput load_ensemble_or_construction(const Options& opt) {
  if (!opt.input.empty()) {
    std::string text = read_file(opt.input);
    if (looks_like_construction(text)) {
      ConstructionSpec spec = construction_from_json(text);
      return {build_ensemble(spec), spec};
    }
    return {ensemble_from_json(text), std::nullopt};
  }
  if (opt.d != 0) {
    ConstructionSpec spec;
    spec.d = opt.d;
    return {build_ensemble(spec), spec};
  }
  throw std::invalid_argument("provide --input or --d");
}

std::optional<bool> conjectural_flag(const LoadedInput& loaded) {
  if (!loaded.spec) return std::nullopt;
  return is_conjectural(*loaded.spec);
}

void warn_if_conjectural(const LoadedInput& loaded) {
  if (conjectural_flag(loaded).value_or(false))
    std::cerr << "note: the two-operator construction in even dimension is "
                 "conjectural (numerically supported only)\n";
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const Options& opt) {
  if (opt.input.empty())
    throw std::invalid_argument("classify requires --input");
  std::string text = read_file(opt.input);
  if (looks_like_construction(text))
    throw std::invalid_argument(
        "classify expects an explicit ensemble, not a construction recipe");
  UnitaryEnsemble parsed = ensemble_from_json(text);

  std::vector<ComplexMatrix> us;
  std::vector<double> probs;
  for (const auto& item : parsed.items()) probs.push_back(item.p);

  UnitaryEnsemble collective = parsed;
  if (parsed.dim() == 2) {
    for (const auto& item : parsed.items()) us.push_back(item.u);
    collective = lift_collective(us, probs);
  } else if (parsed.dim() == 4) {
    for (std::size_t k = 0; k < parsed.size(); ++k) {
      auto factor = collective_factor(parsed.items()[k].u);
      if (!factor)
        throw std::invalid_argument(
            "item " + std::to_string(k) +
            " is not a collective u (x) u operator");
      us.push_back(*factor);
    }
  } else {
    throw std::invalid_argument(
        "classify expects 2x2 members or 4x4 collective members");
  }

  TwirlVerdict verdict = classify_multi(us);
  AttractorReport oracle = check_convergence_to_twirl(collective);
  bool agree = verdict.converges == oracle.converges_to_twirl;

  json out;
  out["classifier"] = json::parse(verdict_to_json(verdict));
  out["oracle"] = json::parse(report_to_json(oracle));
  out["agree"] = agree;
  write_output(opt, out.dump(2) + "\n");

  if (!agree) {
    std::cerr << "error: analytic classifier and spectral oracle disagree\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// attractors

int run_attractors(const Options& opt) {
  resolve_format(opt, "json", /*csv_allowed=*/false);
  LoadedInput loaded = load_ensemble_or_construction(opt);
  AttractorReport report =
      attractor_space_eig(build_superoperator(loaded.ensemble));
  write_output(opt, report_to_json(report, conjectural_flag(loaded)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const Options& opt) {
  std::string format = resolve_format(opt, "csv", /*csv_allowed=*/true);
  LoadedInput loaded = load_ensemble_or_construction(opt);
  ConvergenceTrace trace = trace_convergence(loaded.ensemble, opt.n_max);
  warn_if_conjectural(loaded);
  if (format == "csv") {
    write_output(opt, trace_to_csv(trace));
  } else {
    json out = json::parse(trace_to_json(trace));
    if (auto flag = conjectural_flag(loaded)) out["conjectural"] = *flag;
    write_output(opt, out.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize

/// Rebuilds the recipe with the optimizer's best probabilities and block
/// parameters (layout: m probabilities, then phi, t, a, b).
ConstructionSpec apply_construction_params(ConstructionSpec spec,
                                           const std::vector<double>& params,
                                           std::size_t m) {
  spec.probs.assign(params.begin(), params.begin() + m);
  spec.a.phi = params[m];
  double t = params[m + 1];
  spec.a.alpha = std::polar(std::cos(t), params[m + 2]);
  spec.a.beta = std::polar(std::sin(t), params[m + 3]);
  return spec;
}

int run_optimize(const Options& opt) {
  resolve_format(opt, "json", /*csv_allowed=*/false);
  LoadedInput loaded = load_ensemble_or_construction(opt);
  std::size_t m = loaded.ensemble.size();

  json out;
  bool construction_search = loaded.spec && loaded.spec->words.empty() &&
                             loaded.spec->variant != ConstructionVariant::Custom;
  if (construction_search) {
    OptimizationResult result =
        optimize_construction(*loaded.spec, opt.restarts, opt.seed);
    ConstructionSpec best =
        apply_construction_params(*loaded.spec, result.best_params, m);
    out["optimization"] = json::parse(optimization_to_json(result, opt.verbose));
    out["construction"] = json::parse(construction_to_json(best));
    out["ensemble"] = json::parse(ensemble_to_json(build_ensemble(best)));
  } else {
    OptimizationResult result =
        optimize_probabilities(loaded.ensemble, opt.restarts, opt.seed);
    UnitaryEnsemble best =
        loaded.ensemble.with_probabilities(result.best_params);
    out["optimization"] = json::parse(optimization_to_json(result, opt.verbose));
    out["ensemble"] = json::parse(ensemble_to_json(best));
  }
  if (auto flag = conjectural_flag(loaded)) out["conjectural"] = *flag;
  write_output(opt, out.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

using NamedTrace = std::pair<std::string, ConvergenceTrace>;

/// Applies the best probabilities found by a seeded search, then traces.
ConvergenceTrace optimized_trace(const UnitaryEnsemble& e, const Options& opt,
                                 std::uint64_t seed) {
  OptimizationResult result = optimize_probabilities(e, opt.restarts, seed);
  return trace_convergence(e.with_probabilities(result.best_params), opt.n_max);
}

std::vector<NamedTrace> reproduce_fig1(const Options& opt) {
  ComplexMatrix m1 = su2_from_phase(kPi / 4);
  ComplexMatrix m2 = su2_from_angles({kPi / 4, 0.0, kPi / 4});
  ComplexMatrix m3 = su2_from_angles({0.0, kPi / 4, kPi / 4});

  UnitaryEnsemble two_op = lift_collective({m1, m2}, {0.75, 0.25});
  UnitaryEnsemble three_op =
      lift_collective({m1, m2, m3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});

  // Non-convergent reference: nonzero-trace diagonal member plus members
  // whose gamma sits on the critical grid {0, pi/2} throughout.
  UnitaryEnsemble floor_set = lift_collective(
      {su2_from_phase(kPi / 4), su2_from_phase(kPi / 3),
       su2_from_angles({0.0, 0.0, kPi / 2}),
       su2_from_angles({0.0, kPi / 5, kPi / 2})},
      {0.25, 0.25, 0.25, 0.25});

  std::vector<NamedTrace> series;
  series.emplace_back("two_op_default", trace_convergence(two_op, opt.n_max));
  series.emplace_back("two_op_optimized",
                      optimized_trace(two_op, opt, opt.seed));
  series.emplace_back("three_op_optimized",
                      optimized_trace(three_op, opt, opt.seed + 1));
  series.emplace_back("nonconvergent_floor",
                      trace_convergence(floor_set, opt.n_max));
  return series;
}

std::vector<NamedTrace> reproduce_fig2(const Options& opt) {
  ConstructionSpec two_op;
  two_op.d = 4;
  two_op.variant = ConstructionVariant::TwoOpOddD;

  ConstructionSpec conjugated = two_op;
  conjugated.words = {"uvhuv", "uv"};

  if (is_conjectural(two_op))
    std::cerr << "note: the two-operator construction in even dimension is "
                 "conjectural (numerically supported only)\n";

  std::vector<NamedTrace> series;
  series.emplace_back(
      "random_pair",
      optimized_trace(random_baseline(4, 2, opt.seed), opt, opt.seed + 2));
  series.emplace_back("group_h_uv",
                      optimized_trace(build_ensemble(two_op), opt, opt.seed + 3));
  series.emplace_back(
      "group_uvhuv_uv",
      optimized_trace(build_ensemble(conjugated), opt, opt.seed + 4));
  return series;
}

int run_reproduce(const Options& opt) {
  std::string format = resolve_format(opt, "csv", /*csv_allowed=*/true);
  std::vector<NamedTrace> series =
      opt.figure == "fig1" ? reproduce_fig1(opt) : reproduce_fig2(opt);

  if (format == "csv") {
    std::string text = "series,n,distance\n";
    char row[64];
    for (const auto& [name, trace] : series) {
      for (std::size_t k = 0; k < trace.n_values.size(); ++k) {
        std::snprintf(row, sizeof(row), "%d,%.17g", trace.n_values[k],
                      trace.distances[k]);
        text += name;
        text += ',';
        text += row;
        text += '\n';
      }
    }
    write_output(opt, text);
  } else {
    json out;
    out["figure"] = opt.figure;
    out["series"] = json::array();
    for (const auto& [name, trace] : series) {
      json entry = json::parse(trace_to_json(trace));
      entry["name"] = name;
      out["series"].push_back(std::move(entry));
    }
    write_output(opt, out.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("TWIRLKIT_TOL_OVERRIDE")) {
    try {
      apply_tolerance_overrides_json(env);
    } catch (const std::exception& ex) {
      std::cerr << "error: TWIRLKIT_TOL_OVERRIDE: " << ex.what() << "\n";
      return kExitInputError;
    }
  }

  CLI::App app{
      "Random unitary channel toolkit: classify qubit ensembles, analyze "
      "attractor spaces, trace convergence to the twirl, and optimize "
      "mixing probabilities."};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--input", opt.input,
                    "Ensemble or construction-recipe JSON file");
    sub->add_option("--d", opt.d,
                    "Dimension for the default three-operator construction");
    sub->add_option("--n-max", opt.n_max, "Iteration count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", opt.out, "Output file (default stdout)");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--restarts", opt.restarts, "Optimizer restarts")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", opt.verbose,
                  "Include the full evaluation history in optimizer output");
  };

  CLI::App* classify = app.add_subcommand(
      "classify",
      "Decide convergence to the twirl by the analytic angle rules and "
      "cross-check against the spectral oracle");
  CLI::App* attractors = app.add_subcommand(
      "attractors", "Asymptotic spectrum and attractor-space decomposition");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Distance-to-twirl trace with an exponential tail fit");
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Minimize the convergence rate over probabilities (and "
                  "block parameters for construction recipes)");
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Emit the bundled figure-reproduction series");
  for (CLI::App* sub : {classify, attractors, simulate, optimize, reproduce})
    add_common(sub);
  reproduce->add_option("figure", opt.figure, "Which figure data to emit")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (classify->parsed()) return run_classify(opt);
    if (attractors->parsed()) return run_attractors(opt);
    if (simulate->parsed()) return run_simulate(opt);
    if (optimize->parsed()) return run_optimize(opt);
    if (reproduce->parsed()) return run_reproduce(opt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
