#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "harmonet/averaging.hpp"
#include "harmonet/errors.hpp"
#include "harmonet/io.hpp"
#include "harmonet/scenario.hpp"
#include "harmonet/stability.hpp"
#include "harmonet/symspace.hpp"
#include "harmonet/variation.hpp"
#include "harmonet/version.hpp"

namespace fs = std::filesystem;
using namespace harmonet;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kNonConvergence = 3, kNotCritical = 4, kTraceGap = 5 };

struct Options {
  std::string config;
  std::string scenario;
  std::string map;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int samples = 1000;
};

struct Run {
  Scenario scenario;
  json provenance;
};

Run load_run(const Options& o) {
  if (o.config.empty() == o.scenario.empty()) {
    throw Error(ErrorCode::InvalidConfig, "give exactly one of --config and --scenario");
  }
  json cfg = o.config.empty() ? read_json_file(scenario_dir() + "/" + o.scenario + ".json") : read_json_file(o.config);
  Run r{scenario_from_json(cfg, o.seed), json::object()};
  if (o.tol) r.scenario.solver.tol = *o.tol;
  json hashed = cfg;
  if (o.seed) hashed["seed"] = *o.seed;
  if (o.tol) hashed["tol"] = *o.tol;
  if (!o.map.empty()) hashed["map"] = read_json_file(o.map);
  r.provenance = {{"config_hash", config_hash(hashed)}, {"version", kVersion}, {"scenario", r.scenario.name}};
  return r;
}

DiscreteMap input_map(const Options& o, const Run& r) {
  if (o.map.empty()) return r.scenario.initial;
  return map_from_json(read_json_file(o.map));
}

void emit(const Options& o, const std::string& file, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  write_text_file((fs::path(o.out) / file).string(), text);
}

void emit_json(const Options& o, const std::string& file, json j, const json& provenance) {
  for (auto it = provenance.begin(); it != provenance.end(); ++it) j[it.key()] = it.value();
  emit(o, file, j.dump(2) + "\n");
}

int cmd_solve(const Options& o) {
  Run r = load_run(o);
  const Scenario& s = r.scenario;
  DiscreteMap start = input_map(o, r);
  SolveResult res = harmonic_solve(start, s.p, s.solver);
  emit_json(o, "map.json", map_to_json(res.map, s.config.at("manifold")), r.provenance);
  json rep = residuals_to_json(res.residuals);
  rep["converged"] = res.converged;
  rep["iterations"] = res.iterations;
  rep["energy"] = res.energy_history.empty() ? energy(res.map, s.p) : res.energy_history.back();
  emit_json(o, "residuals.json", rep, r.provenance);
  return res.converged ? kOk : kNonConvergence;
}

int cmd_stability(const Options& o) {
  Run r = load_run(o);
  DiscreteMap f = input_map(o, r);
  HessianOptions ho;
  if (o.tol) ho.tol = *o.tol;
  HessianContext ctx(f, r.scenario.p, ho);
  HessianAssembly A = hessian_matrix(ctx);
  StabilityVerdict v = stability_verdict(A);
  emit_json(o, "verdict.json", verdict_to_json(v, r.scenario.p), r.provenance);
  if (!o.out.empty()) emit(o, "spectrum.csv", spectrum_csv(v.spectrum));
  return kOk;
}

int cmd_trace_verify(const Options& o) {
  Run r = load_run(o);
  DiscreteMap f = input_map(o, r);
  const int p = r.scenario.p;
  HessianContext ctx(f, p);
  double direct = trace_q_direct(ctx);
  double formula = trace_q_formula(f, p);
  double gap = std::abs(direct - formula);
  double rel = o.tol.value_or(1e-3);
  double allowed = std::max(rel * std::abs(formula), 5e-3);
  json rep = {{"p", p},
              {"direct", direct},
              {"formula", formula},
              {"gap", gap},
              {"relative_gap", gap / std::max(std::abs(formula), 1e-300)},
              {"allowed", allowed},
              {"passed", gap <= allowed}};
  emit_json(o, "trace.json", rep, r.provenance);
  return gap <= allowed ? kOk : kTraceGap;
}

int cmd_g2_verify(const Options& o) {
  std::uint64_t seed = o.seed.value_or(1);
  SymSpaceContext ctx;
  ConstantReport rep = g2_full_report(ctx, o.samples, seed);
  json prov = {{"config_hash", config_hash(json{{"samples", o.samples}, {"seed", seed}})}, {"version", kVersion}};
  emit_json(o, "g2.json", constants_to_json(rep), prov);
  return rep.passed() ? kOk : kOther;
}

int cmd_criteria(const Options& o) {
  if (o.config.empty()) throw Error(ErrorCode::InvalidConfig, "criteria needs --config");
  json cfg = read_json_file(o.config);
  CriteriaReport rep = criteria_evaluate(criteria_from_json(cfg));
  json prov = {{"config_hash", config_hash(cfg)}, {"version", kVersion}};
  emit_json(o, "criteria.json", criteria_to_json(rep), prov);
  return kOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::MissingField:
    case ErrorCode::NonPositiveWeight:
    case ErrorCode::DanglingEndpoint:
    case ErrorCode::Disconnected:
    case ErrorCode::UnknownVertex:
    case ErrorCode::InconsistentMap:
      return kConfig;
    case ErrorCode::NotCritical:
      return kNotCritical;
    default:
      return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete harmonic maps of graphs: solve, stability, trace identity and G2 checks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_map) {
    sub->add_option("--config", o.config, "Scenario or criteria JSON file");
    sub->add_option("--scenario", o.scenario, "Built-in scenario name");
    if (needs_map) sub->add_option("--map", o.map, "Map JSON written by solve");
    sub->add_option("--out", o.out, "Output directory; reports go to stdout when omitted");
    sub->add_option("--seed", o.seed, "Seed for randomized routines");
    sub->add_option("--tol", o.tol, "Tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run the p-energy descent and write map.json and residuals.json");
  add_common(solve, true);
  CLI::App* stab = app.add_subcommand("stability", "Assemble the Hessian and write verdict.json and spectrum.csv");
  add_common(stab, true);
  CLI::App* trace = app.add_subcommand("trace-verify", "Compare the averaged second variation with its closed form");
  add_common(trace, true);
  CLI::App* g2 = app.add_subcommand("g2-verify", "Exact and sampled constants of the G2/SO(4) orbit");
  g2->add_option("--out", o.out, "Output directory");
  g2->add_option("--seed", o.seed, "Seed for isotropy sampling");
  g2->add_option("--samples", o.samples, "Sampled unit directions")->check(CLI::PositiveNumber);
  CLI::App* crit = app.add_subcommand("criteria", "Evaluate the nonexistence criteria for given constants");
  crit->add_option("--config", o.config, "Criteria JSON file")->required();
  crit->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*stab) return cmd_stability(o);
    if (*trace) return cmd_trace_verify(o);
    if (*g2) return cmd_g2_verify(o);
    if (*crit) return cmd_criteria(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
