// Copyright 2026 The taskorder Authors
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

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "taskorder/error.hpp"
#include "taskorder/io.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder_cli/commands.hpp"

#ifndef TASKORDER_VERSION
#define TASKORDER_VERSION "unknown"
#endif
#ifndef TASKORDER_BUILD_ID
#define TASKORDER_BUILD_ID "unknown"
#endif

namespace taskorder::cli {
namespace {

using Normalizer = Json (*)(const Json&, const RunContext&);
using Runner = Json (*)(const Json&, const RunContext&);

struct CommandEntry {
  const char* name;
  const char* help;
  Normalizer normalize;
  Runner run;
};

const CommandEntry kCommands[] = {
    {"eval", "Analytic final error for one ordering or all orderings", normalize_eval, cmd_eval},
    {"phase", "Best order of three tasks over a grid of pairwise similarities", normalize_phase, cmd_phase},
    {"rules", "Compare ordering rules on one spec or over sampled specs", normalize_rules, cmd_rules},
    {"simulate", "Train students on sampled ensembles and compare with theory", normalize_simulate,
     cmd_simulate},
    {"estimate", "Similarity matrix and recommended orders from transfer errors", normalize_estimate,
     cmd_estimate},
};

const CommandEntry& find_command(const std::string& name) {
  for (const auto& c : kCommands)
    if (name == c.name) return c;
  fail(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

// Command-line values that land in the config document when given.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
  std::string graph, c_in, c_out, ordering, trainer, table, transfer_csv, baseline_csv;
  std::optional<int> size, n_random, sweep, scatter, seeds;
  std::optional<double> a, rho_o, step, slice_rho_ca;
  std::vector<std::string> orderings;
  bool project = false;
  bool no_all = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Base random seed");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

void add_spec(CLI::App* sub, Overrides& o) {
  sub->add_option("--graph", o.graph, "Graph spec: chain, ring, tree or leaves");
  sub->add_option("--size", o.size, "Task count for graph specs");
  sub->add_option("--a", o.a, "Graph similarity base a in (0, 1)");
  sub->add_option("--c-in", o.c_in, "Input similarity matrix file (.csv or .json)");
  sub->add_option("--c-out", o.c_out, "Output similarity matrix file (.csv or .json)");
  sub->add_option("--rho-o", o.rho_o, "Uniform output similarity when no --c-out is given");
}

Json merge(const std::string& command, const Overrides& o) {
  Json cfg = o.config.empty() ? Json::object() : read_json(o.config);
  if (!cfg.is_object()) fail(ErrorKind::ParseError, "config must be a JSON object");
  if (cfg.contains("command") && cfg["command"] != command)
    fail(ErrorKind::InvalidArgument, "config is for command '" + cfg["command"].get<std::string>() + "'");
  cfg["command"] = command;
  if (o.seed) cfg["seed"] = *o.seed;
  if (o.threads) cfg["threads"] = *o.threads;
  if (!o.out.empty()) cfg["out"] = o.out;

  Json spec = cfg.value("spec", Json());
  auto spec_obj = [&]() -> Json& {
    if (!spec.is_object()) spec = Json::object();
    return spec;
  };
  if (!o.graph.empty()) spec = Json{{"source", "graph"}, {"kind", o.graph}};
  if (!o.c_in.empty()) spec = Json{{"source", "file"}, {"c_in", o.c_in}};
  if (o.size) spec_obj()["size"] = *o.size;
  if (o.a) spec_obj()["a"] = *o.a;
  if (!o.c_out.empty()) spec_obj()["c_out"] = o.c_out;
  if (o.rho_o) spec_obj()["rho_o"] = *o.rho_o;
  if (!spec.is_null()) cfg["spec"] = spec;

  if (!o.ordering.empty()) cfg["ordering"] = o.ordering;
  if (o.no_all) cfg["all"] = false;
  if (o.step) cfg["step"] = *o.step;
  if (o.slice_rho_ca) cfg["slice_rho_ca"] = *o.slice_rho_ca;
  if (o.n_random) cfg["n_random"] = *o.n_random;
  if (o.sweep) cfg["sweep"]["specs"] = *o.sweep;
  if (o.scatter) cfg["scatter"]["specs"] = *o.scatter;
  if (o.seeds) cfg["seeds"] = *o.seeds;
  if (!o.trainer.empty()) cfg["trainer"] = o.trainer;
  if (!o.orderings.empty()) cfg["orderings"] = o.orderings;
  if (!o.table.empty()) cfg["table"] = o.table;
  if (!o.transfer_csv.empty()) cfg["transfer_csv"] = o.transfer_csv;
  if (!o.baseline_csv.empty()) cfg["baseline_csv"] = o.baseline_csv;
  if (o.project) cfg["project"] = true;
  return cfg;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : kCommands) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

Json run_command(const std::string& name, const Json& cfg, const RunContext& ctx) {
  const CommandEntry& entry = find_command(name);
  const auto start = std::chrono::steady_clock::now();
  Json config = entry.normalize(cfg, ctx);
  config["command"] = name;
  config["seed"] = ctx.seed;
  config["threads"] = ctx.threads;
  config["out"] = ctx.out_dir.string();
  std::filesystem::create_directories(ctx.out_dir);
  write_text(ctx.out_dir / "config.json", config.dump(2) + "\n");

  Json payload = entry.run(config, ctx);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json report = {{"command", name},
                 {"version", TASKORDER_VERSION},
                 {"build", TASKORDER_BUILD_ID},
                 {"wall_clock_seconds", seconds},
                 {"config", config},
                 {"payload", payload}};
  write_text(ctx.out_dir / "report.json", report.dump(2) + "\n");
  return report;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Task-order analysis for sequential training of linear students"};
  app.set_version_flag("--version", std::string(TASKORDER_VERSION) + " (" + TASKORDER_BUILD_ID + ")");
  app.require_subcommand(1);

  Overrides o;
  std::string chosen;
  for (const auto& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    const std::string name = c.name;
    if (name == "eval" || name == "rules" || name == "simulate") add_spec(sub, o);
    if (name == "eval") {
      sub->add_option("--ordering", o.ordering, "Ordering to evaluate, e.g. 3>1>2 or A>C>B");
      sub->add_flag("--no-all", o.no_all, "Skip the exhaustive ranking");
    } else if (name == "phase") {
      sub->add_option("--step", o.step, "Grid step");
      sub->add_option("--slice-rho-ca", o.slice_rho_ca, "Fix rho_CA and sweep the other two");
    } else if (name == "rules") {
      sub->add_option("--n-random", o.n_random, "Random orderings for the baseline");
      sub->add_option("--sweep", o.sweep, "Sample this many specs and bin the rule outcomes");
    } else if (name == "simulate") {
      sub->add_option("--trainer", o.trainer, "gd or closed")->check(CLI::IsMember({"gd", "closed"}));
      sub->add_option("--seeds", o.seeds, "Ensembles per ordering or per spec");
      sub->add_option("--ordering", o.orderings, "Ordering to train (repeatable)");
      sub->add_option("--scatter", o.scatter, "Compare theory and simulation on this many random specs");
    } else if (name == "estimate") {
      sub->add_option("--table", o.table, "Transfer table JSON")->check(CLI::ExistingFile);
      sub->add_option("--transfer-csv", o.transfer_csv, "Transfer matrix CSV")->check(CLI::ExistingFile);
      sub->add_option("--baseline-csv", o.baseline_csv, "Baseline matrix CSV")->check(CLI::ExistingFile);
      sub->add_flag("--project", o.project, "Project a non-PSD estimate before analytic evaluation");
    }
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const Json cfg = merge(chosen, o);
    RunContext ctx;
    ctx.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    ctx.threads = get_or<int>(cfg, "threads", default_threads());
    if (ctx.threads < 1) fail(ErrorKind::InvalidArgument, "threads must be positive");
    ctx.out_dir = get_or<std::string>(cfg, "out", "taskorder-" + chosen);
    ctx.log = &out;
    run_command(chosen, cfg, ctx);
    out << "wrote " << (ctx.out_dir / "report.json").string() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace taskorder::cli
