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

#include <cmath>
#include <map>

#include "common.hpp"
#include "taskorder/analytic.hpp"
#include "taskorder/error.hpp"
#include "taskorder/io.hpp"
#include "taskorder/order_opt.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder/random.hpp"
#include "taskorder_cli/commands.hpp"

namespace taskorder::cli {

using detail::CsvWriter;
using detail::log;

Json normalize_rules(const Json& cfg, const RunContext& ctx) {
  Json c = cfg;
  set_default(c, "n_random", kDefaultRandomOrders);
  if (c.contains("sweep")) {
    Json& s = c["sweep"];
    if (!s.is_object()) s = Json::object();
    set_default(s, "specs", 1000);
    set_default(s, "size", 7);
    set_default(s, "lo", -1.0);
    set_default(s, "hi", 1.0);
    set_default(s, "rho_o", 1.0);
    set_default(s, "bin_width", 0.1);
    set_default(s, "max_tries", 100000000);
  } else {
    c["spec"] = normalize_spec(cfg.value("spec", Json()), ctx.seed);
  }
  return c;
}

namespace {

struct SweepRow {
  std::uint64_t seed = 0;
  long tries = 0;
  RuleReport report;
};

struct BinTally {
  int n = 0;
  int p2c_wins = 0;
  int max_wins = 0;
  double rel_sum[4] = {0.0, 0.0, 0.0, 0.0};
  int rel_n = 0;
};

const char* const kRuleNames[4] = {kPeripheryToCore, kCoreToPeriphery, kMaxPath, kMinPath};

Json run_single(const Json& cfg, const RunContext& ctx) {
  const TaskSetSpec spec = build_spec(cfg.at("spec"), ctx.seed);
  detail::write_spec(spec, ctx);
  const RuleReport report = compare_rules(spec, get_or<int>(cfg, "n_random", kDefaultRandomOrders), ctx.seed);
  CsvWriter csv({"rule", "ordering", "error", "twin", "twin_error", "rule_error"});
  for (const auto& e : report.rules) {
    csv.row({e.rule, e.ordering.to_string(), format_double(e.error.value()), e.twin ? e.twin->to_string() : "",
             e.twin_error ? format_double(e.twin_error->value()) : "", format_double(e.rule_error)});
    log(ctx) << e.rule << " " << e.ordering.to_string() << " " << format_double(e.rule_error) << "\n";
  }
  csv.write(ctx.out_dir / "rules.csv");
  Json payload = to_json(report);
  payload["spec"] = detail::spec_summary(spec);
  if (spec.tasks() <= 8) {
    const RankedOrders ranked = enumerate_orders(spec, kDefaultEnumerationLimit, ctx.threads);
    payload["exhaustive_best"] = {{"ordering", ranked.best().ordering.to_string()},
                                  {"error", ranked.best().error.value()}};
  }
  log(ctx) << "random mean " << format_double(report.random.mean) << " sem " << format_double(report.random.sem)
           << "\n";
  return payload;
}

Json run_sweep(const Json& cfg, const RunContext& ctx) {
  const Json& s = cfg.at("sweep");
  const int specs = get_or<int>(s, "specs", 1000);
  const int size = get_or<int>(s, "size", 7);
  const double lo = get_or<double>(s, "lo", -1.0);
  const double hi = get_or<double>(s, "hi", 1.0);
  const double rho_o = get_or<double>(s, "rho_o", 1.0);
  const double width = get_or<double>(s, "bin_width", 0.1);
  const int max_tries = get_or<int>(s, "max_tries", 100000000);
  const int n_random = get_or<int>(cfg, "n_random", kDefaultRandomOrders);
  if (specs < 1 || !(width > 0.0)) fail(ErrorKind::InvalidArgument, "sweep needs specs >= 1 and bin_width > 0");

  std::vector<SweepRow> rows(specs);
  const CorrelationMatrix c_out = CorrelationMatrix::uniform(size, rho_o);
  parallel_for(rows.size(), ctx.threads, [&](std::size_t k) {
    SweepRow& row = rows[k];
    row.seed = derive_seed(ctx.seed, k);
    const SampledCorrelation drawn = sample_correlation_counted(size, lo, hi, row.seed, max_tries);
    row.tries = drawn.tries;
    row.report = compare_rules(TaskSetSpec(drawn.matrix, c_out), n_random, derive_seed(row.seed, 1));
  });

  CsvWriter csv({"index", "seed", "m", kRuleNames[0], kRuleNames[1], kRuleNames[2], kRuleNames[3], "random_mean",
                 "random_sem"});
  std::map<long, BinTally> bins;
  long tries = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RuleReport& r = rows[k].report;
    tries += rows[k].tries;
    std::vector<std::string> fields{std::to_string(k), std::to_string(rows[k].seed), format_double(r.mean_similarity)};
    for (const char* name : kRuleNames) fields.push_back(format_double(r.rule(name).rule_error));
    fields.push_back(format_double(r.random.mean));
    fields.push_back(format_double(r.random.sem));
    csv.row(std::move(fields));

    BinTally& bin = bins[static_cast<long>(std::floor((r.mean_similarity + 1e-12) / width))];
    ++bin.n;
    if (r.rule(kPeripheryToCore).rule_error < r.rule(kCoreToPeriphery).rule_error) ++bin.p2c_wins;
    if (r.rule(kMaxPath).rule_error < r.rule(kMinPath).rule_error) ++bin.max_wins;
    if (r.random.mean > 0.0) {
      for (int q = 0; q < 4; ++q) bin.rel_sum[q] += r.rule(kRuleNames[q]).rule_error / r.random.mean;
      ++bin.rel_n;
    }
  }
  csv.write(ctx.out_dir / "sweep.csv");

  CsvWriter bin_csv({"bin_lo", "bin_hi", "n", "p2c_beats_c2p", "max_beats_min", "rel_periphery_to_core",
                     "rel_core_to_periphery", "rel_max_path", "rel_min_path"});
  Json bin_json = Json::array();
  for (const auto& [index, bin] : bins) {
    const double b_lo = std::round(static_cast<double>(index) * width * 1e12) / 1e12;
    const double b_hi = std::round(static_cast<double>(index + 1) * width * 1e12) / 1e12;
    const double p2c = static_cast<double>(bin.p2c_wins) / bin.n;
    const double mx = static_cast<double>(bin.max_wins) / bin.n;
    std::vector<std::string> fields{short_double(b_lo), short_double(b_hi), std::to_string(bin.n),
                                    format_double(p2c), format_double(mx)};
    Json rel = Json::object();
    for (int q = 0; q < 4; ++q) {
      const double v = bin.rel_n ? bin.rel_sum[q] / bin.rel_n : std::nan("");
      fields.push_back(bin.rel_n ? format_double(v) : "");
      rel[kRuleNames[q]] = bin.rel_n ? Json(v) : Json();
    }
    bin_csv.row(std::move(fields));
    bin_json.push_back({{"bin_lo", b_lo},
                        {"bin_hi", b_hi},
                        {"n", bin.n},
                        {"p2c_beats_c2p", p2c},
                        {"max_beats_min", mx},
                        {"relative_to_random", rel}});
    log(ctx) << "m in [" << short_double(b_lo) << ", " << short_double(b_hi) << "): n=" << bin.n
             << " periphery-to-core wins " << format_double(p2c) << ", max-path wins " << format_double(mx) << "\n";
  }
  bin_csv.write(ctx.out_dir / "bins.csv");
  return {{"specs", specs},
          {"tries", tries},
          {"acceptance_rate", static_cast<double>(specs) / static_cast<double>(tries)},
          {"bins", bin_json},
          {"files", {"sweep.csv", "bins.csv"}}};
}

}  // namespace

Json cmd_rules(const Json& cfg, const RunContext& ctx) {
  return cfg.contains("sweep") ? run_sweep(cfg, ctx) : run_single(cfg, ctx);
}

}  // namespace taskorder::cli
