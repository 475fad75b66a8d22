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

#include <algorithm>
#include <cmath>
#include <utility>

#include "common.hpp"
#include "taskorder/analytic.hpp"
#include "taskorder/ensemble.hpp"
#include "taskorder/error.hpp"
#include "taskorder/io.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder/random.hpp"
#include "taskorder_cli/commands.hpp"

namespace taskorder::cli {

using detail::CsvWriter;
using detail::log;

namespace {

Dimensions read_dims(const Json& cfg) {
  const Json d = cfg.value("dims", Json::object());
  Dimensions dims;
  dims.n_s = get_or<int>(d, "n_s", dims.n_s);
  dims.n_x = get_or<int>(d, "n_x", dims.n_x);
  dims.n_y = get_or<int>(d, "n_y", dims.n_y);
  dims.validate();
  return dims;
}

TrainingConfig read_training(const Json& cfg) {
  const Json t = cfg.value("training", Json::object());
  TrainingConfig tc;
  tc.eta = get_or<double>(t, "eta", tc.eta);
  tc.iters_per_task = get_or<int>(t, "iters_per_task", tc.iters_per_task);
  tc.gradient_scale = get_or<double>(t, "gradient_scale", tc.gradient_scale);
  tc.validate();
  return tc;
}

Trainer read_trainer(const std::string& name) {
  if (name == "closed") return Trainer::Closed;
  if (name == "gd") return Trainer::GradientDescent;
  fail(ErrorKind::InvalidArgument, "trainer must be 'gd' or 'closed', got '" + name + "'");
}

StudentState train(const EnsembleSample& sample, const Ordering& ord, Trainer trainer, const TrainingConfig& tc) {
  return trainer == Trainer::Closed ? train_closed(sample, ord) : train_gd(sample, ord, tc);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

std::pair<double, double> mean_sem(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Json run_traces(const Json& cfg, const RunContext& ctx) {
  const TaskSetSpec spec = build_spec(cfg.at("spec"), ctx.seed);
  detail::write_spec(spec, ctx);
  const Dimensions dims = read_dims(cfg);
  const TrainingConfig tc = read_training(cfg);
  const Trainer trainer = read_trainer(get_or<std::string>(cfg, "trainer", "gd"));
  const int seeds = get_or<int>(cfg, "seeds", 10);
  if (seeds < 2) fail(ErrorKind::InvalidArgument, "simulate needs at least 2 seeds");

  std::vector<Ordering> orders;
  for (const auto& text : cfg.at("orderings")) orders.push_back(Ordering::parse(text.get<std::string>()));

  // Every ordering is trained on the same ensembles.
  std::vector<std::vector<StudentState>> states(orders.size(), std::vector<StudentState>(seeds));
  parallel_for(static_cast<std::size_t>(seeds), ctx.threads, [&](std::size_t k) {
    const EnsembleSample sample = sample_ensemble(spec, dims, derive_seed(ctx.seed, k));
    for (std::size_t o = 0; o < orders.size(); ++o) states[o][k] = train(sample, orders[o], trainer, tc);
  });

  Json results = Json::array();
  CsvWriter stage_csv({"ordering", "stage", "mean_total_error", "sem_total_error", "mean_seen_error",
                       "sem_seen_error", "analytic_final_error"});
  for (std::size_t o = 0; o < orders.size(); ++o) {
    std::vector<TraceRow> rows;
    std::vector<double> finals;
    for (int k = 0; k < seeds; ++k) {
      const auto part = trace_rows(states[o][k], derive_seed(ctx.seed, static_cast<std::uint64_t>(k)));
      rows.insert(rows.end(), part.begin(), part.end());
      finals.push_back(states[o][k].final_error());
    }
    const std::string file = "traces_" + detail::file_token(orders[o]) + ".csv";
    write_text(ctx.out_dir / file, traces_to_csv(rows));

    const double analytic = ordered_error(spec, orders[o]).value();
    const int stages = spec.tasks() + 1;
    for (int st = 0; st < stages; ++st) {
      std::vector<double> totals, seen;
      for (int k = 0; k < seeds; ++k) {
        const auto& row = states[o][k].stage_errors.row(st);
        totals.push_back(row.sum());
        double trained = 0.0;
        for (int j = 0; j < st; ++j) trained += row(orders[o][j]);
        seen.push_back(trained);
      }
      const auto [total_mean, total_sem] = mean_sem(totals);
      const auto [seen_mean, seen_sem] = mean_sem(seen);
      stage_csv.row({orders[o].to_string(), std::to_string(st), format_double(total_mean), format_double(total_sem),
                     format_double(seen_mean), format_double(seen_sem), format_double(analytic)});
    }
    const auto [mean, sem] = mean_sem(finals);
    results.push_back({{"ordering", orders[o].to_string()},
                       {"analytic", analytic},
                       {"mc_mean", mean},
                       {"mc_sem", sem},
                       {"file", file}});
    log(ctx) << orders[o].to_string() << ": analytic " << format_double(analytic) << ", simulated "
             << format_double(mean) << " +- " << format_double(sem) << "\n";
  }
  stage_csv.write(ctx.out_dir / "stages.csv");
  return {{"spec", detail::spec_summary(spec)}, {"orderings", results}, {"stage_file", "stages.csv"}};
}

Json run_scatter(const Json& cfg, const RunContext& ctx) {
  const Json& s = cfg.at("scatter");
  const int specs = get_or<int>(s, "specs", 30);
  const int min_size = get_or<int>(s, "min_size", 2);
  const int max_size = get_or<int>(s, "max_size", 6);
  const double lo = get_or<double>(s, "lo", 0.0);
  const double hi = get_or<double>(s, "hi", 1.0);
  const int max_tries = get_or<int>(s, "max_tries", kDefaultMaxTries);
  const std::string c_out_mode = get_or<std::string>(s, "c_out", "random");
  if (c_out_mode != "random" && c_out_mode != "ones")
    fail(ErrorKind::InvalidArgument, "scatter c_out must be 'random' or 'ones'");
  if (specs < 2 || min_size < 1 || max_size < min_size)
    fail(ErrorKind::InvalidArgument, "scatter needs specs >= 2 and 1 <= min_size <= max_size");
  const Dimensions dims = read_dims(cfg);
  const TrainingConfig tc = read_training(cfg);
  const Trainer trainer = read_trainer(get_or<std::string>(cfg, "trainer", "closed"));
  const int seeds = get_or<int>(cfg, "seeds", 10);

  struct Point {
    int tasks = 0;
    double analytic = 0.0;
    MonteCarloEstimate mc;
  };
  std::vector<Point> points(specs);
  parallel_for(points.size(), ctx.threads, [&](std::size_t k) {
    const std::uint64_t base = derive_seed(ctx.seed, k);
    Rng rng(base);
    const int p = min_size + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(max_size - min_size + 1)));
    const CorrelationMatrix c_in = sample_correlation(p, lo, hi, derive_seed(base, 1), max_tries);
    const CorrelationMatrix c_out = c_out_mode == "ones" ? CorrelationMatrix::uniform(p, 1.0)
                                                         : sample_correlation(p, lo, hi, derive_seed(base, 2), max_tries);
    const TaskSetSpec spec(c_in, c_out);
    points[k].tasks = p;
    points[k].analytic = final_error(spec).value();
    points[k].mc = mc_final_error(spec, dims, Ordering::identity(p), seeds, derive_seed(base, 3), trainer, tc, 1);
  });

  CsvWriter csv({"index", "tasks", "analytic", "mc_mean", "mc_sem", "relative_deviation"});
  std::vector<double> xs, ys, rel;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& pt = points[k];
    const double dev = pt.analytic > 0.0 ? std::abs(pt.mc.mean - pt.analytic) / pt.analytic : std::nan("");
    xs.push_back(pt.analytic);
    ys.push_back(pt.mc.mean);
    if (pt.analytic > 0.0) rel.push_back(dev);
    csv.row({std::to_string(k), std::to_string(pt.tasks), format_double(pt.analytic), format_double(pt.mc.mean),
             format_double(pt.mc.sem), pt.analytic > 0.0 ? format_double(dev) : ""});
  }
  csv.write(ctx.out_dir / "scatter.csv");
  const double r = pearson(xs, ys);
  const double med = rel.empty() ? 0.0 : median(rel);
  log(ctx) << specs << " specs: correlation " << format_double(r) << ", median relative deviation "
           << format_double(med) << "\n";
  return {{"specs", specs}, {"correlation", r}, {"median_relative_deviation", med}, {"file", "scatter.csv"}};
}

}  // namespace

Json normalize_simulate(const Json& cfg, const RunContext& ctx) {
  Json c = cfg;
  Json& d = c["dims"];
  if (!d.is_object()) d = Json::object();
  const Dimensions dims;
  set_default(d, "n_s", dims.n_s);
  set_default(d, "n_x", dims.n_x);
  set_default(d, "n_y", dims.n_y);
  Json& t = c["training"];
  if (!t.is_object()) t = Json::object();
  const TrainingConfig tc;
  set_default(t, "eta", tc.eta);
  set_default(t, "iters_per_task", tc.iters_per_task);
  set_default(t, "gradient_scale", tc.gradient_scale);
  set_default(c, "seeds", 10);
  if (c.contains("scatter")) {
    Json& s = c["scatter"];
    if (!s.is_object()) s = Json::object();
    set_default(s, "specs", 30);
    set_default(s, "min_size", 2);
    set_default(s, "max_size", 6);
    set_default(s, "lo", 0.0);
    set_default(s, "hi", 1.0);
    set_default(s, "c_out", "random");
    set_default(s, "max_tries", kDefaultMaxTries);
    set_default(c, "trainer", "closed");
  } else {
    c["spec"] = normalize_spec(cfg.value("spec", Json()), ctx.seed);
    set_default(c, "trainer", "gd");
    if (!c.contains("orderings")) {
      const TaskSetSpec spec = build_spec(c["spec"], ctx.seed);
      c["orderings"] = Json::array({Ordering::identity(spec.tasks()).to_string()});
    }
  }
  return c;
}

Json cmd_simulate(const Json& cfg, const RunContext& ctx) {
  return cfg.contains("scatter") ? run_scatter(cfg, ctx) : run_traces(cfg, ctx);
}

}  // namespace taskorder::cli
