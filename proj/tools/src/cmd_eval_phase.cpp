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
#include <optional>

#include "common.hpp"
#include "taskorder/analytic.hpp"
#include "taskorder/error.hpp"
#include "taskorder/io.hpp"
#include "taskorder/order_opt.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder_cli/commands.hpp"

namespace taskorder::cli {

using detail::CsvWriter;
using detail::log;

Json normalize_eval(const Json& cfg, const RunContext& ctx) {
  Json c = cfg;
  c["spec"] = normalize_spec(cfg.value("spec", Json()), ctx.seed);
  set_default(c, "limit_p", kDefaultEnumerationLimit);
  return c;
}

Json cmd_eval(const Json& cfg, const RunContext& ctx) {
  const TaskSetSpec spec = build_spec(cfg.at("spec"), ctx.seed);
  const int p = spec.tasks();
  detail::write_spec(spec, ctx);
  Json payload;
  payload["spec"] = detail::spec_summary(spec);

  const ErrorValue identity = final_error(spec);
  payload["identity_error"] = identity.value();
  payload["identity_per_task_mean"] = identity.value() / p;
  log(ctx) << "tasks " << p << ", error in index order " << format_double(identity.value()) << "\n";

  if (cfg.contains("ordering")) {
    const Ordering ord = Ordering::parse(cfg.at("ordering").get<std::string>());
    const ErrorValue e = ordered_error(spec, ord);
    payload["ordering"] = ord.to_string();
    payload["error"] = e.value();
    payload["per_task_mean"] = e.value() / p;
    log(ctx) << "ordering " << ord.to_string() << " error " << format_double(e.value()) << "\n";
  }

  const int limit = get_or<int>(cfg, "limit_p", kDefaultEnumerationLimit);
  const bool all = get_or<bool>(cfg, "all", p <= limit);
  if (all) {
    const RankedOrders ranked = enumerate_orders(spec, limit, ctx.threads);
    CsvWriter csv({"rank", "ordering", "error"});
    for (std::size_t k = 0; k < ranked.orders.size(); ++k) {
      csv.row({std::to_string(k + 1), ranked.orders[k].ordering.to_string(),
               format_double(ranked.orders[k].error.value())});
    }
    csv.write(ctx.out_dir / "orders.csv");
    const double best = ranked.best().error.value();
    const double worst = ranked.worst().error.value();
    Json summary = {{"count", ranked.orders.size()},
                    {"best", {{"ordering", ranked.best().ordering.to_string()}, {"error", best}}},
                    {"worst", {{"ordering", ranked.worst().ordering.to_string()}, {"error", worst}}},
                    {"file", "orders.csv"}};
    summary["worst_best_ratio"] = best > 0.0 ? Json(worst / best) : Json();
    payload["all_orders"] = summary;
    log(ctx) << ranked.orders.size() << " orders, best " << ranked.best().ordering.to_string() << " ("
             << format_double(best) << "), worst " << ranked.worst().ordering.to_string() << " ("
             << format_double(worst) << ")\n";
  }
  return payload;
}

Json normalize_phase(const Json& cfg, const RunContext&) {
  Json c = cfg;
  set_default(c, "step", 0.05);
  set_default(c, "lo", -1.0);
  set_default(c, "hi", 1.0);
  return c;
}

namespace {

// Grid points lo, lo + step, ... strictly below hi, rounded to 1e-12 so the
// printed coordinates are the exact values used.
std::vector<double> grid_axis(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo < hi) || lo < -1.0 || hi > 1.0 + 1e-12)
    fail(ErrorKind::InvalidArgument, "phase grid needs step > 0 and -1 <= lo < hi <= 1");
  std::vector<double> axis;
  for (long i = 0;; ++i) {
    const double v = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (v >= hi - 1e-12) break;
    axis.push_back(v);
  }
  return axis;
}

struct PhaseCell {
  double ab = 0.0, bc = 0.0, ca = 0.0;
  bool valid = false;
  std::string best;
  double error = 0.0;
  int tied = 0;
};

}  // namespace

Json cmd_phase(const Json& cfg, const RunContext& ctx) {
  const std::vector<double> axis =
      grid_axis(get_or<double>(cfg, "lo", -1.0), get_or<double>(cfg, "hi", 1.0), get_or<double>(cfg, "step", 0.05));
  std::vector<double> ca_axis = axis;
  if (cfg.contains("slice_rho_ca")) ca_axis = {cfg.at("slice_rho_ca").get<double>()};

  const std::size_t n = axis.size();
  std::vector<PhaseCell> cells(n * n * ca_axis.size());
  const CorrelationMatrix ones = CorrelationMatrix::uniform(3, 1.0);
  parallel_for(cells.size(), ctx.threads, [&](std::size_t idx) {
    PhaseCell& cell = cells[idx];
    cell.ab = axis[idx / (n * ca_axis.size())];
    cell.bc = axis[(idx / ca_axis.size()) % n];
    cell.ca = ca_axis[idx % ca_axis.size()];
    Matrix c(3, 3);
    c << 1.0, cell.ab, cell.ca, cell.ab, 1.0, cell.bc, cell.ca, cell.bc, 1.0;
    std::optional<CorrelationMatrix> c_in;
    try {
      c_in = CorrelationMatrix::validate(c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotPSD) throw;
      return;
    }
    const RankedOrders ranked = enumerate_orders(TaskSetSpec(*c_in, ones));
    cell.valid = true;
    cell.best = ranked.best().ordering.to_string();
    cell.error = ranked.best().error.value();
    for (const auto& o : ranked.orders)
      if (o.error.value() - cell.error <= kErrorTieResolution) ++cell.tied;
  });

  CsvWriter csv({"rho_ab", "rho_bc", "rho_ca", "best_order", "best_error", "tied"});
  std::map<std::string, int> counts;
  int valid = 0;
  for (const auto& cell : cells) {
    if (cell.valid) {
      ++valid;
      ++counts[cell.tied == 6 ? std::string("all_tied") : cell.best];
      csv.row({short_double(cell.ab), short_double(cell.bc), short_double(cell.ca), cell.best,
               format_double(cell.error), std::to_string(cell.tied)});
    } else {
      csv.row({short_double(cell.ab), short_double(cell.bc), short_double(cell.ca), "invalid", "", ""});
    }
  }
  csv.write(ctx.out_dir / "phase.csv");
  log(ctx) << cells.size() << " cells, " << valid << " positive semi-definite\n";
  return {{"cells", cells.size()},
          {"valid_cells", valid},
          {"invalid_cells", static_cast<int>(cells.size()) - valid},
          {"best_order_counts", counts},
          {"file", "phase.csv"}};
}

}  // namespace taskorder::cli
