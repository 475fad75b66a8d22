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

#include "common.hpp"
#include "taskorder/error.hpp"
#include "taskorder/io.hpp"
#include "taskorder/order_opt.hpp"
#include "taskorder/similarity.hpp"
#include "taskorder_cli/commands.hpp"

namespace taskorder::cli {

using detail::log;

Json normalize_estimate(const Json& cfg, const RunContext&) {
  Json c = cfg;
  const bool has_json = c.contains("table");
  const bool has_csv = c.contains("transfer_csv") || c.contains("baseline_csv");
  if (has_json == has_csv)
    fail(ErrorKind::InvalidArgument, "estimate needs either \"table\" or both \"transfer_csv\" and \"baseline_csv\"");
  if (has_csv && !(c.contains("transfer_csv") && c.contains("baseline_csv")))
    fail(ErrorKind::InvalidArgument, "the CSV variant needs both \"transfer_csv\" and \"baseline_csv\"");
  set_default(c, "clamp_lo", -1.0);
  set_default(c, "clamp_hi", 1.0);
  set_default(c, "project", false);
  set_default(c, "rho_o", 1.0);
  set_default(c, "n_random", kDefaultRandomOrders);
  return c;
}

Json cmd_estimate(const Json& cfg, const RunContext& ctx) {
  const TransferErrorTable table =
      cfg.contains("table")
          ? load_table(read_text(cfg.at("table").get<std::string>()))
          : load_table_csv(read_text(cfg.at("transfer_csv").get<std::string>()),
                           read_text(cfg.at("baseline_csv").get<std::string>()));
  const SimilarityMatrix s =
      estimate_similarity(table, get_or<double>(cfg, "clamp_lo", -1.0), get_or<double>(cfg, "clamp_hi", 1.0));
  write_text(ctx.out_dir / "similarity.csv", matrix_to_csv(s.rho));
  write_text(ctx.out_dir / "similarity.json", matrix_to_json(s.rho).dump(2) + "\n");
  write_text(ctx.out_dir / "similarity_flags.json", flags_to_json(s).dump(2) + "\n");

  const std::optional<CorrelationMatrix> valid = as_correlation(s);
  Json payload;
  payload["tasks"] = s.tasks();
  payload["similarity"] = matrix_to_json(s.rho)["entries"];
  payload["positive_semidefinite"] = valid.has_value();
  payload["any_clamped"] = s.any_clamped();
  payload["max_asymmetry"] = s.asymmetry.maxCoeff();
  payload["files"] = {"similarity.csv", "similarity.json", "similarity_flags.json"};

  Json recommended;
  if (s.tasks() >= 2) {
    recommended[kPeripheryToCore] = typicality_order(s.rho, Direction::PeripheryToCore).to_string();
    recommended[kMaxPath] = to_json(extremal_path(s.rho, PathObjective::Max));
  }
  payload["recommended"] = recommended;

  const bool project = get_or<bool>(cfg, "project", false);
  std::optional<CorrelationMatrix> c_in = valid;
  std::string basis = "estimate";
  if (!c_in && project) {
    c_in = project_to_correlation(s.rho);
    basis = "psd_projection";
  }
  if (c_in && s.tasks() >= 2) {
    const TaskSetSpec spec(*c_in, CorrelationMatrix::uniform(s.tasks(), get_or<double>(cfg, "rho_o", 1.0)));
    Json analytic = to_json(compare_rules(spec, get_or<int>(cfg, "n_random", kDefaultRandomOrders), ctx.seed));
    analytic["basis"] = basis;
    analytic["approximate"] = basis != "estimate";
    payload["analytic"] = analytic;
  } else {
    payload["analytic"] = Json();
    payload["analytic_unavailable"] = "estimated similarity is not positive semi-definite";
  }

  log(ctx) << "estimated " << s.tasks() << " tasks; psd=" << (valid ? "yes" : "no")
           << " clamped=" << (s.any_clamped() ? "yes" : "no") << "\n";
  if (recommended.contains(kPeripheryToCore)) {
    log(ctx) << "periphery_to_core " << recommended[kPeripheryToCore].get<std::string>() << "\n"
             << "max_path " << recommended[kMaxPath]["ordering"].get<std::string>() << "\n";
  }
  return payload;
}

}  // namespace taskorder::cli
