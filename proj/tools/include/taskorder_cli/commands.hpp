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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "taskorder_cli/config.hpp"

namespace taskorder::cli {

/// Every command takes one JSON config document, fills in its defaults,
/// writes CSV payloads under ctx.out_dir and returns a JSON payload. The
/// normalize_* functions return the completed config that gets echoed.
Json normalize_eval(const Json& cfg, const RunContext& ctx);
Json cmd_eval(const Json& cfg, const RunContext& ctx);

Json normalize_phase(const Json& cfg, const RunContext& ctx);
Json cmd_phase(const Json& cfg, const RunContext& ctx);

Json normalize_rules(const Json& cfg, const RunContext& ctx);
Json cmd_rules(const Json& cfg, const RunContext& ctx);

Json normalize_simulate(const Json& cfg, const RunContext& ctx);
Json cmd_simulate(const Json& cfg, const RunContext& ctx);

Json normalize_estimate(const Json& cfg, const RunContext& ctx);
Json cmd_estimate(const Json& cfg, const RunContext& ctx);

const std::vector<std::string>& command_names();

/// Normalizes, runs and writes config.json and report.json into
/// ctx.out_dir. Returns the report.
Json run_command(const std::string& name, const Json& cfg, const RunContext& ctx);

/// Process entry point. Returns 0 on success and 1 when any library error
/// surfaces; usage errors follow CLI11's exit codes.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace taskorder::cli
