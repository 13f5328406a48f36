// Copyright 2026 The tiedecay Authors
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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "tiedecay/tiedecay.h"

namespace {

int report(td_status status) {
  std::fprintf(stderr, "error: %s: %s\n", td_status_name(status), td_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion dynamics and spectral gaps on tie-decay networks"};
  app.set_version_flag("--version", std::string(td_version()));

  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  auto add = [&](const std::string& key, const std::string& help) {
    options[key] = app.add_option("--" + key, values[key], help);
  };

  app.add_option("--config", config_path, "flat key=value file; flags override it");
  add("input", "event list, one `t i j` per line");
  add("mode",
      "ensemble | alpha-sweep | time-series | aggregate-compare | stats | randomize | "
      "aggregate-weights | trajectory | weights");
  add("alpha", "decay rate(s), comma separated");
  add("alpha-grid", "log-spaced grid LO:HI:POINTS");
  add("method", "is | sts | rt | res | all (comma separated list allowed)");
  add("ensemble", "randomized members per method (default 50)");
  add("seed", "base seed for randomizations");
  add("min-edges", "drop nodes with fewer distinct edges, iteratively");
  add("out", "output CSV path (stdout when omitted)");
  add("exp-method", "pade | spectral | auto");
  add("threads", "worker threads (0 = all cores)");
  add("at", "query time for --mode weights");
  add("x0", "initial opinions for --mode trajectory, comma separated");
  bool directed = false;
  auto* directed_flag = app.add_flag("--directed", directed, "treat contacts as directed");

  CLI11_PARSE(app, argc, argv);

  td_config* raw = nullptr;
  if (td_status s = td_config_create(&raw); s != TD_OK) return report(s);
  std::unique_ptr<td_config, decltype(&td_config_free)> config(raw, td_config_free);

  if (!config_path.empty()) {
    if (td_status s = td_config_load_file(config.get(), config_path.c_str()); s != TD_OK)
      return report(s);
  }
  for (const auto& [key, option] : options) {
    if (option->count() == 0) continue;
    if (td_status s = td_config_set(config.get(), key.c_str(), values[key].c_str()); s != TD_OK)
      return report(s);
  }
  if (directed_flag->count() > 0) {
    if (td_status s = td_config_set(config.get(), "directed", directed ? "true" : "false"); s != TD_OK)
      return report(s);
  }

  if (td_status s = td_run(config.get()); s != TD_OK) return report(s);
  return 0;
}
