/*
 * Copyright 2026 The egb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// egb-sim: runs the two-operator energy purchase experiment and writes CSV
// reports. Flags override config-file values.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "egb/egb.hpp"

namespace {

constexpr const char* kUsage = R"(usage: egb-sim [options]

options:
  --config <path>         flat key=value config file; flags override it
  --seed <u64>            master seed (default 1)
  --bs-pairs <K>          co-located BS pairs per operator (default 50)
  --slots <N>             time slots per day (default 48)
  --mc-samples <M>        Monte-Carlo demand samples per slot (default 500)
  --realizations <R>      evaluated scenario realizations (default 50)
  --traffic <kind>        symmetric | asymmetric | file:<theta.csv>
  --prices <path>         price curve CSV; omitted = built-in curve
  --scheme <s>            noncoop | fullcoop | bargain | all (default all)
  --out <dir>             report directory (default out)
  --help                  show this message

Reports: per_slot_costs.csv, summary.csv, meta.csv under --out.
)";

struct Flag {
  const char* name;
  const char* key;
};

constexpr Flag kFlags[] = {
    {"--seed", "seed"},
    {"--bs-pairs", "bs-pairs"},
    {"--slots", "slots"},
    {"--mc-samples", "mc-samples"},
    {"--realizations", "realizations"},
    {"--traffic", "traffic"},
    {"--prices", "prices"},
    {"--scheme", "scheme"},
    {"--out", "out"},
};

egb::ExperimentConfig parse_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  egb::ExperimentConfig cfg;
  // config file first so that explicit flags win
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config requires a path");
      cfg = egb::load_config_file(args[i + 1]);
    }
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      ++i;
      continue;
    }
    bool matched = false;
    for (const Flag& f : kFlags) {
      if (a == f.name) {
        if (i + 1 >= args.size())
          throw std::invalid_argument(a + " requires a value");
        egb::set_config_option(cfg, f.key, args[++i]);
        matched = true;
        break;
      }
    }
    if (!matched) throw std::invalid_argument("unknown argument '" + a + "'");
  }
  return cfg;
}

void print_summary(const egb::CostReport& report) {
  std::printf("%-10s %-6s %14s %14s\n", "scheme", "mno", "total",
              "reduction_pct");
  for (const auto& [scheme, rep] : report.schemes) {
    if (rep.per_mno)
      for (int i = 0; i < 2; ++i)
        std::printf("%-10s %-6d %14.2f %14.2f\n", egb::scheme_name(scheme),
                    i + 1, rep.total_mno[static_cast<std::size_t>(i)],
                    rep.reduction_mno[static_cast<std::size_t>(i)]);
    std::printf("%-10s %-6s %14.2f %14.2f\n", egb::scheme_name(scheme),
                "total", rep.total, rep.reduction_total);
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--help" || std::string(argv[i]) == "-h") {
      std::fputs(kUsage, stdout);
      return 0;
    }
  try {
    const egb::ExperimentConfig cfg = parse_args(argc, argv);
    const egb::CostReport report = egb::run_experiment(cfg);
    egb::emit_report(report, cfg.out_dir);
    print_summary(report);
    std::printf("reports written to %s\n", cfg.out_dir.c_str());
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
