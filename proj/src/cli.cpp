// Copyright 2026 The jrsp4 Authors
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


#include "jrsp/cli.hpp"

#include <fstream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "jrsp/protocol_engine.hpp"
#include "jrsp/serialization.hpp"
#include "jrsp/verifier.hpp"

namespace jrsp {

namespace {

struct CliConfig {
  std::string protocol;
  std::string share1;
  std::string share2;
  std::uint64_t seed = 0;
  std::uint64_t shots = 1000;
  std::string format = "json";
  std::string out_path;
  bool strict = false;
  std::string provenance = "derived";
  unsigned threads = 1;
  int draws = 20;
};

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + cfg.out_path + "'");
  file << text;
}

RunConfig engine_config(const CliConfig& cfg, RunMode mode) {
  if (cfg.share1.empty() || cfg.share2.empty()) throw Error("--share1 and --share2 are required");
  return RunConfig{parse_protocol(cfg.protocol), parse_share(cfg.share1, 1), parse_share(cfg.share2, 2),
                   mode, cfg.seed, cfg.shots, parse_provenance(cfg.provenance), MeasurementOrder::Alice1First,
                   cfg.threads};
}

std::string render_report(const CliConfig& cfg, const ProtocolReport& report) {
  return cfg.format == "csv" ? report_csv(report) : report_json(report);
}

int cmd_run(const CliConfig& cfg, std::ostream& out) {
  emit(cfg, render_report(cfg, run_sampled(engine_config(cfg, RunMode::Sample))), out);
  return kExitOk;
}

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  emit(cfg, render_report(cfg, enumerate_outcomes(engine_config(cfg, RunMode::Enumerate))), out);
  return kExitOk;
}

int cmd_tables(const CliConfig& cfg, std::ostream& out) {
  if (cfg.format != "json") throw Error("tables output is JSON only");
  const ProtocolId protocol = parse_protocol(cfg.protocol);
  if (cfg.share1.empty() != cfg.share2.empty()) throw Error("give both shares or neither");
  std::mt19937_64 rng(cfg.seed);
  const ShareVector s1 = cfg.share1.empty() ? random_generic_share(rng, 1) : parse_share(cfg.share1, 1);
  const ShareVector s2 = cfg.share2.empty() ? random_generic_share(rng, 2) : parse_share(cfg.share2, 2);
  const CorrectionTable derived = regenerate_table(protocol, s1, s2, cfg.threads);
  const CorrectionTable transcribed = published_table(protocol);
  emit(cfg, tables_json(derived, transcribed), out);
  return cfg.strict && !diff_tables(derived, transcribed).empty() ? kExitDiscrepancy : kExitOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  if (cfg.format != "json") throw Error("verify output is JSON only");
  const AuditReport audit = full_audit(cfg.seed, cfg.draws, cfg.threads);
  emit(cfg, audit_json(audit), out);
  if (audit.has_unresolved()) return kExitDiscrepancy;
  return cfg.strict && !audit.discrepancies.empty() ? kExitDiscrepancy : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Joint remote preparation of four-dimensional qudit states: simulate, enumerate, audit"};
  app.name("jrsp");
  app.require_subcommand(1);

  const auto add_protocol = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--protocol", cfg.protocol, "p1, p2 or p3");
    if (required) opt->required();
  };
  const auto add_shares = [&](CLI::App* sub) {
    sub->add_option("--share1", cfg.share1, "first sender's four coefficients");
    sub->add_option("--share2", cfg.share2, "second sender's four coefficients");
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out_path, "write output here instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    sub->add_flag("--strict", cfg.strict, "exit 1 on any discrepancy");
    sub->add_option("--provenance", cfg.provenance, "correction table: derived or transcribed")
        ->check(CLI::IsMember({"derived", "transcribed"}));
  };

  CLI::App* run = app.add_subcommand("run", "sampled protocol run");
  add_protocol(run, true);
  add_shares(run);
  add_common(run);
  run->add_option("--shots", cfg.shots, "number of sampled shots");

  CLI::App* enumerate = app.add_subcommand("enumerate", "exact outcome distribution");
  add_protocol(enumerate, true);
  add_shares(enumerate);
  add_common(enumerate);

  CLI::App* tables = app.add_subcommand("tables", "derived and transcribed correction tables");
  add_protocol(tables, true);
  add_shares(tables);
  add_common(tables);

  CLI::App* verify = app.add_subcommand("verify", "full audit against the published text");
  add_common(verify);
  verify->add_option("--draws", cfg.draws, "random share pairs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(cfg, out);
    if (enumerate->parsed()) return cmd_enumerate(cfg, out);
    if (tables->parsed()) return cmd_tables(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace jrsp
