// SPDX-License-Identifier: Apache-2.0
//
// afrelay - robust MMSE transceiver design for dual-hop AF MIMO relay links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Batch front end. Exit codes: 0 success, 1 usage/config error,
// 2 design did not converge, 3 validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "afrelay/channel.hpp"
#include "afrelay/config.hpp"
#include "afrelay/design.hpp"
#include "afrelay/simulate.hpp"
#include "afrelay/validate.hpp"

namespace {

using namespace afrelay;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

ChannelPreset channels_from_config(const KvConfig& cfg) {
  const std::string preset = cfg.get_string("preset", "");
  if (!preset.empty()) return channel_preset(preset);
  return {read_matrix_file(cfg.get_string("hbar_sr_file")),
          read_matrix_file(cfg.get_string("hbar_rd_file"))};
}

design::DesignConfig design_config_from(const KvConfig& cfg) {
  design::DesignConfig dc;
  dc.tol_mse = cfg.get_double("tol_mse", dc.tol_mse);
  dc.max_iters = cfg.get_int("max_iters", dc.max_iters);
  dc.tol_power = cfg.get_double("tol_power", dc.tol_power);
  dc.tol_lambda = cfg.get_double("tol_lambda", dc.tol_lambda);
  return dc;
}

int cmd_design(const CommonArgs& args) {
  const KvConfig cfg = KvConfig::parse_file(args.config_path);
  const ChannelPreset chans = channels_from_config(cfg);
  const CorrelationParams corr{cfg.get_double("alpha", 0.5),
                               cfg.get_double("beta", 0.4),
                               cfg.get_double("sigma_e2", 0.0)};
  const PowerBudget budget{cfg.get_double("ps", 4.0), cfg.get_double("pr", 4.0)};
  const ChannelModel model = build_model(
      chans.hbar_sr, chans.hbar_rd, corr, cfg.get_double("snr_sr_db", 30.0),
      cfg.get_double("snr_rd_db", 20.0), budget.ps, budget.pr,
      cfg.get_int("n_streams", 4));

  const design::DesignResult res =
      design::alternate(model, budget, design_config_from(cfg));

  const std::filesystem::path dir =
      args.out_path.empty() ? std::filesystem::path(".")
                            : std::filesystem::path(args.out_path);
  std::filesystem::create_directories(dir);
  const auto dump = [&](const char* name, const CMatrix& m) {
    std::ofstream out(dir / name);
    write_matrix(out, m);
  };
  dump("P.txt", res.t.p);
  dump("F.txt", res.t.f);
  dump("G.txt", res.t.g);
  {
    std::ofstream out(dir / "trace.csv");
    design::write_trace_csv(out, res.trace);
  }
  if (!args.quiet) {
    std::printf("%s after %zu iterations, mse = %.9g, outputs in %s\n",
                res.converged ? "converged" : "max iterations reached",
                res.trace.size() - 1, res.final_mse, dir.string().c_str());
  }
  return res.converged ? 0 : 2;
}

int cmd_sweep(const CommonArgs& args) {
  const KvConfig cfg = KvConfig::parse_file(args.config_path);
  simulate::SweepConfig sc;
  sc.preset = cfg.get_string("preset", "");
  if (sc.preset.empty()) {
    sc.hbar_sr = read_matrix_file(cfg.get_string("hbar_sr_file"));
    sc.hbar_rd = read_matrix_file(cfg.get_string("hbar_rd_file"));
  }
  sc.snr_rd_db = cfg.get_double_list("snr_rd_db");
  sc.sigma_e2 = cfg.get_double_list("sigma_e2");
  sc.snr_sr_db = cfg.get_double("snr_sr_db", sc.snr_sr_db);
  sc.alpha = cfg.get_double("alpha", sc.alpha);
  sc.beta = cfg.get_double("beta", sc.beta);
  sc.n_symbols = cfg.get_u64("n_symbols", sc.n_symbols);
  sc.n_realizations = cfg.get_u64("n_realizations", sc.n_realizations);
  sc.seed = cfg.get_u64("seed", sc.seed);
  sc.budget = {cfg.get_double("ps", 4.0), cfg.get_double("pr", 4.0)};
  sc.n_streams = cfg.get_int("n_streams", 4);
  sc.design = design_config_from(cfg);
  if (args.seed) sc.seed = *args.seed;

  const std::vector<simulate::BerPoint> points = simulate::sweep(sc);
  if (args.out_path.empty()) {
    simulate::write_ber_csv(std::cout, points);
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw std::invalid_argument("cannot open output: " + args.out_path);
    simulate::write_ber_csv(out, points);
    if (!args.quiet) {
      std::printf("%zu rows written to %s\n", points.size(),
                  args.out_path.c_str());
    }
  }
  return 0;
}

int report_checks(const std::vector<validate::CheckResult>& checks,
                  bool quiet) {
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    if (!quiet || !c.pass) {
      std::printf("%-34s %s  %s\n", c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.detail.c_str());
    }
  }
  if (!quiet) {
    std::printf("%zu checks, %s\n", checks.size(),
                all_pass ? "all passed" : "FAILURES present");
  }
  return all_pass ? 0 : 3;
}

int cmd_validate(const CommonArgs& args) {
  validate::ValidateOptions opts;
  if (!args.config_path.empty()) {
    const KvConfig cfg = KvConfig::parse_file(args.config_path);
    opts.seed = cfg.get_u64("seed", opts.seed);
    opts.pi_p_samples = cfg.get_u64("pi_p_samples", opts.pi_p_samples);
    opts.mse_trials = cfg.get_u64("mse_trials", opts.mse_trials);
    opts.mse_transceivers = cfg.get_int("mse_transceivers", opts.mse_transceivers);
    opts.gradient_checks = cfg.get_int("gradient_checks", opts.gradient_checks);
    opts.f_step_instances = cfg.get_int("f_step_instances", opts.f_step_instances);
    opts.p_step_instances = cfg.get_int("p_step_instances", opts.p_step_instances);
    opts.feasible_samples = cfg.get_int("feasible_samples", opts.feasible_samples);
    opts.lift_checks = cfg.get_int("lift_checks", opts.lift_checks);
  }
  if (args.seed) opts.seed = *args.seed;
  return report_checks(validate::run_validation(opts), args.quiet);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust MMSE transceiver design for dual-hop AF MIMO relays"};
  app.require_subcommand(1);

  CommonArgs args;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* copt = sub->add_option("--config", args.config_path,
                                 "key = value configuration file");
    if (config_required) copt->required();
    sub->add_option("--out", args.out_path, "output path");
    sub->add_option("--seed", seed_value, "seed override")
        ->each([&](const std::string&) { args.seed = seed_value; });
    sub->add_flag("--quiet", args.quiet, "suppress progress output");
  };

  CLI::App* design_cmd =
      app.add_subcommand("design", "run one transceiver design");
  add_common(design_cmd, true);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a BER sweep and write CSV");
  add_common(sweep_cmd, true);
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "run the self-check oracle suite");
  add_common(validate_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (design_cmd->parsed()) return cmd_design(args);
    if (sweep_cmd->parsed()) return cmd_sweep(args);
    if (validate_cmd->parsed()) return cmd_validate(args);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
