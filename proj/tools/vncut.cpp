// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Config precedence is defaults, then --config file,
// then explicit flags. Exit codes: 0 success (and cut-check pass), 1 bad
// input, 2 failed numerical check, 3 I/O failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vncut/vncut.hpp"

namespace {

struct CommandState {
  vncut::ExperimentConfig flags;
  std::string config_path;
  std::string out_path;
  std::string format_str;
  CLI::App* cmd = nullptr;
  bool has_range_flags = false;
};

void add_common_flags(CommandState& st) {
  CLI::App* cmd = st.cmd;
  cmd->add_option("--config", st.config_path, "JSON config file; flags override it");
  cmd->add_option("--out", st.out_path, "output file (default: stdout)");
  cmd->add_option("--format", st.format_str, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--j", st.flags.j, "spin magnitude (half-integer)");
  cmd->add_option("--m", st.flags.m, "spin projection label for the phase chain");
  cmd->add_option("--chi", st.flags.chi, "phase coupling angle");
  cmd->add_option("--r", st.flags.r, "coherent amplitude of the phase apparatus");
  cmd->add_option("--mu0", st.flags.mu0, "rest phase of the apparatus");
  cmd->add_option("--trunc", st.flags.trunc, "number-basis truncation (0: automatic)");
  cmd->add_option("--grid-n", st.flags.grid_n, "pointer grid nodes on [-12, 12]");
  cmd->add_option("--theta-nodes", st.flags.theta_nodes, "phase quadrature nodes (0: automatic)");
  cmd->add_option("--sigma-phi", st.flags.sigma_phi, "width of the first pointer");
  cmd->add_option("--sigma-Phi", st.flags.sigma_Phi, "width of the second pointer");
}

void add_range_flags(CommandState& st) {
  CLI::App* cmd = st.cmd;
  cmd->add_option("--r-lo", st.flags.r_lo, "first amplitude of the sweep");
  cmd->add_option("--r-hi", st.flags.r_hi, "last amplitude of the sweep");
  cmd->add_option("--r-step", st.flags.r_step, "sweep step");
  st.has_range_flags = true;
}

vncut::ExperimentConfig resolve_config(const CommandState& st) {
  vncut::ExperimentConfig cfg;
  if (!st.config_path.empty()) {
    std::ifstream in(st.config_path);
    if (!in) throw vncut::io_error("cannot open config file: " + st.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw vncut::validation_error("config file is not valid JSON: " + std::string(e.what()));
    }
    vncut::apply_config_json(cfg, doc);
  }
  const CLI::App& cmd = *st.cmd;
  if (cmd.count("--j")) cfg.j = st.flags.j;
  if (cmd.count("--m")) cfg.m = st.flags.m;
  if (cmd.count("--chi")) cfg.chi = st.flags.chi;
  if (cmd.count("--r")) cfg.r = st.flags.r;
  if (cmd.count("--mu0")) cfg.mu0 = st.flags.mu0;
  if (cmd.count("--trunc")) cfg.trunc = st.flags.trunc;
  if (cmd.count("--grid-n")) cfg.grid_n = st.flags.grid_n;
  if (cmd.count("--theta-nodes")) cfg.theta_nodes = st.flags.theta_nodes;
  if (cmd.count("--sigma-phi")) cfg.sigma_phi = st.flags.sigma_phi;
  if (cmd.count("--sigma-Phi")) cfg.sigma_Phi = st.flags.sigma_Phi;
  if (st.has_range_flags) {
    if (cmd.count("--r-lo")) cfg.r_lo = st.flags.r_lo;
    if (cmd.count("--r-hi")) cfg.r_hi = st.flags.r_hi;
    if (cmd.count("--r-step")) cfg.r_step = st.flags.r_step;
  }
  return cfg;
}

// Render into a buffer first so a failed run cannot leave a partial file.
void deliver(const CommandState& st, const std::string& content) {
  if (st.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(st.out_path, std::ios::binary);
  if (!out) throw vncut::io_error("cannot open output file: " + st.out_path);
  out << content;
  out.flush();
  if (!out) throw vncut::io_error("failed writing output file: " + st.out_path);
}

vncut::OutputFormat pick_format(const CommandState& st, vncut::OutputFormat fallback) {
  return st.format_str.empty() ? fallback : vncut::parse_format(st.format_str);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage measurement chain experiments"};
  app.require_subcommand(1);
  int rc = 0;

  CommandState fig, cut, phase, dist;

  fig.cmd = app.add_subcommand("figure1", "damping factor curves over an amplitude sweep");
  add_common_flags(fig);
  add_range_flags(fig);
  fig.cmd->callback([&] {
    vncut::ExperimentConfig cfg = resolve_config(fig);
    std::ostringstream buf;
    vncut::run_figure1(cfg, pick_format(fig, vncut::OutputFormat::csv), buf);
    deliver(fig, buf.str());
  });

  cut.cmd = app.add_subcommand("cut-check", "compare the two cut placements of the linear chain");
  add_common_flags(cut);
  cut.cmd->callback([&] {
    vncut::ExperimentConfig cfg = resolve_config(cut);
    std::ostringstream buf;
    rc = vncut::run_cut_check(cfg, pick_format(cut, vncut::OutputFormat::json), buf);
    deliver(cut, buf.str());
  });

  phase.cmd = app.add_subcommand("phase-compare", "mean readout shifts of the phase chain");
  add_common_flags(phase);
  phase.cmd->callback([&] {
    vncut::ExperimentConfig cfg = resolve_config(phase);
    std::ostringstream buf;
    vncut::run_phase_compare(cfg, pick_format(phase, vncut::OutputFormat::json), buf);
    deliver(phase, buf.str());
  });

  dist.cmd = app.add_subcommand("distributions", "sampled readout densities of every pipeline");
  add_common_flags(dist);
  dist.cmd->callback([&] {
    vncut::ExperimentConfig cfg = resolve_config(dist);
    std::ostringstream buf;
    vncut::run_distributions(cfg, pick_format(dist, vncut::OutputFormat::csv), buf);
    deliver(dist, buf.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const vncut::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const vncut::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vncut::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
