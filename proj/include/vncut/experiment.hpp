// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration and runners behind the command-line tool. Output
// is deterministic: fixed column orders, fixed key orders, %.17g floats, no
// timestamps, so byte-identical reruns are expected.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vncut/convolve.hpp"
#include "vncut/errors.hpp"
#include "vncut/grid.hpp"
#include "vncut/hilbert.hpp"
#include "vncut/linear_chain.hpp"
#include "vncut/phase_chain.hpp"
#include "vncut/semiclassical.hpp"
#include "vncut/version.hpp"

namespace vncut {

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw validation_error("format must be csv or json");
}

struct ExperimentConfig {
  double j = 0.5;
  std::vector<std::complex<double>> amps;  // empty: uniform superposition
  int m = 1;
  double chi = std::acos(-1.0) / 6.0;
  double r = 2.0;
  double r_lo = 0.0;
  double r_hi = 3.0;
  double r_step = 0.05;
  double mu0 = 0.5 * std::acos(-1.0);
  double sigma_phi = 0.1;
  double sigma_Phi = 0.1;
  int trunc = 0;        // 0: truncation heuristic
  int grid_n = 2017;    // pointer grid on [-12, 12]; step 1/84 divides all m gaps
  int theta_nodes = 0;  // 0: node-count heuristic
};

inline constexpr double kPointerGridHalfWidth = 12.0;

namespace detail {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline double json_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw validation_error("config: " + key + " must be a number");
  return v.get<double>();
}

inline int json_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw validation_error("config: " + key + " must be an integer");
  return v.get<int>();
}

inline std::vector<std::complex<double>> json_amps(const nlohmann::json& v) {
  if (!v.is_array()) throw validation_error("config: amps must be an array");
  std::vector<std::complex<double>> out;
  for (const auto& e : v) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw validation_error("config: each amplitude must be a number or an [re, im] pair");
    }
  }
  return out;
}

}  // namespace detail

// Merge a JSON config object into cfg. Unknown keys are rejected so typos
// cannot silently fall back to defaults.
inline void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw validation_error("config: top level must be an object");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    const nlohmann::json& v = item.value();
    if (key == "j") cfg.j = detail::json_number(v, key);
    else if (key == "amps") cfg.amps = detail::json_amps(v);
    else if (key == "m") cfg.m = detail::json_int(v, key);
    else if (key == "chi") cfg.chi = detail::json_number(v, key);
    else if (key == "r") cfg.r = detail::json_number(v, key);
    else if (key == "r_lo") cfg.r_lo = detail::json_number(v, key);
    else if (key == "r_hi") cfg.r_hi = detail::json_number(v, key);
    else if (key == "r_step") cfg.r_step = detail::json_number(v, key);
    else if (key == "mu0") cfg.mu0 = detail::json_number(v, key);
    else if (key == "sigma_phi") cfg.sigma_phi = detail::json_number(v, key);
    else if (key == "sigma_Phi") cfg.sigma_Phi = detail::json_number(v, key);
    else if (key == "trunc") cfg.trunc = detail::json_int(v, key);
    else if (key == "grid_n") cfg.grid_n = detail::json_int(v, key);
    else if (key == "theta_nodes") cfg.theta_nodes = detail::json_int(v, key);
    else throw validation_error("config: unknown key '" + key + "'");
  }
}

inline SpinState spin_from_config(const ExperimentConfig& cfg) {
  int dim = static_cast<int>(std::lround(2.0 * cfg.j)) + 1;
  if (cfg.amps.empty()) {
    double a = 1.0 / std::sqrt(static_cast<double>(dim));
    return SpinState(cfg.j, std::vector<std::complex<double>>(
                                static_cast<std::size_t>(dim), {a, 0.0}));
  }
  return SpinState(cfg.j, cfg.amps);
}

inline Grid1D pointer_grid(const ExperimentConfig& cfg) {
  if (cfg.grid_n < 33) throw validation_error("grid_n must be at least 33");
  return Grid1D(-kPointerGridHalfWidth, kPointerGridHalfWidth, cfg.grid_n);
}

namespace detail {

inline nlohmann::ordered_json config_echo(const ExperimentConfig& cfg) {
  nlohmann::ordered_json e;
  e["j"] = cfg.j;
  if (!cfg.amps.empty()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& a : cfg.amps) arr.push_back({a.real(), a.imag()});
    e["amps"] = arr;
  }
  e["m"] = cfg.m;
  e["chi"] = cfg.chi;
  e["r"] = cfg.r;
  e["r_lo"] = cfg.r_lo;
  e["r_hi"] = cfg.r_hi;
  e["r_step"] = cfg.r_step;
  e["mu0"] = cfg.mu0;
  e["sigma_phi"] = cfg.sigma_phi;
  e["sigma_Phi"] = cfg.sigma_Phi;
  e["trunc"] = cfg.trunc;
  e["grid_n"] = cfg.grid_n;
  e["theta_nodes"] = cfg.theta_nodes;
  return e;
}

inline void write_csv_preamble(std::ostream& os, const std::string& experiment,
                               const ExperimentConfig& cfg) {
  os << "# vncut " << kVersionString << "\n";
  os << "# experiment: " << experiment << "\n";
  const nlohmann::ordered_json echo = config_echo(cfg);
  for (const auto& item : echo.items()) {
    os << "# " << item.key() << ": " << item.value().dump() << "\n";
  }
}

inline nlohmann::ordered_json report_skeleton(const std::string& experiment,
                                              const ExperimentConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersionString;
  doc["experiment"] = experiment;
  doc["config"] = config_echo(cfg);
  return doc;
}

// Scalar report as CSV: the config preamble plus key,value rows.
inline void write_scalar_csv(std::ostream& os, const std::string& experiment,
                             const ExperimentConfig& cfg,
                             const std::vector<std::pair<std::string, std::string>>& rows) {
  write_csv_preamble(os, experiment, cfg);
  os << "key,value\n";
  for (const auto& kv : rows) os << kv.first << "," << kv.second << "\n";
}

}  // namespace detail

// Both damping factors on an r lattice: the curve pair the whole comparison
// is about.
inline void run_figure1(const ExperimentConfig& cfg, OutputFormat format, std::ostream& os) {
  if (!std::isfinite(cfg.r_lo) || !std::isfinite(cfg.r_hi) || !std::isfinite(cfg.r_step)) {
    throw validation_error("figure1: r range must be finite");
  }
  if (cfg.r_lo < 0.0 || !(cfg.r_step > 0.0) || cfg.r_hi < cfg.r_lo) {
    throw validation_error("figure1: need 0 <= r_lo <= r_hi and r_step > 0");
  }
  int rows = static_cast<int>(std::floor((cfg.r_hi - cfg.r_lo) / cfg.r_step + 1e-6)) + 1;
  std::vector<double> rs(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) rs[static_cast<std::size_t>(i)] = cfg.r_lo + i * cfg.r_step;

  if (format == OutputFormat::csv) {
    detail::write_csv_preamble(os, "figure1", cfg);
    os << "r,quantum_factor,semiclassical_factor\n";
    for (double r : rs) {
      os << detail::format_double(r) << "," << detail::format_double(s_factor(r)) << ","
         << detail::format_double(semiclassical_factor(r)) << "\n";
    }
    return;
  }
  nlohmann::ordered_json doc = detail::report_skeleton("figure1", cfg);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (double r : rs) {
    nlohmann::ordered_json row;
    row["r"] = r;
    row["quantum_factor"] = s_factor(r);
    row["semiclassical_factor"] = semiclassical_factor(r);
    arr.push_back(row);
  }
  doc["rows"] = arr;
  os << doc.dump(2) << "\n";
}

// Linear chain, both cut placements. Returns 0 when the two readouts agree
// within the step-dependent threshold, 2 otherwise.
inline int run_cut_check(const ExperimentConfig& cfg, OutputFormat format, std::ostream& os) {
  Grid1D grid = pointer_grid(cfg);
  double step = grid.step();
  if (cfg.sigma_phi < 2.0 * step || cfg.sigma_Phi < 2.0 * step) {
    throw validation_error("cut-check: pointer widths must be at least twice the grid step");
  }
  SpinState spin = spin_from_config(cfg);
  PointerState phi = PointerState::gaussian(grid, 0.0, cfg.sigma_phi);
  PointerState Phi = PointerState::gaussian(grid, 0.0, cfg.sigma_Phi);

  ChainResult quantum = quantum_chain(spin, phi, Phi);
  ChainResult classical =
      classical_cut_chain(first_pointer_distribution(spin, phi), Phi.density());

  double sup = 0.0;
  for (int i = 0; i < quantum.distribution.grid().n(); ++i) {
    sup = std::max(sup, std::abs(quantum.distribution[i] - classical.distribution[i]));
  }
  double mean_dev = std::abs(quantum.mean - classical.mean);
  double threshold = detail::cut_agreement_threshold(step);
  bool pass = sup <= threshold && mean_dev <= threshold;

  if (format == OutputFormat::json) {
    nlohmann::ordered_json doc = detail::report_skeleton("cut-check", cfg);
    doc["grid"] = {{"lo", grid.lo()}, {"hi", grid.hi()}, {"n", grid.n()}, {"step", step}};
    doc["sup_norm_deviation"] = sup;
    doc["mean_deviation"] = mean_dev;
    doc["mean_quantum"] = quantum.mean;
    doc["mean_classical_cut"] = classical.mean;
    doc["threshold"] = threshold;
    doc["pass"] = pass;
    os << doc.dump(2) << "\n";
  } else {
    detail::write_scalar_csv(
        os, "cut-check", cfg,
        {{"sup_norm_deviation", detail::format_double(sup)},
         {"mean_deviation", detail::format_double(mean_dev)},
         {"mean_quantum", detail::format_double(quantum.mean)},
         {"mean_classical_cut", detail::format_double(classical.mean)},
         {"threshold", detail::format_double(threshold)},
         {"pass", pass ? "true" : "false"}});
  }
  return pass ? 0 : 2;
}

// Scalar mean shifts of the phase readout: elementary record, quantum, and
// semiclassical by both routes.
inline void run_phase_compare(const ExperimentConfig& cfg, OutputFormat format,
                              std::ostream& os) {
  PhaseChainConfig pc{cfg.m, cfg.chi, cfg.r, cfg.mu0, cfg.trunc, cfg.theta_nodes};
  detail::validate_phase_config(pc);
  double mu = derive_mu(cfg.mu0, cfg.m, cfg.chi);
  double elementary = std::cos(mu);
  double quantum = mean_shift_quantum(pc);
  double semi_closed = mean_shift_semiclassical_closed(cfg.r, mu);
  double semi_quad = mean_shift_semiclassical_quadrature(cfg.r, mu);

  if (format == OutputFormat::json) {
    nlohmann::ordered_json doc = detail::report_skeleton("phase-compare", cfg);
    doc["mu"] = mu;
    doc["resolved_truncation"] = pc.resolved_truncation();
    doc["elementary_shift"] = elementary;
    doc["quantum_shift"] = quantum;
    doc["semiclassical_shift_closed"] = semi_closed;
    doc["semiclassical_shift_quadrature"] = semi_quad;
    doc["quantum_damping"] = s_factor(cfg.r);
    doc["semiclassical_damping"] = semiclassical_factor(cfg.r);
    os << doc.dump(2) << "\n";
  } else {
    detail::write_scalar_csv(
        os, "phase-compare", cfg,
        {{"mu", detail::format_double(mu)},
         {"resolved_truncation", std::to_string(pc.resolved_truncation())},
         {"elementary_shift", detail::format_double(elementary)},
         {"quantum_shift", detail::format_double(quantum)},
         {"semiclassical_shift_closed", detail::format_double(semi_closed)},
         {"semiclassical_shift_quadrature", detail::format_double(semi_quad)},
         {"quantum_damping", detail::format_double(s_factor(cfg.r))},
         {"semiclassical_damping", detail::format_double(semiclassical_factor(cfg.r))}});
  }
}

// Sampled readout densities of all pipelines on one shared grid: the linear
// chain through both cut placements, and the phase chain quantum and
// semiclassical. The phase densities live on the base pointer grid and are
// embedded into the wider linear-readout grid by exact index alignment,
// which needs an odd node count.
inline void run_distributions(const ExperimentConfig& cfg, OutputFormat format,
                              std::ostream& os) {
  if (cfg.grid_n % 2 == 0) {
    throw validation_error("distributions: grid_n must be odd so the grids align");
  }
  Grid1D grid = pointer_grid(cfg);
  double step = grid.step();
  if (cfg.sigma_phi < 2.0 * step || cfg.sigma_Phi < 2.0 * step) {
    throw validation_error("distributions: pointer widths must be at least twice the grid step");
  }
  SpinState spin = spin_from_config(cfg);
  PointerState phi = PointerState::gaussian(grid, 0.0, cfg.sigma_phi);
  PointerState Phi = PointerState::gaussian(grid, 0.0, cfg.sigma_Phi);

  ChainResult linear_q = quantum_chain(spin, phi, Phi);
  ChainResult linear_c =
      classical_cut_chain(first_pointer_distribution(spin, phi), Phi.density());

  PhaseChainConfig pc{cfg.m, cfg.chi, cfg.r, cfg.mu0, cfg.trunc, cfg.theta_nodes};
  ChainResult phase_q = q_distribution(pc, Phi);
  double mu = derive_mu(cfg.mu0, cfg.m, cfg.chi);
  ChainResult phase_s = semiclassical_q_distribution(cfg.r, mu, Phi);

  const Grid1D& wide = linear_q.distribution.grid();
  int offset = (grid.n() - 1) / 2;
  int nw = wide.n();
  auto embedded = [&](const GridDensity1D& d, int i) {
    int k = i - offset;
    if (k < 0 || k >= d.grid().n()) return 0.0;
    return d[k];
  };

  if (format == OutputFormat::csv) {
    detail::write_csv_preamble(os, "distributions", cfg);
    os << "Q,linear_quantum,linear_classical_cut,phase_quantum,phase_semiclassical\n";
    for (int i = 0; i < nw; ++i) {
      os << detail::format_double(wide.at(i)) << ","
         << detail::format_double(linear_q.distribution[i]) << ","
         << detail::format_double(linear_c.distribution[i]) << ","
         << detail::format_double(embedded(phase_q.distribution, i)) << ","
         << detail::format_double(embedded(phase_s.distribution, i)) << "\n";
    }
    return;
  }
  nlohmann::ordered_json doc = detail::report_skeleton("distributions", cfg);
  doc["grid"] = {{"lo", wide.lo()}, {"hi", wide.hi()}, {"n", nw}};
  nlohmann::ordered_json cols;
  nlohmann::ordered_json Q = nlohmann::ordered_json::array();
  nlohmann::ordered_json lq = nlohmann::ordered_json::array();
  nlohmann::ordered_json lc = nlohmann::ordered_json::array();
  nlohmann::ordered_json pq = nlohmann::ordered_json::array();
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (int i = 0; i < nw; ++i) {
    Q.push_back(wide.at(i));
    lq.push_back(linear_q.distribution[i]);
    lc.push_back(linear_c.distribution[i]);
    pq.push_back(embedded(phase_q.distribution, i));
    ps.push_back(embedded(phase_s.distribution, i));
  }
  cols["Q"] = Q;
  cols["linear_quantum"] = lq;
  cols["linear_classical_cut"] = lc;
  cols["phase_quantum"] = pq;
  cols["phase_semiclassical"] = ps;
  doc["columns"] = cols;
  os << doc.dump(2) << "\n";
}

}  // namespace vncut
