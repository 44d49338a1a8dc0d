// hoinet command-line tool: simulate star/VAR networks, analyze series or
// models into higher-order interaction networks, and run the star-network
// reproduction sweep.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hoinet/netout.hpp"
#include "hoinet/parallel.hpp"
#include "hoinet/rng.hpp"
#include "hoinet/starsweep.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hoinet::IoError("cannot write " + path.string());
  out << content;
}

// Options not set on the command line fall back to values from --config.
void apply_config_file(CLI::App* cmd, const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw hoinet::IoError("cannot open config file: " + config_path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw hoinet::IoError(std::string("config file: ") + e.what());
  }
  for (auto& [key, value] : cfg.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw hoinet::InvalidArgument("config file: unknown option '" + key + "'");
    if (opt->count() > 0) continue;  // flags override file values
    std::stringstream ss;
    if (value.is_string()) {
      ss << value.get<std::string>();
    } else if (value.is_boolean()) {
      ss << (value.get<bool>() ? "true" : "false");
    } else {
      ss << value.dump();
    }
    opt->add_result(ss.str());
    opt->run_callback();
  }
}

struct SimulateOptions {
  std::string star;
  std::string model_path;
  double coupling = 0.3;
  double a31 = 0.0;
  int samples = 1000;
  int burn_in = 1000;
  std::uint64_t seed = 0;
  int replicates = 1;
  std::string out;
  std::string config_path;
};

struct AnalyzeOptions {
  std::string input_path;
  std::string model_path;
  int order = 0;  // 0: use criterion selection
  std::string select = "bic";
  int max_order = 10;
  int q = 20;
  double alpha = 0.05;
  int replicates = 100;
  std::uint64_t seed = 0;
  int burn_in = 1000;
  bool signif = false;
  bool zscore_flag = true;
  std::string outdir;
  std::vector<std::string> formats{"json", "csv"};
  std::string config_path;
};

struct ReproOptions {
  std::string outdir;
  int grid_steps = 11;
  std::vector<int> lengths{250, 500, 1000};
  int runs = 100;
  std::uint64_t seed = 42;
  double coupling = 0.3;
  int q = 20;
  double alpha = 0.05;
  int replicates = 100;
  int burn_in = 1000;
  std::string config_path;
};

ordered_json resolved_simulate_config(const SimulateOptions& o) {
  ordered_json j;
  j["command"] = "simulate";
  j["star"] = o.star;
  j["model"] = o.model_path;
  j["coupling"] = o.coupling;
  j["a31"] = o.a31;
  j["samples"] = o.samples;
  j["burn-in"] = o.burn_in;
  j["seed"] = o.seed;
  j["replicates"] = o.replicates;
  j["out"] = o.out;
  return j;
}

int cmd_simulate(const SimulateOptions& o) {
  if (o.star.empty() == o.model_path.empty()) {
    std::cerr << "simulate: exactly one of --star / --model is required\n";
    return kExitUsage;
  }
  hoinet::VarModel model;
  if (!o.star.empty()) {
    model = hoinet::build_star_model(
        {hoinet::parse_star_variant(o.star), o.coupling, o.a31});
  } else {
    model = hoinet::read_model_json(o.model_path);
  }

  std::vector<std::string> labels;
  for (int i = 0; i < model.n_nodes; ++i) labels.push_back("X" + std::to_string(i + 1));

  const fs::path out_path(o.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  if (o.replicates == 1) {
    hoinet::TimeSeries series = hoinet::simulate(model, o.samples, o.burn_in, o.seed);
    series.labels = labels;
    hoinet::write_series_csv(o.out, series);
  } else {
    // replicate k draws from the derived stream (seed, k)
    const std::string stem = (out_path.parent_path() / out_path.stem()).string();
    const std::string ext = out_path.extension().string();
    for (int k = 0; k < o.replicates; ++k) {
      hoinet::TimeSeries series =
          hoinet::simulate(model, o.samples, o.burn_in, hoinet::derive_seed(o.seed, k));
      series.labels = labels;
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "_r%03d", k);
      hoinet::write_series_csv(stem + suffix + ext, series);
    }
  }
  write_text(o.out + ".config.json", resolved_simulate_config(o).dump(2) + "\n");
  return 0;
}

ordered_json resolved_analyze_config(const AnalyzeOptions& o, int resolved_order) {
  ordered_json j;
  j["command"] = "analyze";
  j["input"] = o.input_path;
  j["model"] = o.model_path;
  j["order"] = o.order;
  j["resolved-order"] = resolved_order;
  j["select"] = o.select;
  j["max-order"] = o.max_order;
  j["q"] = o.q;
  j["alpha"] = o.alpha;
  j["replicates"] = o.replicates;
  j["seed"] = o.seed;
  j["burn-in"] = o.burn_in;
  j["signif"] = o.signif;
  j["zscore"] = o.zscore_flag;
  j["outdir"] = o.outdir;
  j["formats"] = o.formats;
  return j;
}

void write_network_files(const fs::path& dir, const std::string& stem,
                         const hoinet::HoiNetwork& net, const std::vector<std::string>& formats) {
  for (const std::string& format : formats) {
    if (format == "json") {
      write_text(dir / (stem + ".json"), hoinet::to_json(net));
    } else if (format == "csv") {
      const hoinet::CsvTables tables = hoinet::to_csv_tables(net);
      write_text(dir / (stem + "_nodes.csv"), tables.nodes);
      write_text(dir / (stem + "_links.csv"), tables.links);
      write_text(dir / (stem + "_global.csv"), tables.global);
    } else if (format == "graphml") {
      write_text(dir / (stem + ".graphml"), hoinet::to_graphml(net));
    } else {
      throw hoinet::InvalidArgument("unknown output format '" + format + "'");
    }
  }
}

int cmd_analyze(const AnalyzeOptions& o) {
  if (o.input_path.empty() == o.model_path.empty()) {
    std::cerr << "analyze: exactly one of --input / --model is required\n";
    return kExitUsage;
  }
  if (o.outdir.empty()) {
    std::cerr << "analyze: --outdir is required\n";
    return kExitUsage;
  }
  if (!o.model_path.empty() && o.signif) {
    std::cerr << "analyze: --signif needs series data (--input), not a model\n";
    return kExitUsage;
  }
  const fs::path dir(o.outdir);
  fs::create_directories(dir);

  hoinet::NetworkMeta meta;
  meta.q = o.q;
  meta.timestamp = utc_timestamp();

  hoinet::HoiNetwork net;
  int resolved_order = o.order;
  if (!o.model_path.empty()) {
    const hoinet::VarModel model = hoinet::read_model_json(o.model_path);
    resolved_order = model.order;
    const hoinet::HoiValues values = hoinet::analyze(model, o.q);
    meta.source = hoinet::NetworkSource::model_analytic;
    meta.n_nodes = model.n_nodes;
    meta.order = model.order;
    net = hoinet::assemble(values, nullptr, meta);
  } else {
    hoinet::TimeSeries series = hoinet::read_series_csv(o.input_path);
    if (o.zscore_flag) series = hoinet::zscore(series);
    if (resolved_order < 1) {
      const hoinet::OrderCriterion criterion =
          o.select == "aic" ? hoinet::OrderCriterion::aic : hoinet::OrderCriterion::bic;
      resolved_order = hoinet::select_order(series, o.max_order, criterion);
    }
    const hoinet::VarFit fit = hoinet::fit_least_squares(series, resolved_order);
    const hoinet::HoiValues values = hoinet::analyze(fit.model, o.q);
    meta.source = hoinet::NetworkSource::series_estimated;
    meta.n_nodes = series.n_nodes();
    meta.n_samples = series.n_samples();
    meta.order = resolved_order;
    if (o.signif) {
      hoinet::SignificanceConfig scfg;
      scfg.alpha = o.alpha;
      scfg.n_replicates = o.replicates;
      scfg.seed = o.seed;
      scfg.burn_in = o.burn_in;
      scfg.n_threads = hoinet::default_thread_count();
      const hoinet::NetworkSignificance sig =
          hoinet::network_significance(series, resolved_order, o.q, scfg);
      meta.alpha = o.alpha;
      meta.seed = o.seed;
      net = hoinet::assemble(values, &sig, meta, series.labels);
    } else {
      net = hoinet::assemble(values, nullptr, meta, series.labels);
    }
  }

  write_network_files(dir, "network", net, o.formats);
  write_text(dir / "config.json", resolved_analyze_config(o, resolved_order).dump(2) + "\n");
  return 0;
}

ordered_json cell_to_json(const hoinet::StarCellResult& cell) {
  ordered_json j;
  j["a31"] = cell.a31;
  j["n_samples"] = cell.n_samples;
  j["runs"] = cell.runs;
  j["gradient_sig"] = cell.gradient_sig;
  j["local_sig"] = cell.local_sig;
  j["oir_sig"] = cell.oir_sig;
  j["gradient_mean"] = cell.gradient_mean;
  j["gradient_std"] = cell.gradient_std;
  j["gradient_mae"] = cell.gradient_mae;
  j["local_mean"] = cell.local_mean;
  j["local_std"] = cell.local_std;
  j["local_mae"] = cell.local_mae;
  j["oir_mean"] = cell.oir_mean;
  j["oir_std"] = cell.oir_std;
  j["oir_mae"] = cell.oir_mae;
  j["analytic"] = {{"gradient", cell.analytic.gradient},
                   {"local_oir", cell.analytic.local_oir},
                   {"oir", cell.analytic.oir}};
  return j;
}

bool cell_from_json(const fs::path& path, hoinet::StarCellResult& cell, int expected_runs) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("runs").get<int>() != expected_runs) return false;
    cell.a31 = j.at("a31").get<double>();
    cell.n_samples = j.at("n_samples").get<int>();
    cell.runs = expected_runs;
    cell.gradient_sig = j.at("gradient_sig").get<std::vector<int>>();
    cell.local_sig = j.at("local_sig").get<std::vector<int>>();
    cell.oir_sig = j.at("oir_sig").get<int>();
    cell.gradient_mean = j.at("gradient_mean").get<std::vector<double>>();
    cell.gradient_std = j.at("gradient_std").get<std::vector<double>>();
    cell.gradient_mae = j.at("gradient_mae").get<std::vector<double>>();
    cell.local_mean = j.at("local_mean").get<std::vector<double>>();
    cell.local_std = j.at("local_std").get<std::vector<double>>();
    cell.local_mae = j.at("local_mae").get<std::vector<double>>();
    cell.oir_mean = j.at("oir_mean").get<double>();
    cell.oir_std = j.at("oir_std").get<double>();
    cell.oir_mae = j.at("oir_mae").get<double>();
    cell.analytic.gradient = j.at("analytic").at("gradient").get<std::vector<double>>();
    cell.analytic.local_oir = j.at("analytic").at("local_oir").get<std::vector<double>>();
    cell.analytic.oir = j.at("analytic").at("oir").get<double>();
    return true;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

std::string pct(int count, int runs) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * count / runs);
  return buf;
}

int cmd_repro_star(const ReproOptions& o) {
  if (o.outdir.empty()) {
    std::cerr << "repro-star: --outdir is required\n";
    return kExitUsage;
  }
  if (o.grid_steps < 1) {
    std::cerr << "repro-star: --grid-steps must be >= 1\n";
    return kExitUsage;
  }
  const fs::path dir(o.outdir);
  const fs::path cells_dir = dir / "cells";
  const fs::path analytic_dir = dir / "analytic";
  fs::create_directories(cells_dir);
  fs::create_directories(analytic_dir);

  // (a) analytic networks for the four benchmark configurations
  struct NamedConfig {
    const char* name;
    hoinet::StarConfig cfg;
  };
  const NamedConfig configs[] = {
      {"source", {hoinet::StarVariant::source, o.coupling, 0.0}},
      {"sink", {hoinet::StarVariant::sink, o.coupling, 0.0}},
      {"mediator_a31_0", {hoinet::StarVariant::mediator, o.coupling, 0.0}},
      {"mediator_a31_03", {hoinet::StarVariant::mediator, o.coupling, 0.3}},
  };
  for (const NamedConfig& named : configs) {
    const hoinet::VarModel model = hoinet::build_star_model(named.cfg);
    hoinet::NetworkMeta meta;
    meta.source = hoinet::NetworkSource::model_analytic;
    meta.n_nodes = model.n_nodes;
    meta.order = model.order;
    meta.q = o.q;
    meta.timestamp = utc_timestamp();
    const hoinet::HoiNetwork net = hoinet::assemble(hoinet::analyze(model, o.q), nullptr, meta);
    write_network_files(analytic_dir, named.name, net, {"json", "csv"});
  }

  // (b) detection sweep over (a31, length), resumable per cell
  std::vector<double> grid;
  for (int g = 0; g < o.grid_steps; ++g) {
    grid.push_back(o.grid_steps == 1 ? 0.3 : 0.3 * g / (o.grid_steps - 1));
  }
  std::vector<hoinet::StarCellResult> cells;
  for (const int t_len : o.lengths) {
    for (const double a31 : grid) {
      char name[64];
      std::snprintf(name, sizeof(name), "a31_%06.3f_T%d.json", a31, t_len);
      const fs::path cell_path = cells_dir / name;
      hoinet::StarCellResult cell;
      if (!cell_from_json(cell_path, cell, o.runs)) {
        hoinet::StarCellConfig cfg;
        cfg.a31 = a31;
        cfg.n_samples = t_len;
        cfg.runs = o.runs;
        cfg.coupling = o.coupling;
        cfg.q = o.q;
        cfg.burn_in = o.burn_in;
        cfg.seed = o.seed;
        cfg.n_threads = hoinet::default_thread_count();
        cfg.alpha = o.alpha;
        cfg.n_replicates = o.replicates;
        cell = hoinet::star_sweep_cell(cfg);
        write_text(cell_path, cell_to_json(cell).dump(2) + "\n");
      }
      std::cout << "cell a31=" << a31 << " T=" << t_len << " done\n";
      cells.push_back(std::move(cell));
    }
  }

  // detection tables, one row per (a31, T)
  const int n = 5;
  std::string grad_table = "a31,T";
  for (int j = 0; j < n; ++j) grad_table += ",X" + std::to_string(j + 1);
  grad_table += '\n';
  std::string local_table = "a31,T";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      local_table += ",X" + std::to_string(i + 1) + "-X" + std::to_string(j + 1);
    }
  }
  local_table += '\n';
  std::string oir_table = "a31,T,oir\n";
  for (const hoinet::StarCellResult& cell : cells) {
    const std::string prefix =
        std::to_string(cell.a31) + "," + std::to_string(cell.n_samples);
    grad_table += prefix;
    for (int j = 0; j < n; ++j) grad_table += "," + pct(cell.gradient_sig[j], cell.runs);
    grad_table += '\n';
    local_table += prefix;
    for (int k = 0; k < hoinet::n_pairs(n); ++k) {
      local_table += "," + pct(cell.local_sig[k], cell.runs);
    }
    local_table += '\n';
    oir_table += prefix + "," + pct(cell.oir_sig, cell.runs) + '\n';
  }
  write_text(dir / "detection_gradient.csv", grad_table);
  write_text(dir / "detection_local_oir.csv", local_table);
  write_text(dir / "detection_oir.csv", oir_table);

  // (c) bias/std summaries vs analytic values, averaged across grid cells
  std::string bias_table = "measure,T,bias,std\n";
  for (const int t_len : o.lengths) {
    double grad_bias = 0, grad_std = 0, local_bias = 0, local_std = 0, oir_bias = 0, oir_std = 0;
    int count = 0;
    for (const hoinet::StarCellResult& cell : cells) {
      if (cell.n_samples != t_len) continue;
      ++count;
      for (int j = 0; j < n; ++j) {
        grad_bias += cell.gradient_mae[j] / n;
        grad_std += cell.gradient_std[j] / n;
      }
      for (int k = 0; k < hoinet::n_pairs(n); ++k) {
        local_bias += cell.local_mae[k] / hoinet::n_pairs(n);
        local_std += cell.local_std[k] / hoinet::n_pairs(n);
      }
      oir_bias += cell.oir_mae;
      oir_std += cell.oir_std;
    }
    if (count == 0) continue;
    char row[256];
    std::snprintf(row, sizeof(row), "gradient,%d,%.6f,%.6f\nlocal_oir,%d,%.6f,%.6f\noir,%d,%.6f,%.6f\n",
                  t_len, grad_bias / count, grad_std / count, t_len, local_bias / count,
                  local_std / count, t_len, oir_bias / count, oir_std / count);
    bias_table += row;
  }
  write_text(dir / "bias_std.csv", bias_table);

  ordered_json cfg_json;
  cfg_json["command"] = "repro-star";
  cfg_json["outdir"] = o.outdir;
  cfg_json["grid-steps"] = o.grid_steps;
  cfg_json["lengths"] = o.lengths;
  cfg_json["runs"] = o.runs;
  cfg_json["seed"] = o.seed;
  cfg_json["coupling"] = o.coupling;
  cfg_json["q"] = o.q;
  cfg_json["alpha"] = o.alpha;
  cfg_json["replicates"] = o.replicates;
  cfg_json["burn-in"] = o.burn_in;
  write_text(dir / "config.json", cfg_json.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order interaction networks for jointly Gaussian processes"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Draw a realization of a network model");
  simulate->add_option("--star", sim.star, "Star variant: source, sink, or mediator");
  simulate->add_option("--model", sim.model_path, "Model JSON file");
  simulate->add_option("--coupling", sim.coupling, "Star coupling strength");
  simulate->add_option("--a31", sim.a31, "Mediator hub-to-second-leaf coefficient");
  simulate->add_option("--samples", sim.samples, "Series length");
  simulate->add_option("--burn-in", sim.burn_in, "Discarded warm-up samples");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--replicates", sim.replicates, "Number of series to write");
  simulate->add_option("--out", sim.out, "Output CSV path")->required();
  simulate->add_option("--config", sim.config_path, "JSON config file (flags override)");

  AnalyzeOptions an;
  CLI::App* analyze = app.add_subcommand("analyze", "Compute the interaction network");
  analyze->add_option("--input", an.input_path, "Series CSV file");
  analyze->add_option("--model", an.model_path, "Model JSON file (analytic mode)");
  analyze->add_option("--order", an.order, "Fixed model order (0: select by criterion)");
  analyze->add_option("--select", an.select, "Order criterion: aic or bic")
      ->check(CLI::IsMember({"aic", "bic"}));
  analyze->add_option("--max-order", an.max_order, "Largest candidate order");
  analyze->add_option("--q", an.q, "Restricted regression depth");
  analyze->add_option("--alpha", an.alpha, "Significance level");
  analyze->add_option("--replicates", an.replicates, "Bootstrap/surrogate replicates");
  analyze->add_option("--seed", an.seed, "Random seed");
  analyze->add_option("--burn-in", an.burn_in, "Bootstrap warm-up samples");
  analyze->add_flag("--signif,!--no-signif", an.signif, "Run significance tests");
  analyze->add_flag("--zscore,!--no-zscore", an.zscore_flag, "Normalize input columns");
  analyze->add_option("--outdir", an.outdir, "Output directory");
  analyze->add_option("--formats", an.formats, "Output formats: json, csv, graphml")
      ->delimiter(',');
  analyze->add_option("--config", an.config_path, "JSON config file (flags override)");

  ReproOptions rep;
  CLI::App* repro = app.add_subcommand("repro-star", "Star-network reproduction sweep");
  repro->add_option("--outdir", rep.outdir, "Output directory");
  repro->add_option("--grid-steps", rep.grid_steps, "Grid points for a31 in [0, 0.3]");
  repro->add_option("--lengths", rep.lengths, "Series lengths")->delimiter(',');
  repro->add_option("--runs", rep.runs, "Realizations per cell");
  repro->add_option("--seed", rep.seed, "Random seed");
  repro->add_option("--coupling", rep.coupling, "Star coupling strength");
  repro->add_option("--q", rep.q, "Restricted regression depth");
  repro->add_option("--alpha", rep.alpha, "Significance level");
  repro->add_option("--replicates", rep.replicates, "Bootstrap replicates per run");
  repro->add_option("--burn-in", rep.burn_in, "Warm-up samples");
  repro->add_option("--config", rep.config_path, "JSON config file (flags override)");

  try {
    app.parse(argc, argv);
    if (*simulate) {
      if (!sim.config_path.empty()) apply_config_file(simulate, sim.config_path);
      return cmd_simulate(sim);
    }
    if (*analyze) {
      if (!an.config_path.empty()) apply_config_file(analyze, an.config_path);
      return cmd_analyze(an);
    }
    if (*repro) {
      if (!rep.config_path.empty()) apply_config_file(repro, rep.config_path);
      return cmd_repro_star(rep);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  } catch (const hoinet::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hoinet::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hoinet::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
