#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hoinet/netout.hpp"

namespace fs = std::filesystem;

namespace {

const char* kCli = HOINET_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((std::string(kCli) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// drop the timestamp line so reruns compare equal
std::string without_timestamp(std::string text) {
  const auto pos = text.find("\"timestamp\"");
  if (pos == std::string::npos) return text;
  const auto end = text.find('\n', pos);
  return text.erase(pos, end - pos);
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("simulate writes a labeled CSV of the requested shape") {
  TempDir tmp("hoinet_cli_sim");
  const std::string out = (tmp.path / "med.csv").string();
  REQUIRE(run("simulate --star mediator --a31 0.3 --samples 1000 --seed 5 --out " + out) == 0);

  const hoinet::TimeSeries series = hoinet::read_series_csv(out);
  CHECK(series.n_samples() == 1000);
  CHECK(series.n_nodes() == 5);
  CHECK(series.labels == std::vector<std::string>{"X1", "X2", "X3", "X4", "X5"});
  CHECK(fs::exists(out + ".config.json"));

  const std::string again = (tmp.path / "med2.csv").string();
  REQUIRE(run("simulate --star mediator --a31 0.3 --samples 1000 --seed 5 --out " + again) == 0);
  CHECK(slurp(out) == slurp(again));  // same seed, same bytes

  const std::string replicated = (tmp.path / "rep.csv").string();
  REQUIRE(run("simulate --star source --samples 120 --seed 1 --replicates 3 --out " + replicated) == 0);
  CHECK(fs::exists(tmp.path / "rep_r000.csv"));
  CHECK(fs::exists(tmp.path / "rep_r002.csv"));
  CHECK(slurp(tmp.path / "rep_r000.csv") != slurp(tmp.path / "rep_r001.csv"));
}

TEST_CASE("usage errors exit with status 2") {
  TempDir tmp("hoinet_cli_usage");
  CHECK(run("simulate --star nope --samples 100 --out " + (tmp.path / "x.csv").string()) == 2);
  CHECK(run("simulate --samples 100 --out " + (tmp.path / "y.csv").string()) == 2);
  CHECK(run("analyze --input " + (tmp.path / "missing.csv").string() + " --outdir " +
            (tmp.path / "out").string()) == 2);
  CHECK(run("definitely-not-a-command") == 2);
}

TEST_CASE("analytic analysis of a source star is all redundancy") {
  TempDir tmp("hoinet_cli_model");
  const std::string model_path = (tmp.path / "source.json").string();
  hoinet::write_model_json(model_path,
                           hoinet::build_star_model({hoinet::StarVariant::source, 0.3, 0.0}));

  const std::string outdir = (tmp.path / "net").string();
  REQUIRE(run("analyze --model " + model_path + " --outdir " + outdir +
              " --formats json,csv,graphml") == 0);

  const hoinet::HoiNetwork net = hoinet::network_from_json(slurp(fs::path(outdir) / "network.json"));
  CHECK(net.meta.source == hoinet::NetworkSource::model_analytic);
  for (const auto& node : net.nodes) CHECK(node.cls == hoinet::HoiClass::redundancy);
  for (const auto& link : net.links) CHECK(link.cls == hoinet::HoiClass::redundancy);
  CHECK(net.global.cls == hoinet::HoiClass::redundancy);
  CHECK(fs::exists(fs::path(outdir) / "network.graphml"));
  CHECK(fs::exists(fs::path(outdir) / "network_links.csv"));

  // significance needs data, not a model
  CHECK(run("analyze --model " + model_path + " --signif --outdir " + outdir) == 2);
}

TEST_CASE("analysis runs are reproducible") {
  TempDir tmp("hoinet_cli_repro");
  const std::string csv = (tmp.path / "data.csv").string();
  REQUIRE(run("simulate --star mediator --a31 0.15 --samples 600 --seed 11 --out " + csv) == 0);

  const std::string out1 = (tmp.path / "first").string();
  const std::string out2 = (tmp.path / "second").string();
  const std::string flags = " --order 1 --signif --replicates 30 --seed 4 --outdir ";
  REQUIRE(run("analyze --input " + csv + flags + out1) == 0);
  REQUIRE(run("analyze --input " + csv + flags + out2) == 0);

  CHECK(without_timestamp(slurp(fs::path(out1) / "network.json")) ==
        without_timestamp(slurp(fs::path(out2) / "network.json")));
  CHECK(slurp(fs::path(out1) / "network_nodes.csv") == slurp(fs::path(out2) / "network_nodes.csv"));
  CHECK(slurp(fs::path(out1) / "network_links.csv") == slurp(fs::path(out2) / "network_links.csv"));

  const hoinet::HoiNetwork net = hoinet::network_from_json(slurp(fs::path(out1) / "network.json"));
  REQUIRE(net.meta.alpha.has_value());
  for (const auto& node : net.nodes) CHECK(node.gradient_sig.has_value());
  for (const auto& link : net.links) {
    CHECK(link.mir_sig.has_value());
    CHECK(link.local_sig.has_value());
  }
}

TEST_CASE("config files fill unset options and flags override them") {
  TempDir tmp("hoinet_cli_cfg");
  const std::string csv = (tmp.path / "data.csv").string();
  REQUIRE(run("simulate --star source --samples 400 --seed 2 --out " + csv) == 0);

  const std::string cfg_path = (tmp.path / "run.json").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << "{\"order\": 1, \"q\": 12}\n";
  }

  const std::string out1 = (tmp.path / "fromfile").string();
  REQUIRE(run("analyze --input " + csv + " --config " + cfg_path + " --outdir " + out1) == 0);
  const std::string resolved1 = slurp(fs::path(out1) / "config.json");
  CHECK(resolved1.find("\"q\": 12") != std::string::npos);
  CHECK(resolved1.find("\"resolved-order\": 1") != std::string::npos);

  const std::string out2 = (tmp.path / "overridden").string();
  REQUIRE(run("analyze --input " + csv + " --config " + cfg_path + " --q 20 --outdir " + out2) == 0);
  CHECK(slurp(fs::path(out2) / "config.json").find("\"q\": 20") != std::string::npos);

  {
    std::ofstream cfg(cfg_path);
    cfg << "{\"not-an-option\": 1}\n";
  }
  CHECK(run("analyze --input " + csv + " --config " + cfg_path + " --outdir " + out1) == 2);
}

TEST_CASE("reproduction sweep smoke mode produces the table set and resumes") {
  TempDir tmp("hoinet_cli_sweep");
  const std::string outdir = (tmp.path / "sweep").string();
  const std::string args = "repro-star --outdir " + outdir +
                           " --grid-steps 1 --lengths 250 --runs 1 --replicates 20 --seed 9";
  REQUIRE(run(args) == 0);
  for (const char* name : {"detection_gradient.csv", "detection_local_oir.csv",
                           "detection_oir.csv", "bias_std.csv", "config.json"}) {
    CHECK(fs::exists(fs::path(outdir) / name));
  }
  CHECK(fs::exists(fs::path(outdir) / "analytic" / "source.json"));
  CHECK(fs::exists(fs::path(outdir) / "analytic" / "mediator_a31_0_nodes.csv"));

  // rerun resumes from the stored cell files and reproduces the tables
  const std::string table = slurp(fs::path(outdir) / "detection_gradient.csv");
  REQUIRE(run(args) == 0);
  CHECK(slurp(fs::path(outdir) / "detection_gradient.csv") == table);
}
