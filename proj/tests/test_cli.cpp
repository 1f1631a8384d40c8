#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hvacrl/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "hvacrl_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

int run(const std::vector<std::string>& args) { return hvacrl::cli::run(args); }

} // namespace

TEST_CASE("cli: unknown subcommands and flags fail with nonzero status") {
    CHECK(run({"frobnicate"}) != 0);
    CHECK(run({"train", "--no-such-flag"}) != 0);
    CHECK(run({}) != 0);
}

TEST_CASE("cli: synth-weather and estimate-chain pipeline") {
    TempDir dir;
    CHECK(run({"--seed", "5", "--out", dir.str(), "synth-weather", "--days", "4"}) == 0);
    CHECK(fs::exists(dir.path / "weather.csv"));

    CHECK(run({"--out", dir.str(), "estimate-chain", "--weather",
               (dir.path / "weather.csv").string()}) == 0);
    CHECK(fs::exists(dir.path / "chain_temperature.csv"));
    CHECK(fs::exists(dir.path / "chain_solar.csv"));
}

TEST_CASE("cli: train with zero episodes still writes a checkpoint") {
    TempDir dir;
    const fs::path cfg_path = dir.path / "cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "ddpg.episodes = 0\n"
            << "ddpg.hidden_widths = 8\n"
            << "weather.synth_days = 2\n";
    }
    CHECK(run({"--seed", "1", "--out", dir.str(), "--config", cfg_path.string(),
               "train"}) == 0);
    CHECK(fs::exists(dir.path / "checkpoint.json"));
    CHECK(fs::exists(dir.path / "training_log.csv"));
}

TEST_CASE("cli: evaluate requires an existing checkpoint for the ddpg policy") {
    TempDir dir;
    const int status = run({"--out", dir.str(), "evaluate", "--policy", "ddpg",
                            "--checkpoint", (dir.path / "missing.json").string(),
                            "--days", "1"});
    CHECK(status != 0);
    CHECK(run({"--out", dir.str(), "evaluate", "--policy", "ddpg", "--days", "1"}) != 0);
}

TEST_CASE("cli: evaluate zero policy writes metrics and traces") {
    TempDir dir;
    const fs::path cfg_path = dir.path / "cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "weather.synth_days = 2\n";
    }
    CHECK(run({"--seed", "3", "--out", dir.str(), "--config", cfg_path.string(),
               "evaluate", "--policy", "zero", "--days", "2", "--traces", "1"}) == 0);
    CHECK(fs::exists(dir.path / "metrics_zero.csv"));
    CHECK(fs::exists(dir.path / "trace_zero_0.csv"));
    CHECK(!fs::exists(dir.path / "trace_zero_1.csv"));

    std::ifstream trace(dir.path / "trace_zero_0.csv");
    std::string header;
    std::getline(trace, header);
    CHECK(header == "k,t_air,t_wall,t_out,q_solar,occupied,comfort,u,reward");
}

TEST_CASE("cli: week evaluation writes seven chained traces") {
    TempDir dir;
    const fs::path cfg_path = dir.path / "cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "weather.synth_days = 2\n";
    }
    CHECK(run({"--seed", "3", "--out", dir.str(), "--config", cfg_path.string(),
               "evaluate", "--policy", "greedy", "--week"}) == 0);
    for (int d = 0; d < 7; ++d)
        CHECK(fs::exists(dir.path / ("trace_greedy_" + std::to_string(d) + ".csv")));
}

TEST_CASE("cli: compare writes the full output set") {
    TempDir dir;
    const fs::path cfg_path = dir.path / "cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "weather.synth_days = 2\n";
    }
    CHECK(run({"--seed", "9", "--out", dir.str(), "--config", cfg_path.string(),
               "compare", "--policies", "greedy,zero", "--days", "3"}) == 0);
    for (const std::string name :
         {"metrics_greedy.csv", "metrics_zero.csv", "hist_energy_kj_greedy.csv",
          "hist_comfort_score_zero.csv", "summary.csv"})
        CHECK(fs::exists(dir.path / name));
}

TEST_CASE("cli: bad config key fails loudly") {
    TempDir dir;
    const fs::path cfg_path = dir.path / "cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "ddpg.learning = 1\n";
    }
    CHECK(run({"--out", dir.str(), "--config", cfg_path.string(), "train"}) != 0);
}
