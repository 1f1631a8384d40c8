#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hvacrl/ddpg.hpp"
#include "hvacrl/environment.hpp"
#include "hvacrl/greedy.hpp"
#include "hvacrl/occupant.hpp"
#include "hvacrl/thermal.hpp"
#include "hvacrl/weather.hpp"

namespace hvacrl::config {

/// Flat `key = value` file with '#' comments. Every key must be known;
/// unread keys are reported as errors so typos do not silently fall back
/// to defaults.
class Config {
public:
    Config() = default;
    static Config from_file(const std::filesystem::path& path);
    static Config from_string(const std::string& text);

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;

    /// Throws if any key in the file was never requested.
    void check_all_consumed() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
};

thermal::CircuitParams circuit_params(const Config& c);
occupant::ComfortParams comfort_params(const Config& c);
weather::SynthParams synth_params(const Config& c);
env::EnvConfig env_config(const Config& c);
ddpg::DdpgConfig ddpg_config(const Config& c);
greedy::GreedyParams greedy_params(const Config& c);

struct HarnessConfig {
    int days = 500;       // evaluation days per policy
    int hist_bins = 20;   // histogram bins
    int synth_days = 31;  // synthetic weather length when no trace is given
};

HarnessConfig harness_config(const Config& c);

/// Every parameter in one place. Building it consumes the whole schema, so a
/// config file shared across subcommands is fully validated and typos are
/// still rejected.
struct FullConfig {
    thermal::CircuitParams circuit;
    occupant::ComfortParams comfort;
    weather::SynthParams synth;
    env::EnvConfig environment;
    ddpg::DdpgConfig ddpg;
    greedy::GreedyParams greedy;
    HarnessConfig harness;
};

FullConfig load_all(const Config& c);

} // namespace hvacrl::config
