#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hvacrl/config.hpp"
#include "hvacrl/ddpg.hpp"
#include "hvacrl/environment.hpp"
#include "hvacrl/greedy.hpp"

namespace hvacrl::harness {

/// One trace row per simulated step, pre-transition state plus applied action.
struct TraceRow {
    int k = 0;
    double t_air = 0.0;
    double t_wall = 0.0;
    double t_out = 0.0;
    double q_solar = 0.0;
    int occupied = 0;
    int comfort = 0;
    double u = 0.0;
    double reward = 0.0;
};

using EpisodeTrace = std::vector<TraceRow>;

struct DailyMetrics {
    double energy_kj = 0.0;
    int comfort_score = 0;
    int occupied_steps = 0;
    int violations = 0;
    double episode_return = 0.0;
};

/// Controllers under evaluation. Greedy reads the full state; the DDPG
/// policy reads only the observation.
class Policy {
public:
    virtual ~Policy() = default;
    virtual double act(const env::FullState& state, const env::Observation& obs,
                       Rng& rng) = 0;
    virtual std::string name() const = 0;
};

class ZeroPolicy final : public Policy {
public:
    double act(const env::FullState&, const env::Observation&, Rng&) override { return 0.0; }
    std::string name() const override { return "zero"; }
};

class RandomPolicy final : public Policy {
public:
    explicit RandomPolicy(double u_max) : u_max_(u_max) {}
    double act(const env::FullState&, const env::Observation&, Rng& rng) override {
        return rng.uniform(-u_max_, u_max_);
    }
    std::string name() const override { return "random"; }

private:
    double u_max_;
};

class GreedyPolicy final : public Policy {
public:
    GreedyPolicy(thermal::StateMatrices mats, greedy::GreedyParams params)
        : mats_(mats), params_(params) {}
    double act(const env::FullState& s, const env::Observation&, Rng&) override {
        const thermal::Disturbance w{s.q_solar, occupant::internal_heat(s.occupied), s.t_out};
        return greedy::greedy_action(s.thermal, w, s.occupied, mats_, params_);
    }
    std::string name() const override { return "greedy"; }

private:
    thermal::StateMatrices mats_;
    greedy::GreedyParams params_;
};

class DdpgPolicy final : public Policy {
public:
    DdpgPolicy(neural::MlpParams actor, double u_max)
        : actor_(std::move(actor)), u_max_(u_max) {}
    double act(const env::FullState&, const env::Observation& obs, Rng&) override {
        return ddpg::act(actor_, ddpg::obs_features(obs), 0.0, u_max_);
    }
    std::string name() const override { return "ddpg"; }

private:
    neural::MlpParams actor_;
    double u_max_;
};

struct EpisodeResult {
    EpisodeTrace trace;
    DailyMetrics metrics;  // accumulated online during the episode
};

/// One day under the policy. `carry_thermal` chains days for week runs.
EpisodeResult run_episode(Policy& policy, env::Environment& environment, Rng& rng,
                          std::optional<thermal::ThermalState> carry_thermal = {});

/// Metrics recomputed from a complete trace; dt_seconds converts |u| sums
/// to kJ. Throws on traces that do not cover a full episode. The violation
/// band defaults to the reward definition's [20, 30] degC.
DailyMetrics daily_metrics(const EpisodeTrace& trace, double dt_seconds,
                           int episode_len = env::kStepsPerDay,
                           double band_lo = 20.0, double band_hi = 30.0);

struct PolicyMetrics {
    std::string policy;
    std::vector<DailyMetrics> days;
};

struct Summary {
    std::string policy;
    std::string metric;
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
};

Summary summarize(const std::string& policy, const std::string& metric,
                  const std::vector<double>& values);

struct HistBin {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

/// Equal-width bins over [lo, hi]; values at hi land in the last bin.
std::vector<HistBin> histogram(const std::vector<double>& values, int bins,
                               double lo, double hi);

/// Everything needed to build matched evaluation environments.
struct EnvSetup {
    env::EnvConfig env_cfg;
    thermal::CircuitParams circuit;
    occupant::ComfortParams comfort;
    std::shared_ptr<const weather::TimeChain> t_chain;
    std::shared_ptr<const weather::TimeChain> s_chain;

    env::Environment make_env() const {
        return env::Environment(env_cfg, circuit, comfort, t_chain, s_chain);
    }
};

struct CompareResult {
    std::vector<PolicyMetrics> per_policy;
    std::vector<Summary> summaries;
};

/// Runs `days` matched evaluation days per policy: day d uses the same
/// weather and occupancy seed for every policy.
CompareResult compare(const std::vector<Policy*>& policies, const EnvSetup& setup,
                      int days, std::uint64_t seed);

/// Writes metrics_<policy>.csv, hist_<metric>_<policy>.csv and summary.csv.
void write_compare_outputs(const CompareResult& result,
                           const std::filesystem::path& out_dir, int hist_bins);

void write_trace(const EpisodeTrace& trace, const std::filesystem::path& path);
void write_metrics(const PolicyMetrics& pm, const std::filesystem::path& path);
void write_training_log(const std::vector<ddpg::EpisodeLog>& log,
                        const std::filesystem::path& path);

/// Actor/critic checkpoint document (versioned JSON).
void save_checkpoint(const ddpg::Networks& nets, const std::filesystem::path& path);
struct Checkpoint {
    neural::MlpParams actor;
    neural::MlpParams critic;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace hvacrl::harness
