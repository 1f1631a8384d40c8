#pragma once

#include <memory>
#include <optional>

#include "hvacrl/occupant.hpp"
#include "hvacrl/rng.hpp"
#include "hvacrl/thermal.hpp"
#include "hvacrl/weather.hpp"

namespace hvacrl::env {

inline constexpr int kStepsPerDay = weather::kStepsPerDay;

/// Hidden state of the controlled building.
struct FullState {
    thermal::ThermalState thermal;
    int comfort = 2;      // {1,2,3}
    int k = 0;            // periodic time index {0..143}
    double t_out = 0.0;   // bin center (degC)
    double q_solar = 0.0; // bin center (W)
    int occupied = 0;     // {0,1}
};

/// What the controller sees: air temperature, time of day, occupancy.
struct Observation {
    double t_air = 0.0;
    int k = 0;
    int occupied = 0;
};

Observation observe(const FullState& s);

struct EnvConfig {
    double u_max = 1000.0;
    int episode_len = 144;
    double energy_weight_unoccupied = 0.001;
    double energy_weight_occupied = 0.00001;
    double constraint_penalty = 200.0;
    double discomfort_penalty = 100.0;
    double comfort_band_lo = 20.0;
    double comfort_band_hi = 30.0;
    double init_t_lo = 20.0;
    double init_t_hi = 26.0;

    void validate() const;
};

/// Quadratic energy cost plus occupied-time band and comfort penalties.
double cost(const FullState& s, double u, const EnvConfig& cfg);

/// One building, one occupant, one weather realization per episode.
/// Mutable episode state; single caller per instance.
class Environment {
public:
    Environment(EnvConfig cfg, thermal::CircuitParams circuit,
                occupant::ComfortParams comfort,
                std::shared_ptr<const weather::TimeChain> t_chain,
                std::shared_ptr<const weather::TimeChain> s_chain,
                weather::BinSpec t_spec = weather::BinSpec::temperature(),
                weather::BinSpec s_spec = weather::BinSpec::solar());

    struct ResetResult {
        FullState state;
        Observation obs;
    };

    /// Fresh episode. Draws substream seeds from `rng`; pass `carry_thermal`
    /// to chain days with a persistent thermal state.
    ResetResult reset(Rng& rng, std::optional<thermal::ThermalState> carry_thermal = {});

    struct StepResult {
        FullState state;
        Observation obs;
        double reward = 0.0;
        double applied_u = 0.0;
        bool done = false;
    };

    /// Applies u (clamped to [-u_max, u_max]), advances one step.
    StepResult step(double u);

    const FullState& state() const;
    double cost(const FullState& s, double u) const { return env::cost(s, u, cfg_); }

    /// Current exogenous inputs (q_solar, q_internal, t_out) implied by the state.
    thermal::Disturbance disturbance() const;

    const EnvConfig& config() const { return cfg_; }
    const thermal::StateMatrices& matrices() const { return mats_; }
    const thermal::CircuitParams& circuit() const { return circuit_; }
    const occupant::Schedule& schedule() const;

private:
    EnvConfig cfg_;
    thermal::CircuitParams circuit_;
    thermal::StateMatrices mats_;
    occupant::ComfortParams comfort_;
    std::shared_ptr<const weather::TimeChain> t_chain_;
    std::shared_ptr<const weather::TimeChain> s_chain_;
    weather::BinSpec t_spec_;
    weather::BinSpec s_spec_;

    bool live_ = false;
    FullState state_;
    occupant::Schedule schedule_;
    int t_bin_ = 0;
    int s_bin_ = 0;
    int steps_done_ = 0;
    std::optional<Rng> weather_rng_;
    std::optional<Rng> comfort_rng_;
};

} // namespace hvacrl::env
