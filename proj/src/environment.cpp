#include "hvacrl/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvacrl::env {

Observation observe(const FullState& s) {
    return Observation{s.thermal.t_air, s.k, s.occupied};
}

void EnvConfig::validate() const {
    if (!(u_max > 0.0)) throw std::invalid_argument("EnvConfig: u_max must be > 0");
    if (episode_len < 1) throw std::invalid_argument("EnvConfig: episode_len must be >= 1");
    if (energy_weight_unoccupied < 0.0 || energy_weight_occupied < 0.0 ||
        constraint_penalty < 0.0 || discomfort_penalty < 0.0)
        throw std::invalid_argument("EnvConfig: weights and penalties must be >= 0");
    if (!(comfort_band_lo < comfort_band_hi))
        throw std::invalid_argument("EnvConfig: comfort band must be nonempty");
    if (!(init_t_lo <= init_t_hi))
        throw std::invalid_argument("EnvConfig: initial temperature range must be nonempty");
}

double cost(const FullState& s, double u, const EnvConfig& cfg) {
    if (s.occupied == 0) return cfg.energy_weight_unoccupied * u * u;
    double c = cfg.energy_weight_occupied * u * u;
    if (s.thermal.t_air < cfg.comfort_band_lo || s.thermal.t_air > cfg.comfort_band_hi)
        c += cfg.constraint_penalty;
    if (s.comfort != 2) c += cfg.discomfort_penalty;
    return c;
}

Environment::Environment(EnvConfig cfg, thermal::CircuitParams circuit,
                         occupant::ComfortParams comfort,
                         std::shared_ptr<const weather::TimeChain> t_chain,
                         std::shared_ptr<const weather::TimeChain> s_chain,
                         weather::BinSpec t_spec, weather::BinSpec s_spec)
    : cfg_(cfg),
      circuit_(circuit),
      comfort_(comfort),
      t_chain_(std::move(t_chain)),
      s_chain_(std::move(s_chain)),
      t_spec_(t_spec),
      s_spec_(s_spec) {
    cfg_.validate();
    comfort_.validate();
    mats_ = thermal::build_matrices(circuit_);
    if (!t_chain_ || !s_chain_)
        throw std::invalid_argument("Environment: missing weather chains");
    if (t_chain_->n_bins != t_spec_.n || s_chain_->n_bins != s_spec_.n)
        throw std::invalid_argument("Environment: chain/spec bin count mismatch");
}

Environment::ResetResult Environment::reset(Rng& rng,
                                            std::optional<thermal::ThermalState> carry_thermal) {
    // Fixed draw order keeps episodes matched across policies given one seed.
    Rng init_rng(rng.next_seed());
    weather_rng_.emplace(rng.next_seed());
    comfort_rng_.emplace(rng.next_seed());

    state_.k = 0;
    state_.thermal.t_air = init_rng.uniform(cfg_.init_t_lo, cfg_.init_t_hi);
    state_.thermal.t_wall = init_rng.uniform(cfg_.init_t_lo, cfg_.init_t_hi);
    if (carry_thermal) state_.thermal = *carry_thermal;

    schedule_ = occupant::sample_schedule(init_rng);
    state_.occupied = occupant::occupancy(0, schedule_);

    t_bin_ = weather::sample_initial_bin(*t_chain_, *weather_rng_);
    s_bin_ = weather::sample_initial_bin(*s_chain_, *weather_rng_);
    state_.t_out = t_spec_.center(t_bin_);
    state_.q_solar = s_spec_.center(s_bin_);

    state_.comfort = occupant::sample_comfort(state_.thermal.t_air, comfort_, *comfort_rng_);

    steps_done_ = 0;
    live_ = true;
    return {state_, observe(state_)};
}

const FullState& Environment::state() const {
    if (!live_) throw std::logic_error("Environment: reset() has not been called");
    return state_;
}

const occupant::Schedule& Environment::schedule() const {
    if (!live_) throw std::logic_error("Environment: reset() has not been called");
    return schedule_;
}

thermal::Disturbance Environment::disturbance() const {
    const FullState& s = state();
    return {s.q_solar, occupant::internal_heat(s.occupied), s.t_out};
}

Environment::StepResult Environment::step(double u) {
    if (!live_) throw std::logic_error("Environment: reset() has not been called");
    if (!std::isfinite(u)) throw std::invalid_argument("Environment: non-finite action");
    const double uc = std::clamp(u, -cfg_.u_max, cfg_.u_max);

    const double reward = -env::cost(state_, uc, cfg_);

    state_.thermal = thermal::step(state_.thermal, uc, disturbance(), mats_);

    const int prev_k = state_.k;
    state_.k = (state_.k + 1) % kStepsPerDay;
    t_bin_ = weather::sample_next_bin(*t_chain_, prev_k, t_bin_, *weather_rng_);
    s_bin_ = weather::sample_next_bin(*s_chain_, prev_k, s_bin_, *weather_rng_);
    state_.t_out = t_spec_.center(t_bin_);
    state_.q_solar = s_spec_.center(s_bin_);
    state_.occupied = occupant::occupancy(state_.k, schedule_);
    state_.comfort = occupant::sample_comfort(state_.thermal.t_air, comfort_, *comfort_rng_);

    ++steps_done_;
    const bool done = steps_done_ >= cfg_.episode_len;
    return {state_, observe(state_), reward, uc, done};
}

} // namespace hvacrl::env
