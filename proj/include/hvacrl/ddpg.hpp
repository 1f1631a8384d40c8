#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "hvacrl/environment.hpp"
#include "hvacrl/neural.hpp"
#include "hvacrl/rng.hpp"

namespace hvacrl::ddpg {

/// Normalized policy inputs: t_air/50, sin and cos of the time of day,
/// occupancy. Built only from the Observation, never the hidden state.
using ObsFeatures = std::array<double, 4>;

ObsFeatures obs_features(const env::Observation& o);

struct Transition {
    ObsFeatures obs{};
    double action = 0.0;
    double reward = 0.0;
    ObsFeatures next_obs{};
};

/// Bounded FIFO with uniform sampling (with replacement).
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(const Transition& t);
    std::vector<Transition> sample(std::size_t n, Rng& rng) const;
    const Transition& at(std::size_t logical) const;  // 0 = oldest

    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    std::size_t head_ = 0;  // next write position
    std::size_t size_ = 0;
    std::vector<Transition> data_;
};

/// Mean-reverting exploration noise: e <- e + theta (mu - e) + sigma xi.
struct OuNoise {
    double value = 0.0;
    double mu = 0.0;
    double theta = 0.15;
    double sigma = 200.0;

    void reset() { value = mu; }
    double step(Rng& rng);
};

struct DdpgConfig {
    double discount = 0.99;
    double tau = 0.005;
    int batch_size = 64;
    std::size_t buffer_capacity = 100000;
    int episodes = 200;
    int steps_per_episode = 144;
    std::vector<int> hidden_widths = {64, 64};
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double noise_theta = 0.15;
    double noise_sigma0 = 200.0;
    double noise_sigma_final = 20.0;
    int warmup_factor = 10;     // updates start at warmup_factor * batch_size
    double reward_scale = 0.01; // critic regresses scaled rewards
    double u_max = 1000.0;
    int checkpoint_every = 0;   // episodes; 0 disables

    void validate() const;
};

struct Networks {
    neural::MlpParams actor;
    neural::MlpParams critic;
    neural::MlpParams target_actor;
    neural::MlpParams target_critic;
};

/// Actor and critic shaped for the feature/action dimensions, targets
/// initialized as copies.
Networks make_networks(const DdpgConfig& cfg, Rng& rng);

/// Deterministic policy output plus optional noise, clamped to +-u_max.
double act(const neural::MlpParams& actor, const ObsFeatures& f, double noise,
           double u_max);

/// y_i = r_i + discount * Q'(o'_i, pi'(o'_i)); always bootstraps.
std::vector<double> critic_targets(const std::vector<Transition>& batch,
                                   const neural::MlpParams& target_actor,
                                   const neural::MlpParams& target_critic,
                                   double discount, double u_max);

/// theta' <- tau theta + (1 - tau) theta', elementwise.
void soft_update(const neural::MlpParams& main, neural::MlpParams& target, double tau);

/// Gradient of -(1/N) sum_i Q(o_i, pi(o_i)) with respect to actor parameters,
/// chained through the critic's action input.
neural::Gradients actor_gradient(const neural::MlpParams& actor,
                                 const neural::MlpParams& critic,
                                 const std::vector<Transition>& batch, double u_max);

struct TrainStepDiag {
    double critic_loss = 0.0;
    double mean_q = 0.0;
};

/// One critic regression step, one actor ascent step through the critic's
/// action input, then soft updates of both targets.
TrainStepDiag train_step(Networks& nets, neural::AdamState& actor_opt,
                         neural::AdamState& critic_opt,
                         const std::vector<Transition>& batch, const DdpgConfig& cfg);

struct EpisodeLog {
    int episode = 0;
    double episode_return = 0.0;
    double mean_critic_loss = 0.0;
    double mean_q = 0.0;
    double noise_sigma = 0.0;
};

struct TrainResult {
    Networks nets;
    std::vector<EpisodeLog> log;
};

using CheckpointFn = std::function<void(int episode, const Networks& nets)>;

/// Full training loop against the environment's partial observations.
TrainResult train(env::Environment& environment, const DdpgConfig& cfg, Rng& rng,
                  const CheckpointFn& checkpoint = {});

} // namespace hvacrl::ddpg
