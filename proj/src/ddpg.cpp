#include "hvacrl/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hvacrl::ddpg {

ObsFeatures obs_features(const env::Observation& o) {
    const double phase = 2.0 * std::numbers::pi * o.k / env::kStepsPerDay;
    return {o.t_air / 50.0, std::sin(phase), std::cos(phase),
            static_cast<double>(o.occupied)};
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: capacity must be > 0");
    data_.reserve(std::min<std::size_t>(capacity_, 1 << 16));
}

void ReplayBuffer::push(const Transition& t) {
    if (!std::isfinite(t.action) || !std::isfinite(t.reward))
        throw std::invalid_argument("ReplayBuffer: non-finite transition");
    if (size_ < capacity_) {
        data_.push_back(t);
        ++size_;
    } else {
        data_[head_] = t;  // overwrite oldest
    }
    head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t logical) const {
    if (logical >= size_) throw std::out_of_range("ReplayBuffer: index out of range");
    if (size_ < capacity_) return data_[logical];
    return data_[(head_ + logical) % capacity_];
}

std::vector<Transition> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
    if (size_ == 0) throw std::logic_error("ReplayBuffer: cannot sample from empty buffer");
    std::vector<Transition> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(data_[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(size_) - 1))]);
    return out;
}

double OuNoise::step(Rng& rng) {
    value = value + theta * (mu - value) + sigma * rng.normal();
    return value;
}

void DdpgConfig::validate() const {
    if (!(discount >= 0.0 && discount < 1.0))
        throw std::invalid_argument("DdpgConfig: discount must be in [0, 1)");
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("DdpgConfig: tau must be in (0, 1]");
    if (batch_size < 1) throw std::invalid_argument("DdpgConfig: batch_size must be >= 1");
    if (buffer_capacity == 0)
        throw std::invalid_argument("DdpgConfig: buffer_capacity must be > 0");
    if (episodes < 0) throw std::invalid_argument("DdpgConfig: episodes must be >= 0");
    if (steps_per_episode < 1)
        throw std::invalid_argument("DdpgConfig: steps_per_episode must be >= 1");
    if (hidden_widths.empty())
        throw std::invalid_argument("DdpgConfig: need at least one hidden layer");
    if (!(u_max > 0.0)) throw std::invalid_argument("DdpgConfig: u_max must be > 0");
    if (!(reward_scale > 0.0))
        throw std::invalid_argument("DdpgConfig: reward_scale must be > 0");
}

namespace {

constexpr int kFeatureDim = 4;
constexpr double kFinalLayerBound = 3e-3;

std::vector<double> critic_input(const ObsFeatures& f, double action, double u_max) {
    std::vector<double> x(f.begin(), f.end());
    x.push_back(action / u_max);
    return x;
}

} // namespace

Networks make_networks(const DdpgConfig& cfg, Rng& rng) {
    std::vector<int> actor_sizes{kFeatureDim};
    std::vector<int> critic_sizes{kFeatureDim + 1};
    for (int w : cfg.hidden_widths) {
        actor_sizes.push_back(w);
        critic_sizes.push_back(w);
    }
    actor_sizes.push_back(1);
    critic_sizes.push_back(1);

    Networks nets;
    nets.actor = neural::mlp_init(actor_sizes, neural::Activation::Relu,
                                  neural::OutputKind::ScaledTanh, cfg.u_max, rng,
                                  kFinalLayerBound);
    nets.critic = neural::mlp_init(critic_sizes, neural::Activation::Relu,
                                   neural::OutputKind::Identity, 1.0, rng,
                                   kFinalLayerBound);
    nets.target_actor = nets.actor;
    nets.target_critic = nets.critic;
    return nets;
}

double act(const neural::MlpParams& actor, const ObsFeatures& f, double noise,
           double u_max) {
    const double u = neural::forward(actor, f)[0] + noise;
    return std::clamp(u, -u_max, u_max);
}

std::vector<double> critic_targets(const std::vector<Transition>& batch,
                                   const neural::MlpParams& target_actor,
                                   const neural::MlpParams& target_critic,
                                   double discount, double u_max) {
    std::vector<double> y;
    y.reserve(batch.size());
    for (const auto& t : batch) {
        const double next_a = neural::forward(target_actor, t.next_obs)[0];
        const double next_q =
            neural::forward(target_critic, critic_input(t.next_obs, next_a, u_max))[0];
        y.push_back(t.reward + discount * next_q);
    }
    return y;
}

void soft_update(const neural::MlpParams& main, neural::MlpParams& target, double tau) {
    if (main.layers.size() != target.layers.size())
        throw std::invalid_argument("soft_update: shape mismatch");
    for (std::size_t l = 0; l < main.layers.size(); ++l) {
        const auto& ml = main.layers[l];
        auto& tl = target.layers[l];
        if (ml.w.size() != tl.w.size() || ml.b.size() != tl.b.size())
            throw std::invalid_argument("soft_update: shape mismatch");
        for (std::size_t i = 0; i < ml.w.size(); ++i)
            tl.w[i] = tau * ml.w[i] + (1.0 - tau) * tl.w[i];
        for (std::size_t i = 0; i < ml.b.size(); ++i)
            tl.b[i] = tau * ml.b[i] + (1.0 - tau) * tl.b[i];
    }
}

neural::Gradients actor_gradient(const neural::MlpParams& actor,
                                 const neural::MlpParams& critic,
                                 const std::vector<Transition>& batch, double u_max) {
    if (batch.empty()) throw std::invalid_argument("actor_gradient: empty batch");
    const double n = static_cast<double>(batch.size());
    neural::Gradients grads = neural::zero_gradients(actor);
    for (const auto& t : batch) {
        neural::ForwardCache actor_cache;
        const double a = neural::forward(actor, t.obs, &actor_cache)[0];

        neural::ForwardCache critic_cache;
        neural::forward(critic, critic_input(t.obs, a, u_max), &critic_cache);
        std::vector<double> dq_dinput;
        const std::array<double, 1> one{1.0};
        neural::backward(critic, critic_cache, one, &dq_dinput);
        const double dq_da = dq_dinput[kFeatureDim] / u_max;

        // descend on -(1/N) sum Q, i.e. ascend on the mean Q
        const std::array<double, 1> dloss_da{-dq_da / n};
        neural::add_gradients(grads, neural::backward(actor, actor_cache, dloss_da));
    }
    return grads;
}

TrainStepDiag train_step(Networks& nets, neural::AdamState& actor_opt,
                         neural::AdamState& critic_opt,
                         const std::vector<Transition>& batch, const DdpgConfig& cfg) {
    if (batch.empty()) throw std::invalid_argument("train_step: empty batch");
    const double n = static_cast<double>(batch.size());

    const std::vector<double> y =
        critic_targets(batch, nets.target_actor, nets.target_critic, cfg.discount, cfg.u_max);

    // critic: one Adam step on (1/N) sum (Q(o_i, a_i) - y_i)^2
    TrainStepDiag diag;
    neural::Gradients critic_grads = neural::zero_gradients(nets.critic);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        neural::ForwardCache cache;
        const double q = neural::forward(
            nets.critic, critic_input(batch[i].obs, batch[i].action, cfg.u_max), &cache)[0];
        const double err = q - y[i];
        diag.critic_loss += err * err / n;
        diag.mean_q += q / n;
        const std::array<double, 1> dout{2.0 * err / n};
        neural::add_gradients(critic_grads, neural::backward(nets.critic, cache, dout));
    }
    neural::adam_update(nets.critic, critic_grads, critic_opt);

    // actor: ascend (1/N) sum Q(o_i, pi(o_i)) through the critic's action input
    neural::adam_update(nets.actor,
                        actor_gradient(nets.actor, nets.critic, batch, cfg.u_max),
                        actor_opt);

    soft_update(nets.critic, nets.target_critic, cfg.tau);
    soft_update(nets.actor, nets.target_actor, cfg.tau);
    return diag;
}

TrainResult train(env::Environment& environment, const DdpgConfig& cfg, Rng& rng,
                  const CheckpointFn& checkpoint) {
    cfg.validate();
    Rng init_rng(rng.next_seed());
    Rng env_rng(rng.next_seed());
    Rng noise_rng(rng.next_seed());
    Rng sample_rng(rng.next_seed());

    TrainResult result;
    result.nets = make_networks(cfg, init_rng);
    neural::AdamState actor_opt = neural::adam_init(result.nets.actor, cfg.actor_lr);
    neural::AdamState critic_opt = neural::adam_init(result.nets.critic, cfg.critic_lr);

    ReplayBuffer buffer(cfg.buffer_capacity);
    const std::size_t warmup =
        static_cast<std::size_t>(cfg.warmup_factor) * static_cast<std::size_t>(cfg.batch_size);

    OuNoise noise;
    noise.theta = cfg.noise_theta;

    for (int ep = 0; ep < cfg.episodes; ++ep) {
        // exponential decay from sigma0 to sigma_final across training
        const double frac = cfg.episodes > 1 ? static_cast<double>(ep) / (cfg.episodes - 1) : 0.0;
        noise.sigma = cfg.noise_sigma0 *
                      std::pow(cfg.noise_sigma_final / cfg.noise_sigma0, frac);
        noise.reset();

        auto [state, obs] = environment.reset(env_rng);
        ObsFeatures feat = obs_features(obs);

        EpisodeLog log;
        log.episode = ep;
        log.noise_sigma = noise.sigma;
        int updates = 0;

        for (int k = 0; k < cfg.steps_per_episode; ++k) {
            const double a = act(result.nets.actor, feat, noise.step(noise_rng), cfg.u_max);
            const auto sr = environment.step(a);
            const ObsFeatures next_feat = obs_features(sr.obs);

            buffer.push({feat, sr.applied_u, sr.reward, next_feat});
            log.episode_return += sr.reward;
            feat = next_feat;

            if (buffer.size() >= warmup) {
                auto batch = buffer.sample(static_cast<std::size_t>(cfg.batch_size), sample_rng);
                for (auto& t : batch) t.reward *= cfg.reward_scale;
                const auto diag = train_step(result.nets, actor_opt, critic_opt, batch, cfg);
                log.mean_critic_loss += diag.critic_loss;
                log.mean_q += diag.mean_q;
                ++updates;
            }
        }
        if (updates > 0) {
            log.mean_critic_loss /= updates;
            log.mean_q /= updates;
        }
        result.log.push_back(log);

        if (checkpoint && cfg.checkpoint_every > 0 && (ep + 1) % cfg.checkpoint_every == 0)
            checkpoint(ep + 1, result.nets);
    }
    return result;
}

} // namespace hvacrl::ddpg
