#include "hvacrl/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hvacrl::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config: empty key on line " +
                                                  std::to_string(lineno));
        if (c.values_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        c.values_[key] = value;
        c.consumed_[key] = false;
    }
    return c;
}

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_[key] = true;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' has non-numeric value '" +
                                 it->second + "'");
    }
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_[key] = true;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' has non-integer value '" +
                                 it->second + "'");
    }
}

std::vector<int> Config::get_int_list(const std::string& key,
                                      std::vector<int> fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_[key] = true;
    std::vector<int> out;
    std::istringstream ss(it->second);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            const std::string t = trim(field);
            out.push_back(std::stoi(t, &pos));
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw std::runtime_error("config: key '" + key + "' has a bad list entry '" +
                                     field + "'");
        }
    }
    if (out.empty())
        throw std::runtime_error("config: key '" + key + "' has an empty list");
    return out;
}

void Config::check_all_consumed() const {
    for (const auto& [key, used] : consumed_)
        if (!used) throw std::runtime_error("config: unknown key '" + key + "'");
}

thermal::CircuitParams circuit_params(const Config& c) {
    thermal::CircuitParams p;
    p.r1 = c.get_double("thermal.r1", p.r1);
    p.r2 = c.get_double("thermal.r2", p.r2);
    p.r3 = c.get_double("thermal.r3", p.r3);
    p.c1 = c.get_double("thermal.c1", p.c1);
    p.c2 = c.get_double("thermal.c2", p.c2);
    p.a = c.get_double("thermal.a", p.a);
    p.dt = c.get_double("thermal.dt", p.dt);
    p.validate();
    return p;
}

occupant::ComfortParams comfort_params(const Config& c) {
    occupant::ComfortParams p;
    p.t_cold = c.get_double("comfort.t_cold", p.t_cold);
    p.t_hot = c.get_double("comfort.t_hot", p.t_hot);
    p.s = c.get_double("comfort.s", p.s);
    p.validate();
    return p;
}

weather::SynthParams synth_params(const Config& c) {
    weather::SynthParams p;
    p.t_mean = c.get_double("weather.synth_t_mean", p.t_mean);
    p.t_swing = c.get_double("weather.synth_t_swing", p.t_swing);
    p.t_noise = c.get_double("weather.synth_t_noise", p.t_noise);
    p.t_day_sigma = c.get_double("weather.synth_t_day_sigma", p.t_day_sigma);
    p.s_peak = c.get_double("weather.synth_s_peak", p.s_peak);
    p.s_noise = c.get_double("weather.synth_s_noise", p.s_noise);
    p.s_jitter = c.get_double("weather.synth_s_jitter", p.s_jitter);
    p.sunrise = c.get_int("weather.synth_sunrise", p.sunrise);
    p.sunset = c.get_int("weather.synth_sunset", p.sunset);
    return p;
}

env::EnvConfig env_config(const Config& c) {
    env::EnvConfig e;
    e.u_max = c.get_double("env.u_max", e.u_max);
    e.episode_len = c.get_int("env.episode_len", e.episode_len);
    e.energy_weight_unoccupied =
        c.get_double("env.energy_weight_unoccupied", e.energy_weight_unoccupied);
    e.energy_weight_occupied =
        c.get_double("env.energy_weight_occupied", e.energy_weight_occupied);
    e.constraint_penalty = c.get_double("env.constraint_penalty", e.constraint_penalty);
    e.discomfort_penalty = c.get_double("env.discomfort_penalty", e.discomfort_penalty);
    e.comfort_band_lo = c.get_double("env.comfort_band_lo", e.comfort_band_lo);
    e.comfort_band_hi = c.get_double("env.comfort_band_hi", e.comfort_band_hi);
    e.init_t_lo = c.get_double("env.init_t_lo", e.init_t_lo);
    e.init_t_hi = c.get_double("env.init_t_hi", e.init_t_hi);
    e.validate();
    return e;
}

ddpg::DdpgConfig ddpg_config(const Config& c) {
    ddpg::DdpgConfig d;
    d.discount = c.get_double("ddpg.discount", d.discount);
    d.tau = c.get_double("ddpg.tau", d.tau);
    d.batch_size = c.get_int("ddpg.batch_size", d.batch_size);
    d.buffer_capacity = static_cast<std::size_t>(
        c.get_int("ddpg.buffer_capacity", static_cast<int>(d.buffer_capacity)));
    d.episodes = c.get_int("ddpg.episodes", d.episodes);
    d.hidden_widths = c.get_int_list("ddpg.hidden_widths", d.hidden_widths);
    d.actor_lr = c.get_double("ddpg.actor_lr", d.actor_lr);
    d.critic_lr = c.get_double("ddpg.critic_lr", d.critic_lr);
    d.noise_theta = c.get_double("ddpg.noise_theta", d.noise_theta);
    d.noise_sigma0 = c.get_double("ddpg.noise_sigma0", d.noise_sigma0);
    d.noise_sigma_final = c.get_double("ddpg.noise_sigma_final", d.noise_sigma_final);
    d.warmup_factor = c.get_int("ddpg.warmup_factor", d.warmup_factor);
    d.reward_scale = c.get_double("ddpg.reward_scale", d.reward_scale);
    d.checkpoint_every = c.get_int("ddpg.checkpoint_every", d.checkpoint_every);
    return d;
}

greedy::GreedyParams greedy_params(const Config& c) {
    greedy::GreedyParams g;
    g.target = c.get_double("greedy.target", g.target);
    g.tracking_weight = c.get_double("greedy.tracking_weight", g.tracking_weight);
    g.energy_weight = c.get_double("greedy.energy_weight", g.energy_weight);
    g.validate();
    return g;
}

HarnessConfig harness_config(const Config& c) {
    HarnessConfig h;
    h.days = c.get_int("harness.days", h.days);
    h.hist_bins = c.get_int("harness.hist_bins", h.hist_bins);
    h.synth_days = c.get_int("weather.synth_days", h.synth_days);
    if (h.days < 1) throw std::runtime_error("config: harness.days must be >= 1");
    if (h.hist_bins < 1) throw std::runtime_error("config: harness.hist_bins must be >= 1");
    if (h.synth_days < 1) throw std::runtime_error("config: weather.synth_days must be >= 1");
    return h;
}

FullConfig load_all(const Config& c) {
    FullConfig f;
    f.circuit = circuit_params(c);
    f.comfort = comfort_params(c);
    f.synth = synth_params(c);
    f.environment = env_config(c);
    f.ddpg = ddpg_config(c);
    f.greedy = greedy_params(c);
    f.harness = harness_config(c);
    c.check_all_consumed();

    // cross-module couplings
    f.ddpg.steps_per_episode = f.environment.episode_len;
    f.ddpg.u_max = f.environment.u_max;
    f.greedy.u_max = f.environment.u_max;
    f.ddpg.validate();
    return f;
}

} // namespace hvacrl::config
