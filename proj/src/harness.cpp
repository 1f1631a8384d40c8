#include "hvacrl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hvacrl/csv.hpp"

namespace hvacrl::harness {

EpisodeResult run_episode(Policy& policy, env::Environment& environment, Rng& rng,
                          std::optional<thermal::ThermalState> carry_thermal) {
    environment.reset(rng, carry_thermal);
    const double dt = environment.circuit().dt;
    const auto& cfg = environment.config();

    EpisodeResult result;
    result.trace.reserve(cfg.episode_len);

    bool done = false;
    while (!done) {
        const env::FullState pre = environment.state();
        const env::Observation pre_obs = env::observe(pre);
        const double u = policy.act(pre, pre_obs, rng);
        const auto sr = environment.step(u);

        result.trace.push_back({pre.k, pre.thermal.t_air, pre.thermal.t_wall, pre.t_out,
                                pre.q_solar, pre.occupied, pre.comfort, sr.applied_u,
                                sr.reward});

        result.metrics.energy_kj += std::abs(sr.applied_u) * dt / 1000.0;
        result.metrics.episode_return += sr.reward;
        if (pre.occupied == 1) {
            ++result.metrics.occupied_steps;
            if (pre.comfort == 2) ++result.metrics.comfort_score;
            if (pre.thermal.t_air < cfg.comfort_band_lo ||
                pre.thermal.t_air > cfg.comfort_band_hi)
                ++result.metrics.violations;
        }
        done = sr.done;
    }
    return result;
}

DailyMetrics daily_metrics(const EpisodeTrace& trace, double dt_seconds, int episode_len,
                           double band_lo, double band_hi) {
    if (static_cast<int>(trace.size()) != episode_len)
        throw std::invalid_argument("daily_metrics: trace has " +
                                    std::to_string(trace.size()) + " rows, expected " +
                                    std::to_string(episode_len));
    DailyMetrics m;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& row = trace[i];
        if (row.k != static_cast<int>(i % env::kStepsPerDay))
            throw std::invalid_argument("daily_metrics: trace time index out of order");
        m.energy_kj += std::abs(row.u) * dt_seconds / 1000.0;
        m.episode_return += row.reward;
        if (row.occupied == 1) {
            ++m.occupied_steps;
            if (row.comfort == 2) ++m.comfort_score;
            if (row.t_air < band_lo || row.t_air > band_hi) ++m.violations;
        }
    }
    return m;
}

Summary summarize(const std::string& policy, const std::string& metric,
                  const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: no values");
    Summary s;
    s.policy = policy;
    s.metric = metric;
    s.n = static_cast<int>(values.size());
    for (double v : values) s.mean += v;
    s.mean /= s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / (s.n - 1));
    }
    const double half = 1.96 * s.stddev / std::sqrt(static_cast<double>(s.n));
    s.ci95_lo = s.mean - half;
    s.ci95_hi = s.mean + half;
    return s;
}

std::vector<HistBin> histogram(const std::vector<double>& values, int bins,
                               double lo, double hi) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    if (!(lo <= hi)) throw std::invalid_argument("histogram: lo must be <= hi");
    if (lo == hi) hi = lo + 1.0;  // degenerate range
    const double width = (hi - lo) / bins;
    std::vector<HistBin> out(bins);
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = lo + (b + 1) * width;
    }
    for (double v : values) {
        int b = static_cast<int>(std::floor((v - lo) / width));
        b = std::clamp(b, 0, bins - 1);
        ++out[b].count;
    }
    return out;
}

CompareResult compare(const std::vector<Policy*>& policies, const EnvSetup& setup,
                      int days, std::uint64_t seed) {
    if (policies.empty()) throw std::invalid_argument("compare: no policies");
    if (days < 1) throw std::invalid_argument("compare: days must be >= 1");

    CompareResult result;
    for (const Policy* p : policies)
        result.per_policy.push_back({p->name(), {}});

    for (int d = 0; d < days; ++d) {
        const std::uint64_t day_seed = derive_seed(seed, static_cast<std::uint64_t>(d));
        for (std::size_t pi = 0; pi < policies.size(); ++pi) {
            // reset() seeds the environment's own streams before the policy
            // touches the rng, so day d is matched across policies
            Rng day_rng(day_seed);
            env::Environment environment = setup.make_env();
            auto episode = run_episode(*policies[pi], environment, day_rng);
            result.per_policy[pi].days.push_back(episode.metrics);
        }
    }

    for (const auto& pm : result.per_policy) {
        auto collect = [&](auto proj) {
            std::vector<double> v;
            v.reserve(pm.days.size());
            for (const auto& m : pm.days) v.push_back(static_cast<double>(proj(m)));
            return v;
        };
        result.summaries.push_back(summarize(pm.policy, "energy_kj",
            collect([](const DailyMetrics& m) { return m.energy_kj; })));
        result.summaries.push_back(summarize(pm.policy, "comfort_score",
            collect([](const DailyMetrics& m) { return m.comfort_score; })));
        result.summaries.push_back(summarize(pm.policy, "occupied_steps",
            collect([](const DailyMetrics& m) { return m.occupied_steps; })));
        result.summaries.push_back(summarize(pm.policy, "violations",
            collect([](const DailyMetrics& m) { return m.violations; })));
        result.summaries.push_back(summarize(pm.policy, "return",
            collect([](const DailyMetrics& m) { return m.episode_return; })));
    }
    return result;
}

void write_metrics(const PolicyMetrics& pm, const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.row("day", "energy_kj", "comfort_score", "occupied_steps", "violations");
    for (std::size_t d = 0; d < pm.days.size(); ++d) {
        const auto& m = pm.days[d];
        w.row(d, m.energy_kj, m.comfort_score, m.occupied_steps, m.violations);
    }
}

void write_compare_outputs(const CompareResult& result,
                           const std::filesystem::path& out_dir, int hist_bins) {
    std::filesystem::create_directories(out_dir);
    for (const auto& pm : result.per_policy)
        write_metrics(pm, out_dir / ("metrics_" + pm.policy + ".csv"));

    // common bin range per metric so histograms are comparable across policies
    for (const std::string metric : {"energy_kj", "comfort_score"}) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        auto value_of = [&](const DailyMetrics& m) {
            return metric == "energy_kj" ? m.energy_kj
                                         : static_cast<double>(m.comfort_score);
        };
        for (const auto& pm : result.per_policy)
            for (const auto& m : pm.days) {
                const double v = value_of(m);
                lo = first ? v : std::min(lo, v);
                hi = first ? v : std::max(hi, v);
                first = false;
            }
        for (const auto& pm : result.per_policy) {
            std::vector<double> values;
            for (const auto& m : pm.days) values.push_back(value_of(m));
            const auto bins = histogram(values, hist_bins, lo, hi);
            csv::Writer w((out_dir / ("hist_" + metric + "_" + pm.policy + ".csv")).string());
            w.row("bin_lo", "bin_hi", "count");
            for (const auto& b : bins) w.row(b.lo, b.hi, b.count);
        }
    }

    csv::Writer w((out_dir / "summary.csv").string());
    w.row("policy", "metric", "n", "mean", "std", "ci95_lo", "ci95_hi");
    for (const auto& s : result.summaries)
        w.row(s.policy, s.metric, s.n, s.mean, s.stddev, s.ci95_lo, s.ci95_hi);
}

void write_trace(const EpisodeTrace& trace, const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.row("k", "t_air", "t_wall", "t_out", "q_solar", "occupied", "comfort", "u", "reward");
    for (const auto& r : trace)
        w.row(r.k, r.t_air, r.t_wall, r.t_out, r.q_solar, r.occupied, r.comfort, r.u,
              r.reward);
}

void write_training_log(const std::vector<ddpg::EpisodeLog>& log,
                        const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.row("episode", "return", "mean_critic_loss", "mean_q", "noise_sigma");
    for (const auto& e : log)
        w.row(e.episode, e.episode_return, e.mean_critic_loss, e.mean_q, e.noise_sigma);
}

void save_checkpoint(const ddpg::Networks& nets, const std::filesystem::path& path) {
    nlohmann::json j;
    j["version"] = 1;
    j["actor"] = nlohmann::json::parse(neural::mlp_to_json(nets.actor));
    j["critic"] = nlohmann::json::parse(neural::mlp_to_json(nets.critic));
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path.string());
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("checkpoint: write failed on " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("checkpoint: bad document in " + path.string() + ": " +
                                 e.what());
    }
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::runtime_error("checkpoint: unsupported version in " + path.string());
    Checkpoint ck;
    ck.actor = neural::mlp_from_json(j.at("actor").dump());
    ck.critic = neural::mlp_from_json(j.at("critic").dump());
    return ck;
}

} // namespace hvacrl::harness
