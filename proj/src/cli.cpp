#include "hvacrl/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "hvacrl/config.hpp"
#include "hvacrl/harness.hpp"

namespace hvacrl::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

config::FullConfig load_config(const GlobalOpts& g) {
    if (g.config_path.empty()) return config::load_all(config::Config{});
    return config::load_all(config::Config::from_file(g.config_path));
}

// Weather chains either estimated from a trace file or from a synthesized
// trace (seeded independently of the run seed).
harness::EnvSetup build_setup(const std::string& weather_path,
                              const config::FullConfig& cfg, std::uint64_t seed) {
    weather::WeatherTrace trace;
    if (!weather_path.empty()) {
        trace = weather::load_trace(weather_path);
    } else {
        Rng rng(derive_seed(seed, 0x57454154u));  // weather substream
        trace = weather::synth_trace(cfg.harness.synth_days, rng, cfg.synth);
    }
    harness::EnvSetup setup;
    setup.env_cfg = cfg.environment;
    setup.circuit = cfg.circuit;
    setup.comfort = cfg.comfort;
    setup.t_chain = std::make_shared<weather::TimeChain>(weather::estimate_chain(
        trace, weather::BinSpec::temperature(), &weather::WeatherRecord::t_out));
    setup.s_chain = std::make_shared<weather::TimeChain>(weather::estimate_chain(
        trace, weather::BinSpec::solar(), &weather::WeatherRecord::q_solar));
    return setup;
}

int cmd_synth_weather(const GlobalOpts& g, int days, const std::string& output) {
    const auto cfg = load_config(g);
    Rng rng(derive_seed(g.seed, 0x57454154u));
    const auto trace = weather::synth_trace(days, rng, cfg.synth);
    fs::create_directories(g.out_dir);
    const fs::path path = output.empty() ? fs::path(g.out_dir) / "weather.csv"
                                         : fs::path(output);
    weather::save_trace(trace, path);
    std::cout << "wrote " << trace.size() << " rows to " << path.string() << "\n";
    return 0;
}

int cmd_estimate_chain(const GlobalOpts& g, const std::string& weather_path) {
    const auto trace = weather::load_trace(weather_path);
    const auto t_chain = weather::estimate_chain(trace, weather::BinSpec::temperature(),
                                                 &weather::WeatherRecord::t_out);
    const auto s_chain = weather::estimate_chain(trace, weather::BinSpec::solar(),
                                                 &weather::WeatherRecord::q_solar);
    fs::create_directories(g.out_dir);
    const fs::path t_path = fs::path(g.out_dir) / "chain_temperature.csv";
    const fs::path s_path = fs::path(g.out_dir) / "chain_solar.csv";
    weather::save_chain(t_chain, t_path);
    weather::save_chain(s_chain, s_path);
    std::cout << "wrote " << t_path.string() << " and " << s_path.string() << "\n";
    return 0;
}

int cmd_train(const GlobalOpts& g, const std::string& weather_path) {
    const auto cfg = load_config(g);
    auto setup = build_setup(weather_path, cfg, g.seed);

    fs::create_directories(g.out_dir);
    auto environment = setup.make_env();
    Rng rng(g.seed);

    ddpg::CheckpointFn checkpoint_fn;
    if (cfg.ddpg.checkpoint_every > 0)
        checkpoint_fn = [&](int episode, const ddpg::Networks& nets) {
            harness::save_checkpoint(
                nets, fs::path(g.out_dir) / ("checkpoint_ep" + std::to_string(episode) + ".json"));
        };

    const auto result = ddpg::train(environment, cfg.ddpg, rng, checkpoint_fn);
    harness::write_training_log(result.log, fs::path(g.out_dir) / "training_log.csv");
    harness::save_checkpoint(result.nets, fs::path(g.out_dir) / "checkpoint.json");
    std::cout << "trained " << cfg.ddpg.episodes << " episodes; wrote "
              << (fs::path(g.out_dir) / "checkpoint.json").string() << "\n";
    return 0;
}

std::unique_ptr<harness::Policy> make_policy(const std::string& name,
                                             const harness::EnvSetup& setup,
                                             const config::FullConfig& cfg,
                                             const std::string& checkpoint_path) {
    if (name == "zero") return std::make_unique<harness::ZeroPolicy>();
    if (name == "random")
        return std::make_unique<harness::RandomPolicy>(setup.env_cfg.u_max);
    if (name == "greedy")
        return std::make_unique<harness::GreedyPolicy>(
            thermal::build_matrices(setup.circuit), cfg.greedy);
    if (name == "ddpg") {
        if (checkpoint_path.empty())
            throw std::runtime_error("policy 'ddpg' requires --checkpoint <path>");
        if (!fs::exists(checkpoint_path))
            throw std::runtime_error("checkpoint not found: " + checkpoint_path);
        auto ck = harness::load_checkpoint(checkpoint_path);
        return std::make_unique<harness::DdpgPolicy>(std::move(ck.actor),
                                                     setup.env_cfg.u_max);
    }
    throw std::runtime_error("unknown policy '" + name +
                             "' (expected ddpg|greedy|zero|random)");
}

int cmd_evaluate(const GlobalOpts& g, const std::string& weather_path,
                 const std::string& policy_name, const std::string& checkpoint_path,
                 int days, int traces, bool week) {
    const auto cfg = load_config(g);
    const auto setup = build_setup(weather_path, cfg, g.seed);
    auto policy = make_policy(policy_name, setup, cfg, checkpoint_path);
    fs::create_directories(g.out_dir);

    if (week) {
        // seven chained days with persistent thermal state
        std::optional<thermal::ThermalState> carry;
        Rng rng(derive_seed(g.seed, 7));
        for (int d = 0; d < 7; ++d) {
            auto environment = setup.make_env();
            const auto episode = harness::run_episode(*policy, environment, rng, carry);
            carry = environment.state().thermal;
            harness::write_trace(episode.trace,
                                 fs::path(g.out_dir) / ("trace_" + policy->name() + "_" +
                                                        std::to_string(d) + ".csv"));
        }
        std::cout << "wrote 7 chained day traces for policy " << policy->name() << "\n";
        return 0;
    }

    harness::PolicyMetrics pm{policy->name(), {}};
    for (int d = 0; d < days; ++d) {
        Rng rng(derive_seed(g.seed, static_cast<std::uint64_t>(d)));
        auto environment = setup.make_env();
        const auto episode = harness::run_episode(*policy, environment, rng);
        pm.days.push_back(episode.metrics);
        if (d < traces)
            harness::write_trace(episode.trace,
                                 fs::path(g.out_dir) / ("trace_" + policy->name() + "_" +
                                                        std::to_string(d) + ".csv"));
    }
    harness::write_metrics(pm, fs::path(g.out_dir) / ("metrics_" + policy->name() + ".csv"));
    std::cout << "evaluated " << days << " days for policy " << policy->name() << "\n";
    return 0;
}

int cmd_compare(const GlobalOpts& g, const std::string& weather_path,
                const std::string& policies_arg, const std::string& checkpoint_path,
                int days) {
    const auto cfg = load_config(g);
    const auto setup = build_setup(weather_path, cfg, g.seed);

    std::vector<std::unique_ptr<harness::Policy>> owned;
    std::vector<harness::Policy*> policies;
    std::string name;
    std::istringstream ss(policies_arg);
    while (std::getline(ss, name, ',')) {
        owned.push_back(make_policy(name, setup, cfg, checkpoint_path));
        policies.push_back(owned.back().get());
    }
    if (policies.empty()) throw std::runtime_error("compare: no policies given");

    const int run_days = days > 0 ? days : cfg.harness.days;
    const auto result = harness::compare(policies, setup, run_days, g.seed);
    harness::write_compare_outputs(result, g.out_dir, cfg.harness.hist_bins);
    std::cout << "compared " << policies.size() << " policies over " << run_days
              << " days; outputs in " << g.out_dir << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"office HVAC reinforcement-learning workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--config", g.config_path, "flat key = value configuration file");
    app.add_option("--seed", g.seed, "master seed (all outputs are functions of it)");
    app.add_option("--out", g.out_dir, "output directory");

    auto* synth = app.add_subcommand("synth-weather", "generate a synthetic weather trace");
    int synth_days = 31;
    std::string synth_output;
    synth->add_option("--days", synth_days, "number of days");
    synth->add_option("--output", synth_output, "output CSV path");

    auto* estimate = app.add_subcommand("estimate-chain",
                                        "estimate time-augmented Markov chains from a trace");
    std::string est_weather;
    estimate->add_option("--weather", est_weather, "weather trace CSV")->required();

    auto* train = app.add_subcommand("train", "train the DDPG policy");
    std::string train_weather;
    train->add_option("--weather", train_weather,
                      "weather trace CSV (synthesized when omitted)");

    auto* evaluate = app.add_subcommand("evaluate", "run evaluation episodes for one policy");
    std::string eval_weather, eval_policy = "ddpg", eval_checkpoint;
    int eval_days = 100, eval_traces = 0;
    bool eval_week = false;
    evaluate->add_option("--weather", eval_weather, "weather trace CSV");
    evaluate->add_option("--policy", eval_policy, "ddpg|greedy|zero|random");
    evaluate->add_option("--checkpoint", eval_checkpoint, "actor/critic checkpoint JSON");
    evaluate->add_option("--days", eval_days, "evaluation days");
    evaluate->add_option("--traces", eval_traces, "write traces for the first N days");
    evaluate->add_flag("--week", eval_week, "run seven chained days and write their traces");

    auto* cmp = app.add_subcommand("compare", "paired comparison of policies");
    std::string cmp_weather, cmp_policies = "greedy,zero", cmp_checkpoint;
    int cmp_days = 0;
    cmp->add_option("--weather", cmp_weather, "weather trace CSV");
    cmp->add_option("--policies", cmp_policies, "comma list of ddpg|greedy|zero|random");
    cmp->add_option("--checkpoint", cmp_checkpoint, "checkpoint for the ddpg policy");
    cmp->add_option("--days", cmp_days, "evaluation days per policy");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));  // CLI11 consumes a reversed vector
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth->parsed()) return cmd_synth_weather(g, synth_days, synth_output);
        if (estimate->parsed()) return cmd_estimate_chain(g, est_weather);
        if (train->parsed()) return cmd_train(g, train_weather);
        if (evaluate->parsed())
            return cmd_evaluate(g, eval_weather, eval_policy, eval_checkpoint, eval_days,
                                eval_traces, eval_week);
        if (cmp->parsed())
            return cmd_compare(g, cmp_weather, cmp_policies, cmp_checkpoint, cmp_days);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}

} // namespace hvacrl::cli
