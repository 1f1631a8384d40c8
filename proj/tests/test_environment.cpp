#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hvacrl/environment.hpp"
#include "test_support.hpp"

using namespace hvacrl;
using env::EnvConfig;
using env::FullState;
using env::Observation;

TEST_CASE("observe projects exactly (t_air, k, occupied)") {
    FullState s;
    s.thermal = {24.3, 28.0};
    s.comfort = 1;
    s.k = 57;
    s.t_out = 35.0;
    s.q_solar = 850.0;
    s.occupied = 1;

    const Observation o = env::observe(s);
    CHECK(o.t_air == 24.3);
    CHECK(o.k == 57);
    CHECK(o.occupied == 1);

    // hidden components do not leak
    FullState s2 = s;
    s2.thermal.t_wall = -10.0;
    s2.comfort = 3;
    s2.t_out = 12.5;
    s2.q_solar = 50.0;
    const Observation o2 = env::observe(s2);
    CHECK(o2.t_air == o.t_air);
    CHECK(o2.k == o.k);
    CHECK(o2.occupied == o.occupied);
}

TEST_CASE("cost reproduces the three reference cases bit-exactly") {
    const EnvConfig cfg;
    FullState s;

    s.occupied = 0;
    CHECK(env::cost(s, 100.0, cfg) == 10.0);

    s.occupied = 1;
    s.thermal.t_air = 25.0;
    s.comfort = 2;
    CHECK(env::cost(s, 0.0, cfg) == 0.0);

    s.thermal.t_air = 19.5;
    s.comfort = 1;
    CHECK(env::cost(s, 100.0, cfg) == 300.1);
}

TEST_CASE("cost band edges and comfort cases") {
    const EnvConfig cfg;
    FullState s;
    s.occupied = 1;
    s.comfort = 2;
    s.thermal.t_air = 20.0;
    CHECK(env::cost(s, 0.0, cfg) == 0.0);  // band is inclusive
    s.thermal.t_air = 30.0;
    CHECK(env::cost(s, 0.0, cfg) == 0.0);
    s.thermal.t_air = 30.5;
    CHECK(env::cost(s, 0.0, cfg) == 200.0);
    s.thermal.t_air = 25.0;
    s.comfort = 3;
    CHECK(env::cost(s, 0.0, cfg) == 100.0);
}

TEST_CASE("reset: k = 0, unoccupied, seeded determinism") {
    auto setup = test_support::make_setup();
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
        auto environment = setup.make_env();
        Rng rng(seed);
        const auto r = environment.reset(rng);
        CHECK(r.state.k == 0);
        CHECK(r.state.occupied == 0);
        CHECK(r.obs.k == 0);
        CHECK(r.obs.occupied == 0);
        CHECK(r.state.thermal.t_air >= 20.0);
        CHECK(r.state.thermal.t_air <= 26.0);
        CHECK(r.state.thermal.t_wall >= 20.0);
        CHECK(r.state.thermal.t_wall <= 26.0);
    }

    auto env_a = setup.make_env();
    auto env_b = setup.make_env();
    Rng ra(7), rb(7);
    const auto a = env_a.reset(ra);
    const auto b = env_b.reset(rb);
    CHECK(a.state.thermal.t_air == b.state.thermal.t_air);
    CHECK(a.state.thermal.t_wall == b.state.thermal.t_wall);
    CHECK(a.state.comfort == b.state.comfort);
    CHECK(a.state.t_out == b.state.t_out);
    CHECK(a.state.q_solar == b.state.q_solar);
}

TEST_CASE("reset: initial air temperature mean is 23") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    Rng rng(31);
    double mean = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) mean += environment.reset(rng).state.thermal.t_air;
    mean /= n;
    CHECK(std::abs(mean - 23.0) < 0.1);
}

TEST_CASE("step requires reset; non-finite action rejected; clamping") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    CHECK_THROWS_AS(environment.step(0.0), std::logic_error);

    Rng rng(5);
    environment.reset(rng);
    CHECK_THROWS_AS(environment.step(std::nan("")), std::invalid_argument);

    // u beyond the bound behaves exactly like the clamped value
    auto env_a = setup.make_env();
    auto env_b = setup.make_env();
    Rng ra(17), rb(17);
    env_a.reset(ra);
    env_b.reset(rb);
    const auto sa = env_a.step(5000.0);
    const auto sb = env_b.step(1000.0);
    CHECK(sa.applied_u == 1000.0);
    CHECK(sb.applied_u == 1000.0);
    CHECK(sa.state.thermal.t_air == sb.state.thermal.t_air);
    CHECK(sa.reward == sb.reward);
}

TEST_CASE("deterministic sub-case: next t_air equals the thermal step exactly") {
    auto setup = test_support::make_pinned_setup();
    auto environment = setup.make_env();
    Rng rng(11);
    environment.reset(rng);
    const auto mats = thermal::build_matrices(setup.circuit);

    for (double u : {0.0, 350.0, -900.0}) {
        const FullState pre = environment.state();
        const thermal::Disturbance w{pre.q_solar, occupant::internal_heat(pre.occupied),
                                     pre.t_out};
        const thermal::ThermalState want = thermal::step(pre.thermal, u, w, mats);
        const auto sr = environment.step(u);
        CHECK(sr.state.thermal.t_air == want.t_air);
        CHECK(sr.state.thermal.t_wall == want.t_wall);
    }
}

TEST_CASE("reward is the negative pre-transition cost and never positive") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    Rng rng(13);
    environment.reset(rng);
    for (int k = 0; k < 144; ++k) {
        const FullState pre = environment.state();
        const double u = rng.uniform(-1200.0, 1200.0);
        const double uc = std::clamp(u, -1000.0, 1000.0);
        const double want = -environment.cost(pre, uc);
        const auto sr = environment.step(u);
        CHECK(sr.reward == want);
        CHECK(sr.reward <= 0.0);
    }
}

TEST_CASE("episode runs exactly episode_len steps and state fields stay valid") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    Rng rng(21);
    environment.reset(rng);
    int steps = 0;
    bool done = false;
    while (!done) {
        const auto sr = environment.step(0.0);
        ++steps;
        done = sr.done;
        CHECK(sr.state.k == steps % 144);
        CHECK((sr.state.occupied == 0 || sr.state.occupied == 1));
        CHECK(sr.state.comfort >= 1);
        CHECK(sr.state.comfort <= 3);
        // observation is exactly the projection of the state
        CHECK(sr.obs.t_air == sr.state.thermal.t_air);
        CHECK(sr.obs.k == sr.state.k);
        CHECK(sr.obs.occupied == sr.state.occupied);
        REQUIRE(steps <= 144);
    }
    CHECK(steps == 144);
}

TEST_CASE("fixed seed reproduces the full trajectory bit-identically") {
    auto setup = test_support::make_setup();
    auto run = [&](std::uint64_t seed) {
        auto environment = setup.make_env();
        Rng rng(seed);
        environment.reset(rng);
        std::vector<double> path;
        Rng action_rng(seed + 1);
        for (int k = 0; k < 144; ++k) {
            const auto sr = environment.step(action_rng.uniform(-500, 500));
            path.push_back(sr.state.thermal.t_air);
            path.push_back(sr.state.thermal.t_wall);
            path.push_back(sr.state.t_out);
            path.push_back(sr.state.q_solar);
            path.push_back(static_cast<double>(sr.state.comfort));
            path.push_back(sr.reward);
        }
        return path;
    };
    CHECK(run(42) == run(42));
}

TEST_CASE("open loop: u = 0 trajectory matches a standalone thermal rollout") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    Rng rng(33);
    const auto r0 = environment.reset(rng);
    const auto mats = thermal::build_matrices(setup.circuit);

    thermal::ThermalState x = r0.state.thermal;
    FullState pre = environment.state();
    for (int k = 0; k < 144; ++k) {
        const thermal::Disturbance w{pre.q_solar, occupant::internal_heat(pre.occupied),
                                     pre.t_out};
        x = thermal::step(x, 0.0, w, mats);
        const auto sr = environment.step(0.0);
        CHECK(std::abs(sr.state.thermal.t_air - x.t_air) < 1e-10);
        CHECK(std::abs(sr.state.thermal.t_wall - x.t_wall) < 1e-10);
        pre = sr.state;
    }
}

TEST_CASE("carry_thermal keeps the thermal state across day boundaries") {
    auto setup = test_support::make_setup();
    auto environment = setup.make_env();
    Rng rng(3);
    environment.reset(rng);
    for (int k = 0; k < 144; ++k) environment.step(-200.0);
    const thermal::ThermalState end = environment.state().thermal;

    const auto r = environment.reset(rng, end);
    CHECK(r.state.thermal.t_air == end.t_air);
    CHECK(r.state.thermal.t_wall == end.t_wall);
    CHECK(r.state.k == 0);
}

TEST_CASE("config validation") {
    EnvConfig cfg;
    cfg.u_max = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = EnvConfig{};
    cfg.episode_len = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = EnvConfig{};
    cfg.constraint_penalty = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_NOTHROW(EnvConfig{}.validate());
}
