#include <doctest.h>

#include <cmath>

#include "hvacrl/greedy.hpp"
#include "hvacrl/rng.hpp"
#include "hvacrl/thermal.hpp"
#include "oracles.hpp"

using namespace hvacrl;
using greedy::GreedyParams;
using thermal::Disturbance;
using thermal::StateMatrices;
using thermal::ThermalState;

namespace {

double predicted_mean(const StateMatrices& m, const ThermalState& x, const Disturbance& w) {
    return m.a[0][0] * x.t_air + m.a[0][1] * x.t_wall + m.d[0][0] * w.q_solar +
           m.d[0][1] * w.q_internal + m.d[0][2] * w.t_out;
}

} // namespace

TEST_CASE("greedy: zero when unoccupied, zero when already on target") {
    const StateMatrices m = thermal::build_matrices(thermal::CircuitParams{});
    const GreedyParams p;

    CHECK(greedy::greedy_action({40.0, 40.0}, {800, 145, 38}, 0, m, p) == 0.0);

    // x = (22, 22), w = (0, 0, 22) predicts exactly 22, so u* ~ 0
    const double u = greedy::greedy_action({22.0, 22.0}, {0.0, 0.0, 22.0}, 1, m, p);
    CHECK(std::abs(u) < 1e-6);
}

TEST_CASE("greedy matches the grid-search oracle") {
    const StateMatrices m = thermal::build_matrices(thermal::CircuitParams{});
    const GreedyParams p;
    Rng rng(4242);
    for (int i = 0; i < 100; ++i) {
        const ThermalState x{rng.uniform(10.0, 45.0), rng.uniform(10.0, 45.0)};
        const Disturbance w{rng.uniform(0.0, 900.0), rng.uniform(0.0, 200.0),
                            rng.uniform(-10.0, 45.0)};
        const double closed = greedy::greedy_action(x, w, 1, m, p);
        const double grid = oracles::grid_search_action(
            predicted_mean(m, x, w), m.b[0], p.target, p.tracking_weight, p.energy_weight,
            p.u_max, 0.01);
        CHECK(std::abs(closed - grid) <= 0.01 + 1e-9);
    }
}

TEST_CASE("greedy sign, bound, and monotonicity properties") {
    const StateMatrices m = thermal::build_matrices(thermal::CircuitParams{});
    const GreedyParams p;
    Rng rng(11);

    for (int i = 0; i < 400; ++i) {
        const ThermalState x{rng.uniform(-5.0, 50.0), rng.uniform(-5.0, 50.0)};
        const Disturbance w{rng.uniform(0.0, 900.0), rng.uniform(0.0, 200.0),
                            rng.uniform(-20.0, 45.0)};
        const double mean = predicted_mean(m, x, w);
        const double u = greedy::greedy_action(x, w, 1, m, p);
        CHECK(std::abs(u) <= p.u_max);
        if (mean < p.target) CHECK(u >= 0.0);
        if (mean > p.target) CHECK(u <= 0.0);
    }

    // u* is nondecreasing in (target - mean): sweep the outdoor temperature
    double last_u = std::nan("");
    for (double t_out = 45.0; t_out >= -20.0; t_out -= 0.5) {
        const double u =
            greedy::greedy_action({25.0, 25.0}, {200.0, 145.0, t_out}, 1, m, p);
        if (!std::isnan(last_u)) CHECK(u >= last_u - 1e-12);
        last_u = u;
    }
}

TEST_CASE("greedy weight-ratio invariance") {
    const StateMatrices m = thermal::build_matrices(thermal::CircuitParams{});
    Rng rng(12);
    for (double scale : {0.25, 3.0, 1000.0}) {
        for (int i = 0; i < 50; ++i) {
            const ThermalState x{rng.uniform(10.0, 45.0), rng.uniform(10.0, 45.0)};
            const Disturbance w{rng.uniform(0.0, 900.0), rng.uniform(0.0, 200.0),
                                rng.uniform(-10.0, 45.0)};
            GreedyParams a;
            GreedyParams b;
            b.tracking_weight = a.tracking_weight * scale;
            b.energy_weight = a.energy_weight * scale;
            const double ua = greedy::greedy_action(x, w, 1, m, a);
            const double ub = greedy::greedy_action(x, w, 1, m, b);
            CHECK(ua == doctest::Approx(ub).epsilon(1e-12));
        }
    }
}

TEST_CASE("greedy input validation") {
    const StateMatrices m = thermal::build_matrices(thermal::CircuitParams{});
    const GreedyParams p;
    CHECK_THROWS_AS(greedy::greedy_action({std::nan(""), 22.0}, {0, 75, 22}, 1, m, p),
                    std::invalid_argument);
    CHECK_THROWS_AS(greedy::greedy_action({22.0, 22.0}, {0, 75, 22}, 2, m, p),
                    std::invalid_argument);
    GreedyParams bad;
    bad.u_max = 0.0;
    CHECK_THROWS_AS(greedy::greedy_action({22.0, 22.0}, {0, 75, 22}, 1, m, bad),
                    std::invalid_argument);
}
