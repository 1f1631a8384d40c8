#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "hvacrl/rng.hpp"
#include "hvacrl/weather.hpp"

using namespace hvacrl;
using weather::BinSpec;
using weather::TimeChain;
using weather::WeatherRecord;
using weather::WeatherTrace;

namespace {

// One day of constant-value records.
void append_day(WeatherTrace& trace, int day, double t_out, double q_solar) {
    for (int k = 0; k < weather::kStepsPerDay; ++k)
        trace.push_back({day, k, t_out, q_solar});
}

} // namespace

TEST_CASE("discretize: edges, clamping, idempotence") {
    const BinSpec temp = BinSpec::temperature();
    CHECK(weather::discretize(14.0, temp).center == 12.5);
    CHECK(weather::discretize(14.0, temp).index == 0);
    CHECK(weather::discretize(15.0, temp).center == 17.5);  // lower edge inclusive
    CHECK(weather::discretize(42.0, temp).center == 37.5);  // clamps high
    CHECK(weather::discretize(-3.0, temp).center == 12.5);  // clamps low

    const BinSpec solar = BinSpec::solar();
    CHECK(weather::discretize(0.0, solar).center == 50.0);
    CHECK(weather::discretize(899.9, solar).center == 850.0);

    for (const BinSpec& spec : {temp, solar})
        for (int i = 0; i < spec.n; ++i)
            CHECK(weather::discretize(spec.center(i), spec).index == i);
}

TEST_CASE("estimate_chain: constant trace gives self-transitions") {
    WeatherTrace trace;
    append_day(trace, 0, 22.0, 0.0);
    const TimeChain chain =
        weather::estimate_chain(trace, BinSpec::temperature(), &WeatherRecord::t_out);
    // the observed bin self-transitions; unobserved rows fall back to staying put
    for (int k = 0; k < weather::kStepsPerDay; ++k)
        for (int i = 0; i < chain.n_bins; ++i) CHECK(chain.row(k, i)[i] == 1.0);
    CHECK(chain.initial[weather::discretize(22.0, BinSpec::temperature()).index] == 1.0);
}

TEST_CASE("estimate_chain: split successor counts") {
    // two days identical except the value after step 10: bin 2 then bin 3
    WeatherTrace trace;
    for (int day = 0; day < 2; ++day)
        for (int k = 0; k < weather::kStepsPerDay; ++k) {
            double v = 21.0;                    // bin 2
            if (k == 11 && day == 1) v = 26.0;  // bin 3
            trace.push_back({day, k, v, 0.0});
        }
    const TimeChain chain =
        weather::estimate_chain(trace, BinSpec::temperature(), &WeatherRecord::t_out);
    const auto row = chain.row(10, 2);
    CHECK(row[2] == 0.5);
    CHECK(row[3] == 0.5);
    for (int j = 0; j < chain.n_bins; ++j)
        if (j != 2 && j != 3) CHECK(row[j] == 0.0);
}

TEST_CASE("estimate_chain: every row sums to 1") {
    Rng rng(2024);
    const WeatherTrace trace = weather::synth_trace(31, rng);
    for (auto field : {&WeatherRecord::t_out, &WeatherRecord::q_solar}) {
        const BinSpec spec =
            field == &WeatherRecord::t_out ? BinSpec::temperature() : BinSpec::solar();
        const TimeChain chain = weather::estimate_chain(trace, spec, field);
        for (int k = 0; k < weather::kStepsPerDay; ++k)
            for (int i = 0; i < chain.n_bins; ++i) {
                double sum = 0.0;
                for (double p : chain.row(k, i)) {
                    CHECK(p >= 0.0);
                    sum += p;
                }
                CHECK(std::abs(sum - 1.0) < 1e-12);
            }
        double init_sum = 0.0;
        for (double p : chain.initial) init_sum += p;
        CHECK(std::abs(init_sum - 1.0) < 1e-12);
    }
}

TEST_CASE("estimate_chain rejects empty and ragged input") {
    CHECK_THROWS_AS(
        weather::estimate_chain({}, BinSpec::temperature(), &WeatherRecord::t_out),
        std::invalid_argument);
    WeatherTrace short_day;
    for (int k = 0; k < 100; ++k) short_day.push_back({0, k, 20.0, 0.0});
    CHECK_THROWS_AS(
        weather::estimate_chain(short_day, BinSpec::temperature(), &WeatherRecord::t_out),
        std::invalid_argument);
}

TEST_CASE("estimate_chain is invariant to day order in the input") {
    Rng rng(5);
    const WeatherTrace trace = weather::synth_trace(5, rng);
    const TimeChain a =
        weather::estimate_chain(trace, BinSpec::temperature(), &WeatherRecord::t_out);

    // same records with whole days presented in reverse order
    WeatherTrace reordered;
    for (int day = 4; day >= 0; --day)
        for (int k = 0; k < weather::kStepsPerDay; ++k)
            reordered.push_back(trace[static_cast<std::size_t>(day) * weather::kStepsPerDay + k]);
    const TimeChain b =
        weather::estimate_chain(reordered, BinSpec::temperature(), &WeatherRecord::t_out);
    CHECK(a.transition == b.transition);
    CHECK(a.initial == b.initial);
}

TEST_CASE("sample_day: self-transition chain is constant, seeded draws repeat") {
    TimeChain chain;
    chain.n_bins = 3;
    chain.transition.assign(144 * 3 * 3, 0.0);
    for (int k = 0; k < weather::kStepsPerDay; ++k)
        for (int i = 0; i < 3; ++i) chain.row(k, i)[i] = 1.0;
    chain.initial = {0.0, 1.0, 0.0};

    const BinSpec spec{0.0, 3.0, 3};
    Rng rng(1);
    const auto day = weather::sample_day(chain, spec, 1, rng);
    REQUIRE(day.size() == 144);
    for (double v : day) CHECK(v == spec.center(1));

    Rng a(9), b(9);
    CHECK(weather::sample_day(chain, spec, 2, a) == weather::sample_day(chain, spec, 2, b));
}

TEST_CASE("sample_day frequencies match the chain") {
    // two-bin chain estimated from crafted alternating traces
    WeatherTrace trace;
    Rng gen(31337);
    const BinSpec spec{0.0, 2.0, 2};
    for (int day = 0; day < 200; ++day)
        for (int k = 0; k < weather::kStepsPerDay; ++k)
            trace.push_back({day, k, gen.uniform() < 0.4 ? 0.5 : 1.5, 0.0});
    const TimeChain chain = weather::estimate_chain(trace, spec, &WeatherRecord::t_out);

    const int days = 30000;
    std::vector<double> counts(144 * 2 * 2, 0.0), visits(144 * 2, 0.0);
    Rng rng(99);
    for (int d = 0; d < days; ++d) {
        const auto day = weather::sample_day(chain, spec, weather::sample_initial_bin(chain, rng), rng);
        for (int k = 0; k + 1 < weather::kStepsPerDay; ++k) {
            const int i = weather::discretize(day[k], spec).index;
            const int j = weather::discretize(day[k + 1], spec).index;
            counts[(k * 2 + i) * 2 + j] += 1.0;
            visits[k * 2 + i] += 1.0;
        }
    }
    for (int k = 0; k + 1 < weather::kStepsPerDay; ++k)
        for (int i = 0; i < 2; ++i) {
            if (visits[k * 2 + i] < 1000) continue;
            for (int j = 0; j < 2; ++j) {
                const double freq = counts[(k * 2 + i) * 2 + j] / visits[k * 2 + i];
                CHECK(std::abs(freq - chain.row(k, i)[j]) < 0.02);
            }
        }
}

TEST_CASE("synth_trace: night solar, clipping, pipeline smoke") {
    Rng rng(4);
    const WeatherTrace trace = weather::synth_trace(31, rng);
    REQUIRE(trace.size() == 31u * weather::kStepsPerDay);
    for (const auto& rec : trace) {
        if (rec.k == 0) CHECK(rec.q_solar == 0.0);
        CHECK(rec.t_out >= 10.0);
        CHECK(rec.t_out <= 40.0);
        CHECK(rec.q_solar >= 0.0);
        CHECK(rec.q_solar <= 900.0);
    }
    CHECK_THROWS_AS(weather::synth_trace(0, rng), std::invalid_argument);
}

TEST_CASE("trace and chain CSV round-trips") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hvacrl_weather_test";
    fs::create_directories(dir);

    Rng rng(8);
    const WeatherTrace trace = weather::synth_trace(3, rng);
    weather::save_trace(trace, dir / "w.csv");
    const WeatherTrace loaded = weather::load_trace(dir / "w.csv");
    REQUIRE(loaded.size() == trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(loaded[i].day == trace[i].day);
        CHECK(loaded[i].k == trace[i].k);
        CHECK(loaded[i].t_out == trace[i].t_out);
        CHECK(loaded[i].q_solar == trace[i].q_solar);
    }

    const TimeChain chain =
        weather::estimate_chain(trace, BinSpec::temperature(), &WeatherRecord::t_out);
    weather::save_chain(chain, dir / "c.csv");
    const TimeChain chain2 = weather::load_chain(dir / "c.csv");
    CHECK(chain2.n_bins == chain.n_bins);
    CHECK(chain2.transition == chain.transition);
    CHECK(chain2.initial == chain.initial);

    fs::remove_all(dir);
}
