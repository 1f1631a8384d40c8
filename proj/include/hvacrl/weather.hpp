#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "hvacrl/rng.hpp"

namespace hvacrl::weather {

inline constexpr int kStepsPerDay = 144;

/// Equal-width binning of a bounded quantity.
struct BinSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 1;

    void validate() const;
    double width() const { return (hi - lo) / n; }
    double center(int i) const { return lo + (i + 0.5) * width(); }

    static BinSpec temperature() { return {10.0, 40.0, 6}; }
    static BinSpec solar() { return {0.0, 900.0, 9}; }
};

struct BinValue {
    int index;
    double center;
};

/// Lower-edge-inclusive binning; out-of-range values clamp to the edge bins.
BinValue discretize(double value, const BinSpec& spec);

/// Markov chain over value bins augmented with the periodic time-of-day step.
/// transition(k, i, j) is the probability of moving from bin i at step k to
/// bin j at step (k+1) mod 144. `initial` is the empirical bin distribution
/// at k = 0 in the training data.
struct TimeChain {
    int n_bins = 0;
    std::vector<double> transition;  // flat, size 144 * n_bins * n_bins
    std::vector<double> initial;     // size n_bins

    std::span<const double> row(int k, int i) const {
        return {transition.data() + (static_cast<std::size_t>(k) * n_bins + i) * n_bins,
                static_cast<std::size_t>(n_bins)};
    }
    std::span<double> row(int k, int i) {
        return {transition.data() + (static_cast<std::size_t>(k) * n_bins + i) * n_bins,
                static_cast<std::size_t>(n_bins)};
    }
};

/// One 10-minute weather sample.
struct WeatherRecord {
    int day = 0;
    int k = 0;
    double t_out = 0.0;
    double q_solar = 0.0;
};

using WeatherTrace = std::vector<WeatherRecord>;

/// Counts-based estimation. Rows with no observations get a self-transition
/// of 1. Transitions across midnight are counted between consecutive days.
TimeChain estimate_chain(const WeatherTrace& trace, const BinSpec& spec,
                         double WeatherRecord::* field);

/// Draws a bin index from a chain's initial distribution.
int sample_initial_bin(const TimeChain& chain, Rng& rng);

/// Draws one bin index from the row at (k, current).
int sample_next_bin(const TimeChain& chain, int k, int current, Rng& rng);

/// Length-144 sequence of bin centers starting from the given bin.
std::vector<double> sample_day(const TimeChain& chain, const BinSpec& spec,
                               int initial_bin, Rng& rng);

/// July-like synthetic generator standing in for a measured trace.
struct SynthParams {
    double t_mean = 27.0;      // degC
    double t_swing = 6.0;      // diurnal half-amplitude (degC)
    double t_noise = 1.0;      // per-step noise std (degC)
    double t_day_sigma = 2.0;  // day-offset noise std (degC)
    double s_peak = 700.0;     // midday solar peak (W)
    double s_noise = 30.0;     // per-step noise std (W)
    double s_jitter = 0.15;    // relative day-peak jitter
    int sunrise = 36;          // first daylight step (06:00)
    int sunset = 108;          // first dark evening step (18:00)
};

WeatherTrace synth_trace(int days, Rng& rng, const SynthParams& params = {});

// CSV persistence. Weather header: day,k,t_out,q_solar. Chain rows are
// k,i,j,p; rows with k = -1 carry the initial bin distribution.
void save_trace(const WeatherTrace& trace, const std::filesystem::path& path);
WeatherTrace load_trace(const std::filesystem::path& path);
void save_chain(const TimeChain& chain, const std::filesystem::path& path);
TimeChain load_chain(const std::filesystem::path& path);

} // namespace hvacrl::weather
