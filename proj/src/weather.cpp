#include "hvacrl/weather.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hvacrl/csv.hpp"

namespace hvacrl::weather {

void BinSpec::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw std::invalid_argument("BinSpec: lo must be < hi");
    if (n < 1) throw std::invalid_argument("BinSpec: n must be >= 1");
}

BinValue discretize(double value, const BinSpec& spec) {
    spec.validate();
    if (!std::isfinite(value)) throw std::invalid_argument("discretize: non-finite value");
    int idx = static_cast<int>(std::floor((value - spec.lo) / spec.width()));
    idx = std::clamp(idx, 0, spec.n - 1);
    return {idx, spec.center(idx)};
}

namespace {

// Splits a trace into per-day value series and checks each day covers
// k = 0..143 in order. Returns (day index, 144 values) pairs sorted by day.
std::vector<std::pair<int, std::vector<double>>> day_series(
    const WeatherTrace& trace, double WeatherRecord::* field) {
    std::map<int, std::vector<double>> days;
    for (const auto& rec : trace) {
        auto& vals = days[rec.day];
        if (rec.k != static_cast<int>(vals.size()))
            throw std::invalid_argument("weather: day " + std::to_string(rec.day) +
                                        " does not advance k = 0..143 in order");
        if (!std::isfinite(rec.*field))
            throw std::invalid_argument("weather: non-finite value in trace");
        vals.push_back(rec.*field);
    }
    std::vector<std::pair<int, std::vector<double>>> out;
    for (auto& [day, vals] : days) {
        if (static_cast<int>(vals.size()) != kStepsPerDay)
            throw std::invalid_argument("weather: day " + std::to_string(day) +
                                        " has " + std::to_string(vals.size()) +
                                        " steps, expected 144");
        out.emplace_back(day, std::move(vals));
    }
    return out;
}

} // namespace

TimeChain estimate_chain(const WeatherTrace& trace, const BinSpec& spec,
                         double WeatherRecord::* field) {
    spec.validate();
    if (trace.empty()) throw std::invalid_argument("estimate_chain: empty trace");
    const auto days = day_series(trace, field);

    const int n = spec.n;
    std::vector<double> counts(static_cast<std::size_t>(kStepsPerDay) * n * n, 0.0);
    std::vector<double> init_counts(n, 0.0);
    auto at = [&](int k, int i, int j) -> double& {
        return counts[(static_cast<std::size_t>(k) * n + i) * n + j];
    };

    for (std::size_t d = 0; d < days.size(); ++d) {
        const auto& vals = days[d].second;
        init_counts[discretize(vals[0], spec).index] += 1.0;
        for (int k = 0; k + 1 < kStepsPerDay; ++k)
            at(k, discretize(vals[k], spec).index, discretize(vals[k + 1], spec).index) += 1.0;
        // midnight wrap, only between consecutive calendar days
        if (d + 1 < days.size() && days[d + 1].first == days[d].first + 1)
            at(kStepsPerDay - 1, discretize(vals[kStepsPerDay - 1], spec).index,
               discretize(days[d + 1].second[0], spec).index) += 1.0;
    }

    TimeChain chain;
    chain.n_bins = n;
    chain.transition.assign(counts.size(), 0.0);
    for (int k = 0; k < kStepsPerDay; ++k) {
        for (int i = 0; i < n; ++i) {
            double total = 0.0;
            for (int j = 0; j < n; ++j) total += at(k, i, j);
            auto row = chain.row(k, i);
            if (total == 0.0) {
                row[i] = 1.0;  // unobserved: stay put
            } else {
                for (int j = 0; j < n; ++j) row[j] = at(k, i, j) / total;
            }
        }
    }

    double init_total = 0.0;
    for (double c : init_counts) init_total += c;
    chain.initial.resize(n);
    for (int i = 0; i < n; ++i) chain.initial[i] = init_counts[i] / init_total;
    return chain;
}

namespace {

int sample_categorical(std::span<const double> probs, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        acc += probs[j];
        if (u < acc) return static_cast<int>(j);
    }
    return static_cast<int>(probs.size()) - 1;
}

} // namespace

int sample_initial_bin(const TimeChain& chain, Rng& rng) {
    return sample_categorical(chain.initial, rng);
}

int sample_next_bin(const TimeChain& chain, int k, int current, Rng& rng) {
    if (k < 0 || k >= kStepsPerDay) throw std::out_of_range("sample_next_bin: bad k");
    if (current < 0 || current >= chain.n_bins)
        throw std::out_of_range("sample_next_bin: bad bin");
    return sample_categorical(chain.row(k, current), rng);
}

std::vector<double> sample_day(const TimeChain& chain, const BinSpec& spec,
                               int initial_bin, Rng& rng) {
    spec.validate();
    if (spec.n != chain.n_bins) throw std::invalid_argument("sample_day: spec/chain mismatch");
    if (initial_bin < 0 || initial_bin >= chain.n_bins)
        throw std::out_of_range("sample_day: bad initial bin");
    std::vector<double> out(kStepsPerDay);
    int bin = initial_bin;
    out[0] = spec.center(bin);
    for (int k = 0; k + 1 < kStepsPerDay; ++k) {
        bin = sample_next_bin(chain, k, bin, rng);
        out[k + 1] = spec.center(bin);
    }
    return out;
}

WeatherTrace synth_trace(int days, Rng& rng, const SynthParams& p) {
    if (days < 1) throw std::invalid_argument("synth_trace: days must be >= 1");
    const auto t_spec = BinSpec::temperature();
    const auto s_spec = BinSpec::solar();
    WeatherTrace trace;
    trace.reserve(static_cast<std::size_t>(days) * kStepsPerDay);

    double day_offset = 0.0;
    for (int d = 0; d < days; ++d) {
        day_offset = 0.7 * day_offset + rng.normal(0.0, p.t_day_sigma);
        const double peak = std::clamp(p.s_peak * (1.0 + p.s_jitter * rng.normal()),
                                       0.3 * p.s_peak, s_spec.hi - 20.0);
        for (int k = 0; k < kStepsPerDay; ++k) {
            const double phase = 2.0 * std::numbers::pi * (k - 96) / kStepsPerDay;
            double t = p.t_mean + day_offset + p.t_swing * std::cos(phase) +
                       rng.normal(0.0, p.t_noise);
            t = std::clamp(t, t_spec.lo, t_spec.hi);

            double q = 0.0;
            if (k >= p.sunrise && k < p.sunset) {
                const double arg = std::numbers::pi * (k - p.sunrise) / (p.sunset - p.sunrise);
                q = peak * std::sin(arg) + rng.normal(0.0, p.s_noise);
                q = std::clamp(q, s_spec.lo, s_spec.hi);
            }
            trace.push_back({d, k, t, q});
        }
    }
    return trace;
}

void save_trace(const WeatherTrace& trace, const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.row("day", "k", "t_out", "q_solar");
    for (const auto& r : trace) w.row(r.day, r.k, r.t_out, r.q_solar);
}

WeatherTrace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("weather: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "day,k,t_out,q_solar")
        throw std::runtime_error("weather: bad header in " + path.string());
    WeatherTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = csv::split(line);
        if (f.size() != 4) throw std::runtime_error("weather: bad row in " + path.string());
        trace.push_back({csv::to_int(f[0]), csv::to_int(f[1]), csv::to_double(f[2]),
                         csv::to_double(f[3])});
    }
    return trace;
}

void save_chain(const TimeChain& chain, const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.row("k", "i", "j", "p");
    for (int j = 0; j < chain.n_bins; ++j) w.row(-1, 0, j, chain.initial[j]);
    for (int k = 0; k < kStepsPerDay; ++k)
        for (int i = 0; i < chain.n_bins; ++i) {
            const auto row = chain.row(k, i);
            for (int j = 0; j < chain.n_bins; ++j)
                if (row[j] != 0.0) w.row(k, i, j, row[j]);
        }
}

TimeChain load_chain(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("weather: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "k,i,j,p")
        throw std::runtime_error("weather: bad chain header in " + path.string());

    struct Entry { int k, i, j; double p; };
    std::vector<Entry> entries;
    int n_bins = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = csv::split(line);
        if (f.size() != 4) throw std::runtime_error("weather: bad chain row");
        Entry e{csv::to_int(f[0]), csv::to_int(f[1]), csv::to_int(f[2]), csv::to_double(f[3])};
        n_bins = std::max(n_bins, std::max(e.i, e.j) + 1);
        entries.push_back(e);
    }
    if (n_bins == 0) throw std::runtime_error("weather: empty chain file");

    TimeChain chain;
    chain.n_bins = n_bins;
    chain.transition.assign(static_cast<std::size_t>(kStepsPerDay) * n_bins * n_bins, 0.0);
    chain.initial.assign(n_bins, 0.0);
    for (const auto& e : entries) {
        if (e.k == -1) {
            chain.initial[e.j] = e.p;
        } else if (e.k >= 0 && e.k < kStepsPerDay) {
            chain.row(e.k, e.i)[e.j] = e.p;
        } else {
            throw std::runtime_error("weather: chain row with bad k");
        }
    }
    return chain;
}

} // namespace hvacrl::weather
