#include "hvacrl/occupant.hpp"

#include <cmath>
#include <stdexcept>

namespace hvacrl::occupant {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_basic(const ComfortParams& p) {
    if (!std::isfinite(p.t_cold) || !std::isfinite(p.t_hot) || !(p.t_cold < p.t_hot))
        throw std::invalid_argument("ComfortParams: t_cold must be < t_hot");
    if (!std::isfinite(p.s) || !(p.s > 0.0))
        throw std::invalid_argument("ComfortParams: s must be > 0");
}

} // namespace

void ComfortParams::validate() const {
    check_basic(*this);
    for (int i = 0; i <= 5000; ++i) {
        const double t = 0.01 * i;
        const double p1 = logistic((t_cold - t) / s);
        const double p3 = logistic((t - t_hot) / s);
        if (!(p1 + p3 < 1.0))
            throw std::invalid_argument("ComfortParams: p1 + p3 >= 1 on [0, 50] grid");
    }
}

std::array<double, 3> comfort_pmf(double t_air, const ComfortParams& p) {
    check_basic(p);
    if (!std::isfinite(t_air))
        throw std::invalid_argument("comfort_pmf: non-finite t_air");
    const double p1 = logistic((p.t_cold - t_air) / p.s);
    const double p3 = logistic((t_air - p.t_hot) / p.s);
    return {p1, 1.0 - p1 - p3, p3};
}

int sample_comfort(double t_air, const ComfortParams& p, Rng& rng) {
    const auto pmf = comfort_pmf(t_air, p);
    const double u = rng.uniform();
    if (u < pmf[0]) return 1;
    if (u < pmf[0] + pmf[1]) return 2;
    return 3;
}

Schedule sample_schedule(Rng& rng) {
    Schedule s;
    s.arrive = static_cast<int>(rng.uniform_int(kArriveLo, kArriveHi));
    s.depart = static_cast<int>(rng.uniform_int(kDepartLo, kDepartHi));
    return s;
}

int occupancy(int k, const Schedule& s) {
    if (k < 0 || k >= kStepsPerDay)
        throw std::out_of_range("occupancy: k outside {0..143}");
    return (s.arrive <= k && k < s.depart) ? 1 : 0;
}

double internal_heat(int m) {
    if (m != 0 && m != 1)
        throw std::invalid_argument("internal_heat: occupancy must be 0 or 1");
    return 75.0 + 70.0 * m;
}

} // namespace hvacrl::occupant
