#include "hvacrl/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvacrl::greedy {

void GreedyParams::validate() const {
    if (!std::isfinite(target)) throw std::invalid_argument("GreedyParams: bad target");
    if (!(tracking_weight >= 0.0))
        throw std::invalid_argument("GreedyParams: tracking_weight must be >= 0");
    if (!(energy_weight >= 0.0))
        throw std::invalid_argument("GreedyParams: energy_weight must be >= 0");
    if (!(u_max > 0.0)) throw std::invalid_argument("GreedyParams: u_max must be > 0");
}

double greedy_action(const thermal::ThermalState& x, const thermal::Disturbance& w,
                     int occupied, const thermal::StateMatrices& mats,
                     const GreedyParams& p) {
    p.validate();
    if (occupied != 0 && occupied != 1)
        throw std::invalid_argument("greedy_action: occupancy must be 0 or 1");
    if (occupied == 0) return 0.0;
    if (!std::isfinite(x.t_air) || !std::isfinite(x.t_wall) || !std::isfinite(w.q_solar) ||
        !std::isfinite(w.q_internal) || !std::isfinite(w.t_out))
        throw std::invalid_argument("greedy_action: non-finite input");

    // next air temperature is affine in u: mean + b0 u
    const double mean = mats.a[0][0] * x.t_air + mats.a[0][1] * x.t_wall +
                        mats.d[0][0] * w.q_solar + mats.d[0][1] * w.q_internal +
                        mats.d[0][2] * w.t_out;
    const double b0 = mats.b[0];
    const double denom = p.tracking_weight * b0 * b0 + p.energy_weight;
    if (denom == 0.0) return 0.0;
    const double u = p.tracking_weight * b0 * (p.target - mean) / denom;
    return std::clamp(u, -p.u_max, p.u_max);
}

} // namespace hvacrl::greedy
