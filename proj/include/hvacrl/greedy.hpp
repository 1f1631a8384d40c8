#pragma once

#include "hvacrl/thermal.hpp"

namespace hvacrl::greedy {

/// One-step tracking/energy trade-off. Only the weight ratio matters.
struct GreedyParams {
    double target = 22.0;          // degC, comfort-probability peak
    double tracking_weight = 1.0;
    double energy_weight = 1e-5;
    double u_max = 1000.0;

    void validate() const;
};

/// Closed-form minimizer of
///   tracking_weight ([x']_air - target)^2 + energy_weight u^2,   |u| <= u_max,
/// where [x']_air is the one-step-ahead air temperature. Returns 0 when the
/// room is unoccupied. Requires the full state and disturbance.
double greedy_action(const thermal::ThermalState& x, const thermal::Disturbance& w,
                     int occupied, const thermal::StateMatrices& mats,
                     const GreedyParams& p);

} // namespace hvacrl::greedy
