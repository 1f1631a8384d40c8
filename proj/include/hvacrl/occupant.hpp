#pragma once

#include <array>

#include "hvacrl/rng.hpp"

namespace hvacrl::occupant {

// Comfort labels: 1 = cold, 2 = comfortable, 3 = hot.

/// Two-logistic comfort model. Defaults put the comfort peak at 22 degC.
struct ComfortParams {
    double t_cold = 20.0;  // lower boundary center (degC)
    double t_hot = 24.0;   // upper boundary center (degC)
    double s = 1.0;        // softness scale (degC)

    // Throws std::invalid_argument; includes a numeric check that
    // p1 + p3 < 1 over [0, 50] degC on a 0.01 grid.
    void validate() const;
};

/// Occupant presence window, in 10-minute step indices of the day.
struct Schedule {
    int arrive = 0;  // in {48..54}
    int depart = 0;  // in {96..114}
};

inline constexpr int kStepsPerDay = 144;
inline constexpr int kArriveLo = 48, kArriveHi = 54;
inline constexpr int kDepartLo = 96, kDepartHi = 114;

/// (p_cold, p_comfort, p_hot) at the given air temperature; sums to 1.
std::array<double, 3> comfort_pmf(double t_air, const ComfortParams& p);

/// Draws a comfort label in {1,2,3} from comfort_pmf.
int sample_comfort(double t_air, const ComfortParams& p, Rng& rng);

/// arrive uniform on {48..54}, depart uniform on {96..114}, independent.
Schedule sample_schedule(Rng& rng);

/// 1 iff arrive <= k < depart. Throws if k is outside {0..143}.
int occupancy(int k, const Schedule& s);

/// Appliance load plus occupant heat: 75 + 70 m (W).
double internal_heat(int m);

} // namespace hvacrl::occupant
