#pragma once

#include <array>

namespace hvacrl::thermal {

/// RC circuit parameters of the office zone plus the Euler sampling time.
struct CircuitParams {
    double r1 = 0.0084197;  // air <-> mass node resistance (degC/W)
    double r2 = 0.044014;   // air <-> outdoor resistance (degC/W)
    double r3 = 4.38;       // mass node <-> outdoor resistance (degC/W)
    double c1 = 9861100.0;  // mass node capacitance (J/degC)
    double c2 = 128560.0;   // air node capacitance (J/degC)
    double a = 0.55;        // fraction of solar gain absorbed by the mass node
    double dt = 600.0;      // sampling time (s)

    // Throws std::invalid_argument naming the offending field.
    // dt = 0 is accepted and yields the zero-step identity matrices.
    void validate() const;
};

/// Dense one-step matrices: x' = A x + B u + D w.
struct StateMatrices {
    std::array<std::array<double, 2>, 2> a;
    std::array<double, 2> b;
    std::array<std::array<double, 3>, 2> d;
};

/// Continuous zone state: air temperature and aggregated mass temperature (degC).
struct ThermalState {
    double t_air = 0.0;
    double t_wall = 0.0;
};

/// Exogenous heat inputs: solar gain (W), internal gain (W), outdoor temperature (degC).
struct Disturbance {
    double q_solar = 0.0;
    double q_internal = 0.0;
    double t_out = 0.0;
};

StateMatrices build_matrices(const CircuitParams& params);

/// One Euler step. Pure; throws on non-finite inputs.
ThermalState step(const ThermalState& x, double u, const Disturbance& w,
                  const StateMatrices& m);

/// Largest eigenvalue magnitude of the 2x2 A matrix.
double spectral_radius(const StateMatrices& m);

/// Fixed point of x = A x + B u + D w via direct 2x2 solve.
ThermalState fixed_point(double u, const Disturbance& w, const StateMatrices& m);

} // namespace hvacrl::thermal
