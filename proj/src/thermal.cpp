#include "hvacrl/thermal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hvacrl::thermal {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("CircuitParams: ") + what);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void CircuitParams::validate() const {
    require(finite(r1) && r1 > 0.0, "r1 must be > 0");
    require(finite(r2) && r2 > 0.0, "r2 must be > 0");
    require(finite(r3) && r3 > 0.0, "r3 must be > 0");
    require(finite(c1) && c1 > 0.0, "c1 must be > 0");
    require(finite(c2) && c2 > 0.0, "c2 must be > 0");
    require(finite(a) && a >= 0.0 && a <= 1.0, "a must be in [0, 1]");
    require(finite(dt) && dt >= 0.0, "dt must be >= 0");
}

StateMatrices build_matrices(const CircuitParams& p) {
    p.validate();
    StateMatrices m;
    m.a[0][0] = 1.0 - p.dt / (p.c2 * p.r2) - p.dt / (p.c2 * p.r1);
    m.a[0][1] = p.dt / (p.c2 * p.r1);
    m.a[1][0] = p.dt / (p.c1 * p.r1);
    m.a[1][1] = 1.0 - p.dt / (p.c1 * p.r3) - p.dt / (p.c1 * p.r1);
    m.b[0] = p.dt / p.c2;
    m.b[1] = 0.0;
    m.d[0][0] = p.dt * (1.0 - p.a) / p.c2;
    m.d[0][1] = p.dt / p.c2;
    m.d[0][2] = p.dt / (p.c2 * p.r2);
    m.d[1][0] = p.dt * p.a / p.c1;
    m.d[1][1] = 0.0;
    m.d[1][2] = p.dt / (p.c1 * p.r3);
    return m;
}

ThermalState step(const ThermalState& x, double u, const Disturbance& w,
                  const StateMatrices& m) {
    if (!finite(x.t_air) || !finite(x.t_wall))
        throw std::invalid_argument("thermal::step: non-finite state");
    if (!finite(u))
        throw std::invalid_argument("thermal::step: non-finite input u");
    if (!finite(w.q_solar) || !finite(w.q_internal) || !finite(w.t_out))
        throw std::invalid_argument("thermal::step: non-finite disturbance");

    ThermalState next;
    next.t_air = m.a[0][0] * x.t_air + m.a[0][1] * x.t_wall + m.b[0] * u +
                 m.d[0][0] * w.q_solar + m.d[0][1] * w.q_internal + m.d[0][2] * w.t_out;
    next.t_wall = m.a[1][0] * x.t_air + m.a[1][1] * x.t_wall + m.b[1] * u +
                  m.d[1][0] * w.q_solar + m.d[1][1] * w.q_internal + m.d[1][2] * w.t_out;
    return next;
}

double spectral_radius(const StateMatrices& m) {
    // eigenvalues of [[a,b],[c,d]]: (tr +- sqrt(tr^2 - 4 det)) / 2
    const double tr = m.a[0][0] + m.a[1][1];
    const double det = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    const double l1 = std::abs((tr + disc) / 2.0);
    const double l2 = std::abs((tr - disc) / 2.0);
    return std::max(l1, l2);
}

ThermalState fixed_point(double u, const Disturbance& w, const StateMatrices& m) {
    // (I - A) x = B u + D w
    const double g0 = m.b[0] * u + m.d[0][0] * w.q_solar + m.d[0][1] * w.q_internal +
                      m.d[0][2] * w.t_out;
    const double g1 = m.b[1] * u + m.d[1][0] * w.q_solar + m.d[1][1] * w.q_internal +
                      m.d[1][2] * w.t_out;
    const double m00 = 1.0 - m.a[0][0];
    const double m01 = -m.a[0][1];
    const double m10 = -m.a[1][0];
    const double m11 = 1.0 - m.a[1][1];
    const double det = m00 * m11 - m01 * m10;
    if (det == 0.0) throw std::invalid_argument("thermal::fixed_point: singular I - A");
    return ThermalState{(g0 * m11 - g1 * m01) / det, (g1 * m00 - g0 * m10) / det};
}

} // namespace hvacrl::thermal
