#pragma once

// Ideal-gas (Boyle-Mariotte) thermodynamics for the 2D compressible Euler
// system: p = rho*theta, e = c_v*theta, s = c_v*log(theta) - log(rho).
// All quantities nondimensional.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wild {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    bool operator==(const Vec2& o) const = default;

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }

struct ThermoParams {
    double c_v = 2.5;  // specific heat, must exceed 1

    // gamma is always derived so (c_v, gamma) cannot drift apart
    double gamma() const { return 1.0 + 1.0 / c_v; }

    void validate() const {
        if (!(c_v > 1.0))
            throw std::domain_error("ThermoParams: c_v must exceed 1, got " + std::to_string(c_v));
    }
};

struct PrimitiveState {
    double rho = 1.0;    // mass density, > 0
    double theta = 1.0;  // absolute temperature, > 0
    Vec2 u;              // velocity

    bool operator==(const PrimitiveState& o) const = default;

    void validate() const {
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw std::domain_error("PrimitiveState: rho must be positive and finite, got " +
                                    std::to_string(rho));
        if (!(theta > 0.0) || !std::isfinite(theta))
            throw std::domain_error("PrimitiveState: theta must be positive and finite, got " +
                                    std::to_string(theta));
        if (!std::isfinite(u.x) || !std::isfinite(u.y))
            throw std::domain_error("PrimitiveState: velocity components must be finite");
    }
};

struct ConservativeState {
    double rho = 1.0;  // mass density
    Vec2 m;            // momentum rho*u
    double E = 2.5;    // total energy 0.5*rho*|u|^2 + rho*c_v*theta

    bool operator==(const ConservativeState& o) const = default;
};

struct EosOut {
    double pressure;
    double internal_energy;
    double entropy;
    double sound_speed;
};

inline double pressure(const PrimitiveState& s) { return s.rho * s.theta; }

inline double internal_energy(const PrimitiveState& s, const ThermoParams& p) {
    return p.c_v * s.theta;
}

inline double entropy(const PrimitiveState& s, const ThermoParams& p) {
    return p.c_v * std::log(s.theta) - std::log(s.rho);
}

inline double sound_speed(const PrimitiveState& s, const ThermoParams& p) {
    return std::sqrt(p.gamma() * s.theta);
}

inline EosOut eos_eval(const PrimitiveState& s, const ThermoParams& p) {
    s.validate();
    p.validate();
    return {pressure(s), internal_energy(s, p), entropy(s, p), sound_speed(s, p)};
}

inline ConservativeState prim_to_cons(const PrimitiveState& s, const ThermoParams& p) {
    ConservativeState c;
    c.rho = s.rho;
    c.m = s.rho * s.u;
    c.E = 0.5 * s.rho * s.u.norm2() + s.rho * p.c_v * s.theta;
    return c;
}

inline PrimitiveState cons_to_prim(const ConservativeState& c, const ThermoParams& p) {
    if (!(c.rho > 0.0) || !std::isfinite(c.rho))
        throw std::domain_error("cons_to_prim: rho must be positive and finite, got " +
                                std::to_string(c.rho));
    const double e_int = c.E - 0.5 * c.m.norm2() / c.rho;
    if (!(e_int > 0.0))
        throw std::domain_error("cons_to_prim: vacuum/unphysical state, internal energy = " +
                                std::to_string(e_int));
    PrimitiveState s;
    s.rho = c.rho;
    s.u = (1.0 / c.rho) * c.m;
    s.theta = e_int / (c.rho * p.c_v);
    return s;
}

// Conservative components as a flat array (rho, m1, m2, E).
inline std::array<double, 4> to_array(const ConservativeState& c) {
    return {c.rho, c.m.x, c.m.y, c.E};
}

// x1-normal flux of the conserved quantities.
inline std::array<double, 4> flux_x(const PrimitiveState& s, const ThermoParams& p) {
    const double pr = pressure(s);
    const double E = 0.5 * s.rho * s.u.norm2() + s.rho * p.c_v * s.theta;
    return {s.rho * s.u.x, s.rho * s.u.x * s.u.x + pr, s.rho * s.u.x * s.u.y, (E + pr) * s.u.x};
}

// x2-normal flux.
inline std::array<double, 4> flux_y(const PrimitiveState& s, const ThermoParams& p) {
    const double pr = pressure(s);
    const double E = 0.5 * s.rho * s.u.norm2() + s.rho * p.c_v * s.theta;
    return {s.rho * s.u.y, s.rho * s.u.x * s.u.y, s.rho * s.u.y * s.u.y + pr, (E + pr) * s.u.y};
}

}  // namespace wild
