#pragma once

// Second-order finite-volume evolution of the Euler system on the periodic
// torus (MUSCL reconstruction, minmod limiter, two-wave HLL flux, SSP-RK2),
// plus the two horizon times of the pasting construction.

#include <vector>

#include "wild/field.hpp"
#include "wild/riemann.hpp"
#include "wild/surgery.hpp"

namespace wild {

struct EvolveOptions {
    double cfl = 0.45;
    double slope_growth_limit = 1e3;  // blow-up heuristic on max slope growth
};

// Evolves init and records snapshots at the requested times (which must
// start at 0 and strictly increase). Throws BlowupError with the last safe
// time on positivity loss or slope blow-up. The t = 0 snapshot passes
// through the same conservative-variable round trip as every later one, so
// constant data yield bitwise-identical snapshots for all time.
SpaceTimeField evolve_smooth(const TorusField& init, const std::vector<double>& snapshot_times,
                             const ThermoParams& p, const EvolveOptions& opt = {});

// Uniform snapshot times 0, T/(n-1), ..., T.
std::vector<double> uniform_times(double T, int n);

// Max cellwise |u1| + sound speed; the x1-signal bound used by the horizon
// estimates.
double max_signal_speed_x(const TorusField& f, const ThermoParams& p);

// Largest snapshot time up to which the field equals the plateau constants
// on every band 5/4 delta <= |x1 - x^i| <= 7/4 delta (sup over band cells,
// componentwise, within tol). The reference constants pass through the same
// conservative round trip as the trajectory itself. Returns 0 when already
// the first snapshot violates.
double plateau_persistence_time(const SpaceTimeField& traj, const Partition& partition,
                                double delta, const RiemannData& plateaus, const ThermoParams& p,
                                double tol);

// Largest time with lambda * t <= delta.
double riemann_window(double lambda, double delta);

struct Horizon {
    double t_s = 0.0;  // plateau persistence time of the smooth evolution
    double t_r = 0.0;  // Riemann window time

    double t() const { return t_s < t_r ? t_s : t_r; }

    void validate() const {
        if (!(t() > 0.0)) throw std::invalid_argument("Horizon: min(t_s, t_r) must be positive");
    }
};

}  // namespace wild
