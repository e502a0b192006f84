#pragma once

// Exact self-similar solver for the planar (x2-independent) Riemann problem
// of the full Euler system. The transverse velocity u2 rides along as a
// passive scalar and jumps only across the contact.

#include "wild/thermo.hpp"

namespace wild {

struct RiemannData {
    PrimitiveState left;
    PrimitiveState right;

    bool operator==(const RiemannData& o) const = default;

    void validate() const {
        left.validate();
        right.validate();
    }

    // Left/right swapped with reflected normal velocities; solutions of the
    // mirrored problem are x1-reflections of the original ones.
    RiemannData mirrored() const {
        RiemannData m;
        m.left = right;
        m.left.u.x = -right.u.x;
        m.right = left;
        m.right.u.x = -left.u.x;
        return m;
    }
};

enum class WaveKind { none, shock, rarefaction };

struct Wave {
    WaveKind kind = WaveKind::none;
    double head = 0.0;  // leftmost signal speed of the wave
    double tail = 0.0;  // rightmost; head == tail for shocks

    double speed() const { return head; }  // shock speed
};

struct WaveFan {
    RiemannData data;
    ThermoParams params;

    double p_star = 0.0;  // common star pressure
    double u_star = 0.0;  // contact speed
    PrimitiveState star_left;
    PrimitiveState star_right;
    Wave left_wave;
    Wave right_wave;
    double lambda = 0.0;  // maximal absolute signal speed
    int iterations = 0;   // root-finder iterations spent

    bool has_shock() const {
        return left_wave.kind == WaveKind::shock || right_wave.kind == WaveKind::shock;
    }
};

struct SolveOptions {
    double tol = 1e-12;  // relative tolerance on the star pressure
    int max_iter = 100;
};

// Solves the two-wave star equation by bracketed Newton with bisection
// fallback. Throws VacuumError when the data open a vacuum, RootFindError
// with an iteration trace on non-convergence.
WaveFan solve_fan(const RiemannData& d, const ThermoParams& p, const SolveOptions& opt = {});

// Evaluates the fan at similarity coordinate xi = x1/t. Piecewise constant
// outside the waves, exact profile inside rarefactions. At a wave boundary
// the region to the right wins.
PrimitiveState sample_fan(const WaveFan& f, double xi);

}  // namespace wild
