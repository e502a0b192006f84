#pragma once

// Weak-form admissibility verifier: discrete residuals of the mass,
// momentum, energy and entropy balances against compactly supported C^2
// bumps, Rankine-Hugoniot jump defects, and uniform bound checks.
//
// Quadrature: the field is sampled only at its own space-time nodes (no
// interpolation); each test-function factor is integrated in closed form
// over the node's cell/slab, so residuals of constant fields telescope to
// round-off.

#include <array>
#include <string>
#include <vector>

#include "wild/field.hpp"
#include "wild/riemann.hpp"
#include "wild/surgery.hpp"
#include "wild/thermo.hpp"

namespace wild {

// Tensor-product bump (1 - tau^2)^3 in t, x1, x2. Spatial factors wrap
// periodically; radii must stay below 0.45 so a factor never overlaps its
// own periodic image.
struct TestFunction {
    double t0 = 0.0, rt = 1.0;  // time center/radius
    double x0 = 0.0, rx = 0.2;
    double y0 = 0.0, ry = 0.2;

    void validate() const;
    double value(double t, double x, double y) const;

    // Per-axis exact integrals on a given grid.
    struct AxisWeights {
        std::vector<int> idx;           // cells overlapping the support
        std::vector<double> integral;   // integral of the factor over the cell
        std::vector<double> deriv;      // factor difference across the cell
    };
    struct GridWeights {
        bool skipped = false;
        std::string skip_reason;
        std::vector<double> slab_integral;  // per snapshot slab
        std::vector<double> slab_deriv;
        AxisWeights x, y;
        double phi_t0 = 0.0;  // time factor at t = 0 (initial trace)
    };
    GridWeights grid_weights(const std::vector<double>& times, int nx, int ny) const;
};

// Dyadic ladder of radii with centers on the partition lines and the gaps
// between them; includes functions whose support touches t = 0.
struct FamilyOptions {
    int levels = 3;
    double rx0 = 0.2;
    double ry = 0.25;
};
std::vector<TestFunction> default_family(double T, const Partition* partition,
                                         const FamilyOptions& opt = {});

struct TestRecord {
    TestFunction fn;
    bool skipped = false;
    std::string skip_reason;
    double mass = 0.0, mom1 = 0.0, mom2 = 0.0, energy = 0.0;  // magnitudes
    double entropy_signed = 0.0;  // entropy production; >= -O(quadrature)
};

struct ResidualReport {
    std::vector<TestRecord> tests;
    int evaluated = 0;
    int skipped = 0;
    double max_mass = 0.0, max_mom = 0.0, max_energy = 0.0;
    double min_entropy_signed = 0.0;
    double hx = 0.0, hy = 0.0, dt = 0.0;  // grid scales the tolerances refer to

    double h() const { return std::max({hx, hy, dt}); }
};

// Residuals of the weak balances over the family, including the initial
// trace against `init` whenever a support touches t = 0. Requires at least
// 16 snapshots inside every non-skipped support.
ResidualReport weak_residuals(const SpaceTimeField& field, const std::vector<TestFunction>& family,
                              const TorusField& init, const ThermoParams& p);

// sigma * [conservative jump] - [x1-flux jump], componentwise.
std::array<double, 4> rh_residual(const PrimitiveState& left, const PrimitiveState& right,
                                  double sigma, const ThermoParams& p);

struct BoundsBox {
    double rho_min = 0.0, rho_max = 0.0;
    double theta_min = 0.0, theta_max = 0.0;
    double speed_max = 0.0;

    void validate() const;
};

struct BoundsOffender {
    std::size_t snapshot;
    int i, j;
    std::string what;
    double value;
};

struct BoundsResult {
    bool ok = true;
    std::vector<BoundsOffender> offenders;  // capped at 16
};

BoundsResult bounds_check(const SpaceTimeField& field, const BoundsBox& box);

// Integral of rho*s at the final time minus at the initial time; strictly
// positive certifies entropy production.
double entropy_production_total(const SpaceTimeField& field, const ThermoParams& p);

// Box spanned by the corner states of the fans (rarefaction interiors are
// monotone between them), optionally widened by field extremes and a margin.
BoundsBox fan_state_box(const std::vector<WaveFan>& fans);
BoundsBox expand_box(BoundsBox box, const SpaceTimeField& field);
BoundsBox widen_box(BoundsBox box, double margin);

}  // namespace wild
