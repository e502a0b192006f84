#pragma once

// Partition of the torus by vertical lines and initial-data surgery:
// replace a smooth field near each line by Riemann plateaus (with a jump on
// the line), plus the globally smooth extension that bridges the jump.

#include <vector>

#include "wild/field.hpp"
#include "wild/riemann.hpp"

namespace wild {

struct Partition {
    std::vector<double> points;  // ordered in [0, 1)
    double epsilon = 0.0;

    int size() const { return static_cast<int>(points.size()); }
    double min_gap() const;

    // Index of the nearest partition line and the signed periodic offset to
    // it; offset lies in [-gap/2, gap/2] around that line.
    int nearest_line(double x1, double* offset = nullptr) const;

    void validate() const;  // cyclic gaps all below epsilon
};

// Uniform points x^i = (i-1)/N with N = max(n_hint, floor(1/epsilon) + 1).
Partition make_partition(double epsilon, int n_hint = 0);

struct WildDataSpec {
    Partition partition;
    double delta = 0.0;    // plateau half-width parameter
    RiemannData riemann;   // plateau states (left strictly left of each line)
    double q = 2.0;        // L^q exponent
    FieldSampler base;     // smooth data being approximated

    void validate() const;  // bands of distinct lines must stay disjoint
};

// Quintic smoothstep: value 0/1 and vanishing first two derivatives at the
// ends, so every junction below is C^2.
double smoothstep5(double s);

// Pointwise surgered datum: base beyond 3*delta from every line, plateaus on
// [-2d,0) / [0,2d], C^2 blend on the transition annuli. The jump line itself
// takes the right state.
PrimitiveState wild_datum(const WildDataSpec& spec, double x1, double x2);

// Pointwise smooth extension: identical to wild_datum outside the open inner
// band |x1 - x^i| < delta, C^2 monotone plateau-to-plateau blend inside.
PrimitiveState extension_datum(const WildDataSpec& spec, double x1, double x2);

// Grid-sampled versions; require hx <= delta/8 so the bands are resolved.
TorusField build_wild_data(const WildDataSpec& spec, int nx, int ny);
TorusField smooth_extension(const WildDataSpec& spec, int nx, int ny);

// (sum cell_area * |stacked 4-component difference|^q)^(1/q).
double lq_distance(const TorusField& a, const TorusField& b, double q);

// Streaming evaluation of lq_distance(build_wild_data(spec,nx,ny),
// sample_field(spec.base,nx,ny), q) without materializing either field.
double lq_distance_to_base(const WildDataSpec& spec, int nx, int ny);

struct DeltaChoice {
    double delta = 0.0;
    double distance = 0.0;  // achieved L^q distance
    int ladder_index = 0;   // delta = delta0 / 2^ladder_index
    int nx = 0, ny = 0;     // evaluation grid
};

struct ChooseDeltaOptions {
    int max_halvings = 50;
    int max_nx = 1 << 21;  // refuse grids beyond this resolution
};

// Walks the geometric ladder delta_k = (min gap / 8) * 2^-k and returns the
// first (largest) delta whose surgered data sit within epsilon of the base
// in L^q. The evaluation grid refines with delta so hx = delta/8 stays exact
// and partition-aligned; nx_floor/ny give the coarsest grid used.
DeltaChoice choose_delta(const FieldSampler& base, const Partition& partition,
                         const RiemannData& riemann, double q, double epsilon, int nx_floor,
                         int ny, const ChooseDeltaOptions& opt = {});

// Smallest grid size of the form N * 2^m that is at least nx_floor and puts
// at least cells_per_delta cells across each delta band, keeping partition
// lines and band edges on cell boundaries. Negative when max_nx is exceeded.
int aligned_grid_size(const Partition& partition, double delta, int nx_floor,
                      int cells_per_delta, int max_nx = 1 << 21);

}  // namespace wild
