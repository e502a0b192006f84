#pragma once

// Glimm random-choice scheme on a 1D grid, used as an independent numerical
// oracle for the exact Riemann fans.

#include <cstdint>
#include <vector>

#include "wild/riemann.hpp"
#include "wild/thermo.hpp"

namespace wild {

struct Grid1D {
    int n_cells = 0;
    double h = 0.0;
    double x_min = 0.0;
    bool periodic = false;
    std::vector<ConservativeState> cells;

    double cell_center(int i) const { return x_min + (i + 0.5) * h; }

    void validate() const;
    // usage error unless both grids share n_cells, h, x_min and periodicity
    void require_same_layout(const Grid1D& o) const;
};

// Cell-sampled grid from Riemann data with the jump at x = 0.
Grid1D make_riemann_grid(const RiemannData& d, const ThermoParams& p, int n_cells, double x_min,
                         double x_max, bool periodic = false);

enum class ChoiceSequence { van_der_corput, seeded };

struct GlimmOptions {
    double cfl = 0.45;  // must lie in (0, 0.5]
    ChoiceSequence sequence = ChoiceSequence::van_der_corput;
    std::uint64_t seed = 0;
};

// Base-2 radical inverse of n >= 1; the deterministic equidistributed
// sequence driving the random choice.
double van_der_corput(std::uint64_t n);

// Advances the grid to time T by random sampling of the local exact fans.
Grid1D glimm_run(const Grid1D& g, const ThermoParams& p, double T, const GlimmOptions& opt = {});

// h * sum_cells |a - b| over conservative components.
double l1_distance(const Grid1D& a, const Grid1D& b);

// Componentwise total variation of the cell data (free boundary: interior
// jumps only; periodic: includes the wrap-around jump).
double total_variation(const Grid1D& g);

}  // namespace wild
