#pragma once

// Sampled fields on the periodic unit torus and space-time stacks of them.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wild/thermo.hpp"

namespace wild {

// Signed offset of x to the nearest periodic image of p, in [-1/2, 1/2).
inline double torus_offset(double x, double p) {
    double d = x - p;
    d -= std::floor(d + 0.5);
    return d;
}

// Periodic distance on the unit circle.
inline double torus_distance(double a, double b) { return std::abs(torus_offset(a, b)); }

struct TorusField {
    int nx = 0;
    int ny = 0;
    double time = 0.0;
    std::vector<PrimitiveState> cells;  // index i + nx*j

    TorusField() = default;
    TorusField(int nx_, int ny_, double t = 0.0)
        : nx(nx_), ny(ny_), time(t), cells(static_cast<std::size_t>(nx_) * ny_) {}

    double hx() const { return 1.0 / nx; }
    double hy() const { return 1.0 / ny; }
    double x1(int i) const { return (i + 0.5) / nx; }
    double x2(int j) const { return (j + 0.5) / ny; }
    double cell_area() const { return hx() * hy(); }

    PrimitiveState& at(int i, int j) { return cells[static_cast<std::size_t>(j) * nx + i]; }
    const PrimitiveState& at(int i, int j) const {
        return cells[static_cast<std::size_t>(j) * nx + i];
    }

    void require_same_layout(const TorusField& o) const {
        if (nx != o.nx || ny != o.ny)
            throw std::invalid_argument("TorusField: mismatched grid sizes");
    }

    void validate() const {
        if (nx < 2 || ny < 2) throw std::invalid_argument("TorusField: grid too small");
        if (cells.size() != static_cast<std::size_t>(nx) * ny)
            throw std::invalid_argument("TorusField: cell array size mismatch");
        for (const auto& s : cells) s.validate();
    }
};

// Pointwise initial-data sampler (rho0, theta0, u0)(x1, x2).
using FieldSampler = std::function<PrimitiveState(double, double)>;

// Samples a smooth field at the cell centers of an nx-by-ny torus grid.
TorusField sample_field(const FieldSampler& f, int nx, int ny, double time = 0.0);

struct SpaceTimeField {
    std::vector<double> times;
    std::vector<TorusField> snapshots;
    std::optional<int> entropy_line;  // 1-based pasting line flagged as entropy producing

    void validate() const {
        if (times.size() != snapshots.size())
            throw std::invalid_argument("SpaceTimeField: times/snapshots size mismatch");
        if (times.empty()) throw std::invalid_argument("SpaceTimeField: empty trajectory");
        for (std::size_t k = 1; k < times.size(); ++k)
            if (!(times[k] > times[k - 1]))
                throw std::invalid_argument("SpaceTimeField: times must strictly increase");
        for (const auto& f : snapshots) snapshots.front().require_same_layout(f);
    }

    double horizon() const { return times.back(); }

    void require_same_layout(const SpaceTimeField& o) const {
        if (times != o.times) throw std::invalid_argument("SpaceTimeField: mismatched times");
        snapshots.front().require_same_layout(o.snapshots.front());
    }
};

struct Ball {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;

    bool contains(double x, double y) const {
        const double dx = torus_offset(x, cx);
        const double dy = torus_offset(y, cy);
        return dx * dx + dy * dy < radius * radius;
    }

    void validate() const {
        if (!(radius > 0.0)) throw std::invalid_argument("Ball: radius must be positive");
    }
};

}  // namespace wild
