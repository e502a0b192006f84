#include "wild/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wild {

double Partition::min_gap() const {
    const int n = size();
    if (n == 1) return 1.0;
    double g = 1.0 + points.front() - points.back();
    for (int i = 1; i < n; ++i) g = std::min(g, points[i] - points[i - 1]);
    return g;
}

int Partition::nearest_line(double x1, double* offset) const {
    const int n = size();
    auto it = std::upper_bound(points.begin(), points.end(), x1);
    const int hi = static_cast<int>(it - points.begin()) % n;
    const int lo = (hi + n - 1) % n;
    const double dlo = torus_offset(x1, points[lo]);
    const double dhi = torus_offset(x1, points[hi]);
    const int best = std::abs(dlo) <= std::abs(dhi) ? lo : hi;
    if (offset) *offset = (best == lo) ? dlo : dhi;
    return best;
}

void Partition::validate() const {
    if (points.empty()) throw std::invalid_argument("Partition: no points");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("Partition: epsilon must lie in (0, 1)");
    const int n = size();
    for (int i = 0; i < n; ++i) {
        if (!(points[i] >= 0.0 && points[i] < 1.0))
            throw std::invalid_argument("Partition: points must lie in [0, 1)");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw std::invalid_argument("Partition: points must strictly increase");
        const double gap =
            (i + 1 < n) ? points[i + 1] - points[i] : 1.0 + points.front() - points.back();
        if (!(gap < epsilon))
            throw std::invalid_argument("Partition: cyclic gap " + std::to_string(gap) +
                                        " not below epsilon " + std::to_string(epsilon));
    }
}

Partition make_partition(double epsilon, int n_hint) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("make_partition: epsilon must lie in (0, 1), got " +
                                    std::to_string(epsilon));
    const int n_min = static_cast<int>(std::floor(1.0 / epsilon)) + 1;
    const int n = std::max(n_hint, n_min);
    Partition p;
    p.epsilon = epsilon;
    p.points.reserve(n);
    for (int i = 0; i < n; ++i) p.points.push_back(static_cast<double>(i) / n);
    p.validate();
    return p;
}

void WildDataSpec::validate() const {
    partition.validate();
    riemann.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("WildDataSpec: delta must be positive");
    if (!(3.0 * delta < 0.5 * partition.min_gap()))
        throw std::invalid_argument(
            "WildDataSpec: band overlap, need 3*delta below half the minimal gap (delta = " +
            std::to_string(delta) + ", min gap = " + std::to_string(partition.min_gap()) + ")");
    if (!(q >= 1.0)) throw std::invalid_argument("WildDataSpec: q must be at least 1");
    if (!base) throw std::invalid_argument("WildDataSpec: empty base sampler");
}

double smoothstep5(double s) { return s * s * s * (10.0 + s * (6.0 * s - 15.0)); }

namespace {

PrimitiveState lerp_state(const PrimitiveState& a, const PrimitiveState& b, double w) {
    PrimitiveState out;
    out.rho = a.rho + (b.rho - a.rho) * w;
    out.theta = a.theta + (b.theta - a.theta) * w;
    out.u.x = a.u.x + (b.u.x - a.u.x) * w;
    out.u.y = a.u.y + (b.u.y - a.u.y) * w;
    return out;
}

}  // namespace

PrimitiveState wild_datum(const WildDataSpec& spec, double x1, double x2) {
    double d = 0.0;
    spec.partition.nearest_line(x1, &d);
    const double a = std::abs(d);
    const double delta = spec.delta;
    if (a >= 3.0 * delta) return spec.base(x1, x2);
    const PrimitiveState& plateau = (d < 0.0) ? spec.riemann.left : spec.riemann.right;
    if (a > 2.0 * delta) {
        const double w = smoothstep5((a - 2.0 * delta) / delta);
        return lerp_state(plateau, spec.base(x1, x2), w);
    }
    return plateau;
}

PrimitiveState extension_datum(const WildDataSpec& spec, double x1, double x2) {
    double d = 0.0;
    spec.partition.nearest_line(x1, &d);
    if (std::abs(d) >= spec.delta) return wild_datum(spec, x1, x2);
    const double w = smoothstep5((d + spec.delta) / (2.0 * spec.delta));
    return lerp_state(spec.riemann.left, spec.riemann.right, w);
}

namespace {

void require_resolved(const WildDataSpec& spec, int nx) {
    if (1.0 / nx > spec.delta / 8.0)
        throw std::invalid_argument("grid too coarse for the bands: need hx <= delta/8 (nx >= " +
                                    std::to_string(static_cast<int>(std::ceil(8.0 / spec.delta))) +
                                    ", got " + std::to_string(nx) + ")");
}

TorusField sample_spec(const WildDataSpec& spec, int nx, int ny,
                       PrimitiveState (*datum)(const WildDataSpec&, double, double)) {
    spec.validate();
    require_resolved(spec, nx);
    TorusField out(nx, ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out.at(i, j) = datum(spec, out.x1(i), out.x2(j));
    out.validate();
    return out;
}

}  // namespace

TorusField build_wild_data(const WildDataSpec& spec, int nx, int ny) {
    return sample_spec(spec, nx, ny, &wild_datum);
}

TorusField smooth_extension(const WildDataSpec& spec, int nx, int ny) {
    return sample_spec(spec, nx, ny, &extension_datum);
}

namespace {

double stacked_diff_norm(const PrimitiveState& a, const PrimitiveState& b) {
    const double dr = a.rho - b.rho;
    const double dt = a.theta - b.theta;
    const double du = a.u.x - b.u.x;
    const double dv = a.u.y - b.u.y;
    return std::sqrt(dr * dr + dt * dt + du * du + dv * dv);
}

}  // namespace

double lq_distance(const TorusField& a, const TorusField& b, double q) {
    a.require_same_layout(b);
    if (!(q >= 1.0)) throw std::invalid_argument("lq_distance: q must be at least 1");
    const double area = a.cell_area();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.cells.size(); ++k)
        sum += area * std::pow(stacked_diff_norm(a.cells[k], b.cells[k]), q);
    return std::pow(sum, 1.0 / q);
}

double lq_distance_to_base(const WildDataSpec& spec, int nx, int ny) {
    spec.validate();
    require_resolved(spec, nx);
    const double area = 1.0 / (static_cast<double>(nx) * ny);
    double sum = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double y = (j + 0.5) / ny;
        for (int i = 0; i < nx; ++i) {
            const double x = (i + 0.5) / nx;
            sum += area * std::pow(stacked_diff_norm(wild_datum(spec, x, y), spec.base(x, y)),
                                   spec.q);
        }
    }
    return std::pow(sum, 1.0 / spec.q);
}

namespace {

// Smallest nx of the form N * 2^m resolving delta (hx <= delta/8) and at
// least nx_floor; keeps partition lines and band edges on cell boundaries.
int aligned_nx(int n_lines, double delta, int nx_floor, int max_nx) {
    const double need = std::max(static_cast<double>(nx_floor), 8.0 / delta);
    long long nx = n_lines;
    while (nx < need) {
        nx *= 2;
        if (nx > max_nx) return -1;
    }
    return static_cast<int>(nx);
}

}  // namespace

int aligned_grid_size(const Partition& partition, double delta, int nx_floor,
                      int cells_per_delta, int max_nx) {
    partition.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("aligned_grid_size: delta must be positive");
    if (cells_per_delta < 8)
        throw std::invalid_argument("aligned_grid_size: need at least 8 cells per delta");
    const double need = std::max(static_cast<double>(nx_floor), cells_per_delta / delta);
    long long nx = partition.size();
    while (nx < need) {
        nx *= 2;
        if (nx > max_nx) return -1;
    }
    return static_cast<int>(nx);
}

DeltaChoice choose_delta(const FieldSampler& base, const Partition& partition,
                         const RiemannData& riemann, double q, double epsilon, int nx_floor,
                         int ny, const ChooseDeltaOptions& opt) {
    partition.validate();
    riemann.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("choose_delta: epsilon must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("choose_delta: q must be at least 1");
    if (!base) throw std::invalid_argument("choose_delta: empty base sampler");

    const double delta0 = partition.min_gap() / 8.0;
    WildDataSpec spec{partition, delta0, riemann, q, base};
    for (int k = 0; k < opt.max_halvings; ++k) {
        spec.delta = delta0 * std::ldexp(1.0, -k);
        const int nx = aligned_nx(partition.size(), spec.delta, nx_floor, opt.max_nx);
        if (nx < 0)
            throw std::runtime_error(
                "choose_delta: epsilon unattainable at this resolution (grid beyond " +
                std::to_string(opt.max_nx) + " cells needed)");
        const double dist = lq_distance_to_base(spec, nx, ny);
        if (dist <= epsilon) return {spec.delta, dist, k, nx, ny};
    }
    throw std::runtime_error("choose_delta: epsilon unattainable at this resolution (ladder "
                             "exhausted after " +
                             std::to_string(opt.max_halvings) + " halvings)");
}

}  // namespace wild
