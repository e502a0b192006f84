#include "wild/glimm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wild/errors.hpp"

namespace wild {

void Grid1D::validate() const {
    if (n_cells < 2) throw std::invalid_argument("Grid1D: need at least 2 cells");
    if (!(h > 0.0)) throw std::invalid_argument("Grid1D: cell width must be positive");
    if (static_cast<int>(cells.size()) != n_cells)
        throw std::invalid_argument("Grid1D: cell array size does not match n_cells");
}

void Grid1D::require_same_layout(const Grid1D& o) const {
    if (n_cells != o.n_cells || h != o.h || x_min != o.x_min || periodic != o.periodic)
        throw std::invalid_argument("Grid1D: mismatched grid layouts");
}

Grid1D make_riemann_grid(const RiemannData& d, const ThermoParams& p, int n_cells, double x_min,
                         double x_max, bool periodic) {
    if (!(x_max > x_min)) throw std::invalid_argument("make_riemann_grid: empty domain");
    Grid1D g;
    g.n_cells = n_cells;
    g.h = (x_max - x_min) / n_cells;
    g.x_min = x_min;
    g.periodic = periodic;
    g.cells.reserve(n_cells);
    const ConservativeState l = prim_to_cons(d.left, p);
    const ConservativeState r = prim_to_cons(d.right, p);
    for (int i = 0; i < n_cells; ++i) g.cells.push_back(g.cell_center(i) < 0.0 ? l : r);
    g.validate();
    return g;
}

double van_der_corput(std::uint64_t n) {
    double inv = 0.5;
    double v = 0.0;
    while (n) {
        if (n & 1u) v += inv;
        n >>= 1u;
        inv *= 0.5;
    }
    return v;
}

namespace {

// Sample the interface fan at xi, returning the stored conservative value
// bitwise when xi falls outside the wave cone.
ConservativeState sample_cons(const WaveFan& fan, double xi, const ConservativeState& left_cell,
                              const ConservativeState& right_cell, const ThermoParams& p) {
    double leftmost = fan.u_star;
    double rightmost = fan.u_star;
    if (fan.left_wave.kind != WaveKind::none) leftmost = fan.left_wave.head;
    if (fan.right_wave.kind != WaveKind::none) rightmost = fan.right_wave.tail;
    if (xi < leftmost) return left_cell;
    if (xi >= rightmost) return right_cell;
    return prim_to_cons(sample_fan(fan, xi), p);
}

struct ChoiceState {
    ChoiceSequence sequence;
    std::uint64_t vdc_index = 1;
    std::mt19937_64 rng;

    double next() {
        if (sequence == ChoiceSequence::van_der_corput) return van_der_corput(vdc_index++);
        // 53-bit uniform in [0,1); bit-exact across platforms
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
};

}  // namespace

Grid1D glimm_run(const Grid1D& g, const ThermoParams& p, double T, const GlimmOptions& opt) {
    g.validate();
    p.validate();
    if (!(opt.cfl > 0.0 && opt.cfl <= 0.5))
        throw std::invalid_argument("glimm_run: cfl must lie in (0, 0.5]");
    if (T < 0.0) throw std::invalid_argument("glimm_run: negative time");

    const int n = g.n_cells;
    ChoiceState choice{opt.sequence, 1, std::mt19937_64(opt.seed)};

    Grid1D cur = g;
    std::vector<WaveFan> fans(n + 1);
    std::vector<ConservativeState> next(n);
    std::vector<PrimitiveState> prim(n);

    double t = 0.0;
    while (t < T) {
        for (int i = 0; i < n; ++i) {
            try {
                prim[i] = cons_to_prim(cur.cells[i], p);
            } catch (const std::domain_error& e) {
                throw VacuumError("glimm_run: invalid state in cell " + std::to_string(i) + ": " +
                                  e.what());
            }
        }

        // fans at interfaces i-1/2 for i = 0..n (boundary fans use the edge
        // or wrapped neighbour)
        double lambda_max = 0.0;
        for (int i = 0; i <= n; ++i) {
            const int il = cur.periodic ? (i + n - 1) % n : std::max(i - 1, 0);
            const int ir = cur.periodic ? i % n : std::min(i, n - 1);
            if (cur.cells[il] == cur.cells[ir]) {
                fans[i] = WaveFan{};
                fans[i].data = {prim[il], prim[ir]};
                fans[i].u_star = prim[il].u.x;
                fans[i].lambda = std::abs(prim[il].u.x) + sound_speed(prim[il], p);
            } else {
                try {
                    fans[i] = solve_fan({prim[il], prim[ir]}, p);
                } catch (const VacuumError& e) {
                    throw VacuumError("glimm_run: interface left of cell " + std::to_string(i) +
                                      ": " + e.what());
                }
            }
            lambda_max = std::max(lambda_max, fans[i].lambda);
        }

        double dt = opt.cfl * cur.h / lambda_max;
        if (t + dt >= T) dt = T - t;
        if (dt <= 0.0) break;

        const double a = choice.next();
        for (int i = 0; i < n; ++i) {
            if (a < 0.5) {
                const int il = cur.periodic ? (i + n - 1) % n : std::max(i - 1, 0);
                next[i] = sample_cons(fans[i], a * cur.h / dt, cur.cells[il], cur.cells[i], p);
            } else {
                const int ir = cur.periodic ? (i + 1) % n : std::min(i + 1, n - 1);
                next[i] =
                    sample_cons(fans[i + 1], (a - 1.0) * cur.h / dt, cur.cells[i], cur.cells[ir], p);
            }
        }
        cur.cells.swap(next);
        t = (dt == T - t) ? T : t + dt;
    }
    return cur;
}

double l1_distance(const Grid1D& a, const Grid1D& b) {
    a.require_same_layout(b);
    double sum = 0.0;
    for (int i = 0; i < a.n_cells; ++i) {
        const auto qa = to_array(a.cells[i]);
        const auto qb = to_array(b.cells[i]);
        for (int k = 0; k < 4; ++k) sum += std::abs(qa[k] - qb[k]);
    }
    return a.h * sum;
}

double total_variation(const Grid1D& g) {
    double tv = 0.0;
    const int last = g.periodic ? g.n_cells : g.n_cells - 1;
    for (int i = 1; i <= last; ++i) {
        const auto qa = to_array(g.cells[i - 1]);
        const auto qb = to_array(g.cells[i % g.n_cells]);
        for (int k = 0; k < 4; ++k) tv += std::abs(qb[k] - qa[k]);
    }
    return tv;
}

}  // namespace wild
