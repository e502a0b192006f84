#include "wild/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wild/errors.hpp"

namespace wild {

std::vector<double> uniform_times(double T, int n) {
    if (!(T > 0.0) || n < 2) throw std::invalid_argument("uniform_times: need T > 0 and n >= 2");
    std::vector<double> ts(n);
    for (int k = 0; k < n; ++k) ts[k] = T * k / (n - 1);
    ts.back() = T;
    return ts;
}

double max_signal_speed_x(const TorusField& f, const ThermoParams& p) {
    double s = 0.0;
    for (const auto& c : f.cells) s = std::max(s, std::abs(c.u.x) + sound_speed(c, p));
    return s;
}

namespace {

using Q = std::array<double, 4>;  // rho, m1, m2, E

inline Q to_q(const ConservativeState& c) { return {c.rho, c.m.x, c.m.y, c.E}; }

struct PrimCell {
    double rho, theta, u1, u2, c;
};

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

inline Q prim_flux_x(const PrimCell& w, double c_v) {
    const double p = w.rho * w.theta;
    const double E = 0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2) + w.rho * c_v * w.theta;
    return {w.rho * w.u1, w.rho * w.u1 * w.u1 + p, w.rho * w.u1 * w.u2, (E + p) * w.u1};
}

inline Q prim_flux_y(const PrimCell& w, double c_v) {
    const double p = w.rho * w.theta;
    const double E = 0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2) + w.rho * c_v * w.theta;
    return {w.rho * w.u2, w.rho * w.u1 * w.u2, w.rho * w.u2 * w.u2 + p, (E + p) * w.u2};
}

inline Q prim_cons(const PrimCell& w, double c_v) {
    return {w.rho, w.rho * w.u1, w.rho * w.u2,
            0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2) + w.rho * c_v * w.theta};
}

// Two-wave HLL flux; `normal` picks the x or y flux and normal velocity.
template <bool x_normal>
Q hll_flux(const PrimCell& l, const PrimCell& r, double c_v) {
    const double vl = x_normal ? l.u1 : l.u2;
    const double vr = x_normal ? r.u1 : r.u2;
    const double sl = std::min(vl - l.c, vr - r.c);
    const double sr = std::max(vl + l.c, vr + r.c);
    const Q fl = x_normal ? prim_flux_x(l, c_v) : prim_flux_y(l, c_v);
    if (sl >= 0.0) return fl;
    const Q fr = x_normal ? prim_flux_x(r, c_v) : prim_flux_y(r, c_v);
    if (sr <= 0.0) return fr;
    const Q ql = prim_cons(l, c_v);
    const Q qr = prim_cons(r, c_v);
    Q f;
    for (int k = 0; k < 4; ++k)
        f[k] = (sr * fl[k] - sl * fr[k] + sl * sr * (qr[k] - ql[k])) / (sr - sl);
    return f;
}

struct Mesh {
    int nx, ny;
    double hx, hy;
    double c_v, gamma;

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    int ip(int i) const { return i + 1 == nx ? 0 : i + 1; }
    int im(int i) const { return i == 0 ? nx - 1 : i - 1; }
    int jp(int j) const { return j + 1 == ny ? 0 : j + 1; }
    int jm(int j) const { return j == 0 ? ny - 1 : j - 1; }
};

struct Scratch {
    std::vector<PrimCell> w;
    std::vector<PrimCell> sx, sy;  // limited slopes (per primitive component)
    std::vector<Q> fx, fy;         // interface fluxes at i-1/2 / j-1/2
};

void to_prim_cells(const Mesh& m, const std::vector<Q>& q, std::vector<PrimCell>& w,
                   double t_safe) {
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double rho = q[k][0];
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw BlowupError("evolve_smooth: density positivity lost, T_max reached", t_safe);
        const double u1 = q[k][1] / rho;
        const double u2 = q[k][2] / rho;
        const double e_int = q[k][3] - 0.5 * rho * (u1 * u1 + u2 * u2);
        if (!(e_int > 0.0))
            throw BlowupError("evolve_smooth: internal energy positivity lost, T_max reached",
                              t_safe);
        const double theta = e_int / (rho * m.c_v);
        w[k] = {rho, theta, u1, u2, std::sqrt(m.gamma * theta)};
    }
}

double max_slope(const Mesh& m, const std::vector<PrimCell>& w) {
    double s = 0.0;
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            const PrimCell& a = w[m.idx(i, j)];
            const PrimCell& bx = w[m.idx(m.ip(i), j)];
            const PrimCell& by = w[m.idx(i, m.jp(j))];
            s = std::max({s, std::abs(bx.rho - a.rho) / m.hx, std::abs(by.rho - a.rho) / m.hy,
                          std::abs(bx.theta - a.theta) / m.hx, std::abs(by.theta - a.theta) / m.hy,
                          std::abs(bx.u1 - a.u1) / m.hx, std::abs(by.u1 - a.u1) / m.hy,
                          std::abs(bx.u2 - a.u2) / m.hx, std::abs(by.u2 - a.u2) / m.hy});
        }
    }
    return s;
}

// One Euler stage: q_out = q_in - dt * div F(q_in).
void stage(const Mesh& m, const std::vector<Q>& q_in, std::vector<Q>& q_out, double dt,
           Scratch& s, double t_safe) {
    to_prim_cells(m, q_in, s.w, t_safe);

    auto slope = [](double wm, double w0, double wp) { return minmod(wp - w0, w0 - wm); };
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            const std::size_t k = m.idx(i, j);
            const PrimCell &c = s.w[k], &xl = s.w[m.idx(m.im(i), j)], &xr = s.w[m.idx(m.ip(i), j)],
                           &yl = s.w[m.idx(i, m.jm(j))], &yr = s.w[m.idx(i, m.jp(j))];
            s.sx[k] = {slope(xl.rho, c.rho, xr.rho), slope(xl.theta, c.theta, xr.theta),
                       slope(xl.u1, c.u1, xr.u1), slope(xl.u2, c.u2, xr.u2), 0.0};
            s.sy[k] = {slope(yl.rho, c.rho, yr.rho), slope(yl.theta, c.theta, yr.theta),
                       slope(yl.u1, c.u1, yr.u1), slope(yl.u2, c.u2, yr.u2), 0.0};
        }
    }

    auto face_state = [&](const PrimCell& c, const PrimCell& sl, double sign) {
        PrimCell f{c.rho + sign * 0.5 * sl.rho, c.theta + sign * 0.5 * sl.theta,
                   c.u1 + sign * 0.5 * sl.u1, c.u2 + sign * 0.5 * sl.u2, 0.0};
        // limiting keeps reconstructed values between neighbours, but guard anyway
        if (!(f.rho > 0.0) || !(f.theta > 0.0)) f = c;
        f.c = std::sqrt(m.gamma * f.theta);
        return f;
    };

    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            const std::size_t k = m.idx(i, j);
            const std::size_t kxl = m.idx(m.im(i), j);
            const std::size_t kyl = m.idx(i, m.jm(j));
            // x-interface between (i-1, j) and (i, j)
            s.fx[k] = hll_flux<true>(face_state(s.w[kxl], s.sx[kxl], +1.0),
                                     face_state(s.w[k], s.sx[k], -1.0), m.c_v);
            s.fy[k] = hll_flux<false>(face_state(s.w[kyl], s.sy[kyl], +1.0),
                                      face_state(s.w[k], s.sy[k], -1.0), m.c_v);
        }
    }

    const double cx = dt / m.hx;
    const double cy = dt / m.hy;
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            const std::size_t k = m.idx(i, j);
            const Q& fxl = s.fx[k];
            const Q& fxr = s.fx[m.idx(m.ip(i), j)];
            const Q& fyl = s.fy[k];
            const Q& fyr = s.fy[m.idx(i, m.jp(j))];
            for (int c = 0; c < 4; ++c)
                q_out[k][c] = q_in[k][c] - cx * (fxr[c] - fxl[c]) - cy * (fyr[c] - fyl[c]);
        }
    }
}

double cfl_dt(const Mesh& m, const std::vector<PrimCell>& w, double cfl) {
    double rate = 0.0;
    for (const auto& c : w)
        rate = std::max(rate,
                        (std::abs(c.u1) + c.c) / m.hx + (std::abs(c.u2) + c.c) / m.hy);
    return cfl / rate;
}

TorusField snapshot_from(const Mesh& m, const std::vector<Q>& q, double t, double c_v) {
    TorusField f(m.nx, m.ny, t);
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double rho = q[k][0];
        const double u1 = q[k][1] / rho;
        const double u2 = q[k][2] / rho;
        const double theta = (q[k][3] - 0.5 * rho * (u1 * u1 + u2 * u2)) / (rho * c_v);
        f.cells[k] = {rho, theta, {u1, u2}};
    }
    return f;
}

}  // namespace

SpaceTimeField evolve_smooth(const TorusField& init, const std::vector<double>& snapshot_times,
                             const ThermoParams& p, const EvolveOptions& opt) {
    init.validate();
    p.validate();
    if (snapshot_times.empty() || snapshot_times.front() != 0.0)
        throw std::invalid_argument("evolve_smooth: snapshot times must start at 0");
    for (std::size_t k = 1; k < snapshot_times.size(); ++k)
        if (!(snapshot_times[k] > snapshot_times[k - 1]))
            throw std::invalid_argument("evolve_smooth: snapshot times must strictly increase");
    if (!(opt.cfl > 0.0 && opt.cfl <= 1.0))
        throw std::invalid_argument("evolve_smooth: cfl must lie in (0, 1]");

    const Mesh m{init.nx, init.ny, init.hx(), init.hy(), p.c_v, p.gamma()};
    const std::size_t ncells = init.cells.size();

    std::vector<Q> q(ncells), q1(ncells), q2(ncells);
    for (std::size_t k = 0; k < ncells; ++k) {
        const ConservativeState c = prim_to_cons(init.cells[k], p);
        q[k] = to_q(c);
    }

    Scratch scratch{std::vector<PrimCell>(ncells), std::vector<PrimCell>(ncells),
                    std::vector<PrimCell>(ncells), std::vector<Q>(ncells), std::vector<Q>(ncells)};

    SpaceTimeField out;
    double t = 0.0;
    to_prim_cells(m, q, scratch.w, t);
    const double slope0 = max_slope(m, scratch.w);
    const double slope_ref = std::max(slope0, 1e-12);

    std::size_t next_snap = 0;
    if (snapshot_times[0] == 0.0) {
        out.times.push_back(0.0);
        out.snapshots.push_back(snapshot_from(m, q, 0.0, p.c_v));
        next_snap = 1;
    }

    const double t_end = snapshot_times.back();
    while (next_snap < snapshot_times.size()) {
        to_prim_cells(m, q, scratch.w, t);
        if (max_slope(m, scratch.w) > opt.slope_growth_limit * slope_ref)
            throw BlowupError("evolve_smooth: gradient blow-up, T_max reached", t);

        double dt = cfl_dt(m, scratch.w, opt.cfl);
        bool landing = false;
        if (t + dt >= snapshot_times[next_snap]) {
            dt = snapshot_times[next_snap] - t;
            landing = true;
        }

        if (dt > 0.0) {
            // SSP-RK2 (Heun)
            stage(m, q, q1, dt, scratch, t);
            stage(m, q1, q2, dt, scratch, t);
            for (std::size_t k = 0; k < ncells; ++k)
                for (int c = 0; c < 4; ++c) q[k][c] = 0.5 * (q[k][c] + q2[k][c]);
        }

        t = landing ? snapshot_times[next_snap] : t + dt;
        if (landing) {
            out.times.push_back(t);
            out.snapshots.push_back(snapshot_from(m, q, t, p.c_v));
            ++next_snap;
        }
        if (t >= t_end && next_snap >= snapshot_times.size()) break;
    }
    out.validate();
    return out;
}

double plateau_persistence_time(const SpaceTimeField& traj, const Partition& partition,
                                double delta, const RiemannData& plateaus, const ThermoParams& p,
                                double tol) {
    traj.validate();
    partition.validate();
    if (tol < 0.0) throw std::invalid_argument("plateau_persistence_time: negative tolerance");

    // reference constants take the same conservative round trip as the
    // trajectory snapshots
    const PrimitiveState ref_l = cons_to_prim(prim_to_cons(plateaus.left, p), p);
    const PrimitiveState ref_r = cons_to_prim(prim_to_cons(plateaus.right, p), p);

    auto dev = [](const PrimitiveState& a, const PrimitiveState& b) {
        return std::max({std::abs(a.rho - b.rho), std::abs(a.theta - b.theta),
                         std::abs(a.u.x - b.u.x), std::abs(a.u.y - b.u.y)});
    };

    const TorusField& geom = traj.snapshots.front();
    std::vector<std::pair<std::size_t, bool>> band_cells;  // cell index, is_left
    for (int i = 0; i < geom.nx; ++i) {
        double d = 0.0;
        partition.nearest_line(geom.x1(i), &d);
        const double a = std::abs(d);
        if (a < 1.25 * delta || a > 1.75 * delta) continue;
        for (int j = 0; j < geom.ny; ++j)
            band_cells.emplace_back(static_cast<std::size_t>(j) * geom.nx + i, d < 0.0);
    }
    if (band_cells.empty())
        throw std::invalid_argument("plateau_persistence_time: no cells inside the check bands");

    double t_s = 0.0;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const TorusField& f = traj.snapshots[s];
        double worst = 0.0;
        for (const auto& [k, is_left] : band_cells)
            worst = std::max(worst, dev(f.cells[k], is_left ? ref_l : ref_r));
        if (worst > tol) return t_s;  // 0 when the first snapshot violates
        t_s = traj.times[s];
    }
    return t_s;
}

double riemann_window(double lambda, double delta) {
    if (!(lambda > 0.0)) throw std::invalid_argument("riemann_window: lambda must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("riemann_window: delta must be positive");
    return delta / lambda;
}

}  // namespace wild
