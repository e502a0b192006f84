#include "wild/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wild {

namespace {

// bump profile and its primitive on [-1, 1]
inline double psi(double tau) {
    if (tau <= -1.0 || tau >= 1.0) return 0.0;
    const double s = 1.0 - tau * tau;
    return s * s * s;
}

inline double psi_primitive(double tau) {
    tau = std::clamp(tau, -1.0, 1.0);
    const double t2 = tau * tau;
    return tau * (1.0 + t2 * (-1.0 + t2 * (0.6 - t2 / 7.0)));
}

}  // namespace

void TestFunction::validate() const {
    if (!(rt > 0.0) || !(rx > 0.0) || !(ry > 0.0))
        throw std::invalid_argument("TestFunction: radii must be positive");
    if (rx > 0.45 || ry > 0.45)
        throw std::invalid_argument("TestFunction: spatial radii must stay below 0.45");
}

double TestFunction::value(double t, double x, double y) const {
    if (t < 0.0) return 0.0;
    return psi((t - t0) / rt) * psi(torus_offset(x, x0) / rx) * psi(torus_offset(y, y0) / ry);
}

TestFunction::GridWeights TestFunction::grid_weights(const std::vector<double>& times, int nx,
                                                     int ny) const {
    validate();
    GridWeights w;
    const double T = times.back();
    if (t0 + rt >= T) {
        w.skipped = true;
        w.skip_reason = "support escapes the horizon [0, " + std::to_string(T) + ")";
        return w;
    }
    int inside = 0;
    for (double t : times)
        if (std::abs(t - t0) < rt) ++inside;
    if (inside < 16)
        throw std::invalid_argument(
            "TestFunction: fewer than 16 snapshots inside the support (got " +
            std::to_string(inside) + "); refine the snapshot times");

    const std::size_t m = times.size();
    w.slab_integral.resize(m);
    w.slab_deriv.resize(m);
    auto slab_edge = [&](std::size_t s) {
        if (s == 0) return times.front();
        if (s == m) return times.back();
        return 0.5 * (times[s - 1] + times[s]);
    };
    for (std::size_t s = 0; s < m; ++s) {
        const double a = (slab_edge(s) - t0) / rt;
        const double b = (slab_edge(s + 1) - t0) / rt;
        w.slab_integral[s] = rt * (psi_primitive(b) - psi_primitive(a));
        w.slab_deriv[s] = psi(b) - psi(a);
    }
    w.phi_t0 = psi((times.front() - t0) / rt);

    auto axis = [](int n, double center, double radius) {
        AxisWeights aw;
        const double h = 1.0 / n;
        for (int i = 0; i < n; ++i) {
            const double o = torus_offset((i + 0.5) * h, center);
            if (std::abs(o) - 0.5 * h >= radius) continue;
            const double a = (o - 0.5 * h) / radius;
            const double b = (o + 0.5 * h) / radius;
            aw.idx.push_back(i);
            aw.integral.push_back(radius * (psi_primitive(b) - psi_primitive(a)));
            aw.deriv.push_back(psi(b) - psi(a));
        }
        return aw;
    };
    w.x = axis(nx, x0, rx);
    w.y = axis(ny, y0, ry);
    return w;
}

std::vector<TestFunction> default_family(double T, const Partition* partition,
                                         const FamilyOptions& opt) {
    if (!(T > 0.0)) throw std::invalid_argument("default_family: T must be positive");
    std::vector<double> xs;
    if (partition && partition->size() > 0) {
        const auto& pts = partition->points;
        const int n = static_cast<int>(pts.size());
        for (int i = 0; i < n; ++i) {
            xs.push_back(pts[i]);
            const double next = (i + 1 < n) ? pts[i + 1] : pts[0] + 1.0;
            double mid = 0.5 * (pts[i] + next);
            mid -= std::floor(mid);
            xs.push_back(mid);
        }
    } else {
        xs = {0.25, 0.75};
    }

    // two time windows: one interior, one whose support touches t = 0
    const std::array<std::pair<double, double>, 2> tw = {{{0.5 * T, 0.48 * T}, {0.4 * T, 0.45 * T}}};

    std::vector<TestFunction> family;
    for (int lev = 0; lev < opt.levels; ++lev) {
        const double rx = opt.rx0 * std::ldexp(1.0, -lev);
        for (double x0 : xs)
            for (double y0 : {0.25, 0.75})
                for (const auto& [t0, rt] : tw)
                    family.push_back({t0, rt, x0, rx, y0, opt.ry});
    }
    return family;
}

namespace {

struct NodeQuantities {
    // densities of the five balances and their fluxes
    double a[5];
    double fx[5];
    double fy[5];
};

NodeQuantities node_quantities(const PrimitiveState& s, const ThermoParams& tp) {
    NodeQuantities n;
    const double p = pressure(s);
    const double E = 0.5 * s.rho * s.u.norm2() + s.rho * tp.c_v * s.theta;
    const double rs = s.rho * entropy(s, tp);
    n.a[0] = s.rho;
    n.a[1] = s.rho * s.u.x;
    n.a[2] = s.rho * s.u.y;
    n.a[3] = E;
    n.a[4] = rs;
    n.fx[0] = s.rho * s.u.x;
    n.fx[1] = s.rho * s.u.x * s.u.x + p;
    n.fx[2] = s.rho * s.u.x * s.u.y;
    n.fx[3] = (E + p) * s.u.x;
    n.fx[4] = rs * s.u.x;
    n.fy[0] = s.rho * s.u.y;
    n.fy[1] = s.rho * s.u.x * s.u.y;
    n.fy[2] = s.rho * s.u.y * s.u.y + p;
    n.fy[3] = (E + p) * s.u.y;
    n.fy[4] = rs * s.u.y;
    return n;
}

}  // namespace

ResidualReport weak_residuals(const SpaceTimeField& field, const std::vector<TestFunction>& family,
                              const TorusField& init, const ThermoParams& tp) {
    field.validate();
    tp.validate();
    field.snapshots.front().require_same_layout(init);
    if (field.times.front() != 0.0)
        throw std::invalid_argument("weak_residuals: field must start at t = 0");

    ResidualReport report;
    const TorusField& geom = field.snapshots.front();
    report.hx = geom.hx();
    report.hy = geom.hy();
    report.dt = field.times.size() > 1
                    ? (field.times.back() - field.times.front()) / (field.times.size() - 1)
                    : 0.0;
    report.min_entropy_signed = std::numeric_limits<double>::infinity();

    for (const TestFunction& fn : family) {
        TestRecord rec;
        rec.fn = fn;
        const auto w = fn.grid_weights(field.times, geom.nx, geom.ny);
        if (w.skipped) {
            rec.skipped = true;
            rec.skip_reason = w.skip_reason;
            report.tests.push_back(rec);
            ++report.skipped;
            continue;
        }

        double res[5] = {0, 0, 0, 0, 0};
        for (std::size_t s = 0; s < field.times.size(); ++s) {
            const double it = w.slab_integral[s];
            const double dtp = w.slab_deriv[s];
            if (it == 0.0 && dtp == 0.0) continue;
            const TorusField& f = field.snapshots[s];
            for (std::size_t jj = 0; jj < w.y.idx.size(); ++jj) {
                const int j = w.y.idx[jj];
                for (std::size_t ii = 0; ii < w.x.idx.size(); ++ii) {
                    const int i = w.x.idx[ii];
                    const NodeQuantities n = node_quantities(f.at(i, j), tp);
                    const double wdt = dtp * w.x.integral[ii] * w.y.integral[jj];
                    const double wdx = it * w.x.deriv[ii] * w.y.integral[jj];
                    const double wdy = it * w.x.integral[ii] * w.y.deriv[jj];
                    for (int e = 0; e < 5; ++e)
                        res[e] += n.a[e] * wdt + n.fx[e] * wdx + n.fy[e] * wdy;
                }
            }
        }
        // initial trace whenever the support touches t = 0
        if (w.phi_t0 != 0.0) {
            for (std::size_t jj = 0; jj < w.y.idx.size(); ++jj) {
                const int j = w.y.idx[jj];
                for (std::size_t ii = 0; ii < w.x.idx.size(); ++ii) {
                    const int i = w.x.idx[ii];
                    const NodeQuantities n = node_quantities(init.at(i, j), tp);
                    const double w0 = w.phi_t0 * w.x.integral[ii] * w.y.integral[jj];
                    for (int e = 0; e < 5; ++e) res[e] += n.a[e] * w0;
                }
            }
        }

        rec.mass = std::abs(res[0]);
        rec.mom1 = std::abs(res[1]);
        rec.mom2 = std::abs(res[2]);
        rec.energy = std::abs(res[3]);
        rec.entropy_signed = -res[4];
        report.tests.push_back(rec);
        ++report.evaluated;
        report.max_mass = std::max(report.max_mass, rec.mass);
        report.max_mom = std::max({report.max_mom, rec.mom1, rec.mom2});
        report.max_energy = std::max(report.max_energy, rec.energy);
        report.min_entropy_signed = std::min(report.min_entropy_signed, rec.entropy_signed);
    }
    if (report.evaluated == 0) report.min_entropy_signed = 0.0;
    return report;
}

std::array<double, 4> rh_residual(const PrimitiveState& left, const PrimitiveState& right,
                                  double sigma, const ThermoParams& p) {
    left.validate();
    right.validate();
    const auto ql = to_array(prim_to_cons(left, p));
    const auto qr = to_array(prim_to_cons(right, p));
    const auto fl = flux_x(left, p);
    const auto fr = flux_x(right, p);
    std::array<double, 4> defect;
    for (int k = 0; k < 4; ++k) defect[k] = sigma * (qr[k] - ql[k]) - (fr[k] - fl[k]);
    return defect;
}

void BoundsBox::validate() const {
    if (!(rho_min > 0.0) || !(rho_min <= rho_max))
        throw std::invalid_argument("BoundsBox: need 0 < rho_min <= rho_max");
    if (!(theta_min > 0.0) || !(theta_min <= theta_max))
        throw std::invalid_argument("BoundsBox: need 0 < theta_min <= theta_max");
    if (!(speed_max > 0.0)) throw std::invalid_argument("BoundsBox: need speed_max > 0");
}

BoundsResult bounds_check(const SpaceTimeField& field, const BoundsBox& box) {
    box.validate();
    BoundsResult out;
    const TorusField& geom = field.snapshots.front();
    for (std::size_t s = 0; s < field.snapshots.size(); ++s) {
        const TorusField& f = field.snapshots[s];
        for (int j = 0; j < geom.ny; ++j) {
            for (int i = 0; i < geom.nx; ++i) {
                const PrimitiveState& c = f.at(i, j);
                auto offend = [&](const std::string& what, double v) {
                    out.ok = false;
                    if (out.offenders.size() < 16) out.offenders.push_back({s, i, j, what, v});
                };
                if (c.rho < box.rho_min) offend("rho below rho_min", c.rho);
                if (c.rho > box.rho_max) offend("rho above rho_max", c.rho);
                if (c.theta < box.theta_min) offend("theta below theta_min", c.theta);
                if (c.theta > box.theta_max) offend("theta above theta_max", c.theta);
                if (c.u.norm() > box.speed_max) offend("speed above speed_max", c.u.norm());
            }
        }
    }
    return out;
}

double entropy_production_total(const SpaceTimeField& field, const ThermoParams& p) {
    field.validate();
    const TorusField& a = field.snapshots.front();
    const TorusField& b = field.snapshots.back();
    const double area = a.cell_area();
    double first = 0.0, last = 0.0;
    for (const auto& c : a.cells) first += area * c.rho * entropy(c, p);
    for (const auto& c : b.cells) last += area * c.rho * entropy(c, p);
    return last - first;
}

BoundsBox fan_state_box(const std::vector<WaveFan>& fans) {
    if (fans.empty()) throw std::invalid_argument("fan_state_box: no fans");
    BoundsBox box{1e300, 0.0, 1e300, 0.0, 0.0};
    for (const WaveFan& f : fans) {
        for (const PrimitiveState* s :
             {&f.data.left, &f.data.right, &f.star_left, &f.star_right}) {
            box.rho_min = std::min(box.rho_min, s->rho);
            box.rho_max = std::max(box.rho_max, s->rho);
            box.theta_min = std::min(box.theta_min, s->theta);
            box.theta_max = std::max(box.theta_max, s->theta);
            box.speed_max = std::max(box.speed_max, s->u.norm());
        }
    }
    return box;
}

BoundsBox expand_box(BoundsBox box, const SpaceTimeField& field) {
    for (const TorusField& f : field.snapshots) {
        for (const auto& c : f.cells) {
            box.rho_min = std::min(box.rho_min, c.rho);
            box.rho_max = std::max(box.rho_max, c.rho);
            box.theta_min = std::min(box.theta_min, c.theta);
            box.theta_max = std::max(box.theta_max, c.theta);
            box.speed_max = std::max(box.speed_max, c.u.norm());
        }
    }
    return box;
}

BoundsBox widen_box(BoundsBox box, double margin) {
    box.rho_min -= margin;
    box.rho_max += margin;
    box.theta_min -= margin;
    box.theta_max += margin;
    box.speed_max += margin;
    return box;
}

}  // namespace wild
