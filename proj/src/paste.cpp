#include "wild/paste.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wild {

namespace {

void check_assembly_inputs(const SpaceTimeField& traj, const std::vector<WaveFan>& fans,
                           const Partition& partition, double delta, const Horizon& horizon) {
    traj.validate();
    partition.validate();
    horizon.validate();
    if (static_cast<int>(fans.size()) != partition.size())
        throw std::invalid_argument("assemble: need exactly one fan per partition line");
    if (!(delta > 0.0)) throw std::invalid_argument("assemble: delta must be positive");
    if (!(1.75 * delta < 0.5 * partition.min_gap()))
        throw std::invalid_argument("assemble: fan bands overlap");
    if (horizon.t() > traj.horizon() + 1e-15)
        throw std::invalid_argument("assemble: horizon exceeded, trajectory ends at " +
                                    std::to_string(traj.horizon()));
}

PrimitiveState fan_branch(const WaveFan& fan, double offset, double t) {
    if (t <= 0.0) return offset < 0.0 ? fan.data.left : fan.data.right;
    return sample_fan(fan, offset / t);
}

}  // namespace

SpaceTimeField assemble(const SpaceTimeField& traj, const std::vector<WaveFan>& fans,
                        const Partition& partition, double delta, const Horizon& horizon) {
    check_assembly_inputs(traj, fans, partition, delta, horizon);

    const TorusField& geom = traj.snapshots.front();
    // per column: index of the owning line if the column sits in a fan band
    std::vector<int> band_line(geom.nx, -1);
    std::vector<double> band_offset(geom.nx, 0.0);
    for (int i = 0; i < geom.nx; ++i) {
        double d = 0.0;
        const int line = partition.nearest_line(geom.x1(i), &d);
        if (std::abs(d) <= 1.75 * delta) {
            band_line[i] = line;
            band_offset[i] = d;
        }
    }

    SpaceTimeField out;
    out.entropy_line = traj.entropy_line;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        const double t = traj.times[s];
        if (t > horizon.t() + 1e-15) break;
        TorusField f = traj.snapshots[s];
        for (int i = 0; i < geom.nx; ++i) {
            if (band_line[i] < 0) continue;
            const PrimitiveState v = fan_branch(fans[band_line[i]], band_offset[i], t);
            for (int j = 0; j < geom.ny; ++j) f.at(i, j) = v;
        }
        out.times.push_back(t);
        out.snapshots.push_back(std::move(f));
    }
    if (out.times.empty()) throw std::invalid_argument("assemble: no snapshots inside horizon");
    return out;
}

SpaceTimeField assemble_entropy_producing(const SpaceTimeField& traj,
                                          const std::vector<WaveFan>& fans,
                                          const Partition& partition, double delta,
                                          const Horizon& horizon, int i_star) {
    if (i_star < 1 || i_star > partition.size())
        throw std::invalid_argument("assemble_entropy_producing: i_star out of range (got " +
                                    std::to_string(i_star) + ", N = " +
                                    std::to_string(partition.size()) + ")");
    if (!fans.empty() && static_cast<int>(fans.size()) == partition.size() &&
        !fans[i_star - 1].has_shock())
        throw std::invalid_argument(
            "assemble_entropy_producing: no entropy production available, fan at i_star is "
            "shock-free");
    SpaceTimeField out = assemble(traj, fans, partition, delta, horizon);
    out.entropy_line = i_star;
    return out;
}

double overlap_consistency(const SpaceTimeField& traj, const std::vector<WaveFan>& fans,
                           const Partition& partition, double delta, const Horizon& horizon) {
    check_assembly_inputs(traj, fans, partition, delta, horizon);

    const TorusField& geom = traj.snapshots.front();
    double worst = 0.0;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        const double t = traj.times[s];
        if (t > horizon.t() + 1e-15) break;
        const TorusField& f = traj.snapshots[s];
        for (int i = 0; i < geom.nx; ++i) {
            double d = 0.0;
            const int line = partition.nearest_line(geom.x1(i), &d);
            const double a = std::abs(d);
            if (a < 1.25 * delta || a > 1.75 * delta) continue;
            const PrimitiveState v = fan_branch(fans[line], d, t);
            for (int j = 0; j < geom.ny; ++j) {
                const PrimitiveState& w = f.at(i, j);
                worst = std::max({worst, std::abs(w.rho - v.rho), std::abs(w.theta - v.theta),
                                  std::abs(w.u.x - v.u.x), std::abs(w.u.y - v.u.y)});
            }
        }
    }
    return worst;
}

bool distinct_on_ball(const SpaceTimeField& a, const SpaceTimeField& b, const Ball& ball,
                      double tau, double threshold) {
    a.validate();
    b.validate();
    ball.validate();
    a.snapshots.front().require_same_layout(b.snapshots.front());
    if (tau > a.horizon() + 1e-15 || tau > b.horizon() + 1e-15)
        throw std::invalid_argument("distinct_on_ball: tau exceeds a field horizon");

    const TorusField& geom = a.snapshots.front();
    std::vector<std::size_t> in_ball;
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (ball.contains(geom.x1(i), geom.x2(j)))
                in_ball.push_back(static_cast<std::size_t>(j) * geom.nx + i);

    const std::size_t n = std::min(a.times.size(), b.times.size());
    for (std::size_t s = 0; s < n; ++s) {
        if (!(a.times[s] < tau)) break;
        if (a.times[s] != b.times[s])
            throw std::invalid_argument("distinct_on_ball: snapshot times differ");
        const TorusField& fa = a.snapshots[s];
        const TorusField& fb = b.snapshots[s];
        for (const std::size_t k : in_ball) {
            const PrimitiveState& x = fa.cells[k];
            const PrimitiveState& y = fb.cells[k];
            if (std::abs(x.rho - y.rho) > threshold || std::abs(x.theta - y.theta) > threshold ||
                std::abs(x.u.x - y.u.x) > threshold || std::abs(x.u.y - y.u.y) > threshold)
                return true;
        }
    }
    return false;
}

}  // namespace wild
