#include "phaseforge/equiv.hpp"

#include <cmath>

namespace phaseforge {

namespace {

void check_grid(const Vector& grid) {
    if (grid.empty() || grid.front() < 0.0) throw InvalidValue("grid must start at a nonnegative point");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidValue("grid must be strictly increasing");
}

std::uint64_t as_step(double g) {
    const double rounded = std::nearbyint(g);
    if (std::abs(g - rounded) > 1e-9 || rounded < 0.0)
        throw InvalidValue("discrete grid points must be nonnegative integers");
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace

Vector y_ph(const TransformResult& tr, double u_level, const Vector& grid) {
    check_grid(grid);
    Vector out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = tr.kind == SystemKind::continuous ? cph_cdf(*tr.cph, grid[i])
                                                           : dph_cdf(*tr.dph, as_step(grid[i]));
        out[i] = tr.psi * u_level * f;
    }
    return out;
}

Vector y_ph_deficit_variants(const TransformResult& tr, double u_level, const Vector& grid) {
    check_grid(grid);
    if (!(tr.psi > 0.0) || !(tr.psi < 1.0)) throw PsiOutOfRange("point-mass variants require 0 < psi < 1");
    const double point_mass = 1.0 - tr.psi;

    Vector out(grid.size());
    if (tr.kind == SystemKind::continuous) {
        const ContPH raw(tr.alpha_raw, tr.T, tr.exit);
        const double f0 = dot(tr.alpha_raw, tr.exit);
        if (f0 <= 1e-14) throw ZeroDensityAtOrigin("f_X(0) = alpha t vanished");
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = (cph_cdf(raw, grid[i]) - point_mass) / f0 * u_level;
    } else {
        const DiscPH raw(tr.alpha_raw, tr.T, tr.exit);
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = (dph_cdf(raw, as_step(grid[i])) - point_mass) * u_level;
    }
    return out;
}

EquivalenceReport verify_equivalence(const Realization& r, const TransformResult& tr, double u_level,
                                     const Vector& grid) {
    check_grid(grid);
    EquivalenceReport rep;
    rep.grid = grid;
    rep.psi = tr.psi;

    const Vector x0(r.order(), 0.0);
    if (r.kind() == SystemKind::continuous) {
        rep.y_system = simulate_continuous(r, u_level, x0, grid).outputs;
    } else {
        const std::uint64_t horizon = as_step(grid.back());
        const Trajectory traj = simulate_discrete(r, Vector(horizon, u_level), x0, horizon);
        rep.y_system.reserve(grid.size());
        for (double g : grid) rep.y_system.push_back(traj.outputs[as_step(g)]);
    }
    rep.y_ph = y_ph(tr, u_level, grid);

    rep.max_abs_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        rep.max_abs_err = std::max(rep.max_abs_err, std::abs(rep.y_system[i] - rep.y_ph[i]));
    return rep;
}

bool equivalence_pass(const EquivalenceReport& report) {
    return report.max_abs_err <= 1e-8 * (1.0 + inf_norm(report.y_system));
}

}  // namespace phaseforge
