#pragma once

#include <array>

#include "phaseforge/possys.hpp"

namespace phaseforge {

/// Three-grade student progression: per grade, a promotion rate xi, a
/// failure (repeat) rate beta, and the implied dropout rate
/// gamma = 1 - xi - beta, which must be nonnegative.
struct StudentRates {
    std::array<double, 3> promote{0.6, 0.8, 0.9};
    std::array<double, 3> fail{0.2, 0.15, 0.08};
};

/// Supplier -> producer -> retailer chain: discard rates at the supplier
/// and producer, shipping rates between stages, the retailer's monthly
/// defect-return rate and sell-through rate.
struct SupplyRates {
    std::array<double, 2> discard{0.15, 0.08};
    std::array<double, 2> ship{0.6, 0.8};
    double return_rate = 0.05;
    double sell = 0.8;
};

/// Discrete realization of the student dynamics:
/// A = [[b1,0,0],[x1,b2,0],[0,x2,b3]], B = e1, C = (0,0,x3).
Realization student_dynamics(const StudentRates& rates);

/// Discrete realization of the supply chain:
/// A = [[1-x1-d1,0,0],[x1,1-x2-d2,b3],[0,x2,1-b3-g3]], B = e1, C = (0,0,g3).
Realization supply_chain(const SupplyRates& rates);

/// The fixed third-order continuous demonstration system with
/// A = [[-2,1,0],[0,-1,1],[0,0,-1]], B = (1,1,1), C = (1,0,0).
Realization continuous_example();

}  // namespace phaseforge
