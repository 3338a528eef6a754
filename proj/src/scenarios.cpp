#include "phaseforge/scenarios.hpp"

#include <string>

namespace phaseforge {

namespace {

void require_rate(double v, const std::string& name) {
    if (!(v >= 0.0) || !(v <= 1.0)) throw InvalidRates(name + " must lie in [0, 1], got " + std::to_string(v));
}

void require_budget(double used, const std::string& what) {
    if (used > 1.0 + 1e-12) throw InvalidRates(what + " exceed 1 (sum " + std::to_string(used) + ")");
}

}  // namespace

Realization student_dynamics(const StudentRates& rates) {
    for (int i = 0; i < 3; ++i) {
        require_rate(rates.promote[i], "promotion rate xi" + std::to_string(i + 1));
        require_rate(rates.fail[i], "failure rate beta" + std::to_string(i + 1));
        require_budget(rates.promote[i] + rates.fail[i],
                       "grade " + std::to_string(i + 1) + " rates xi + beta");
    }
    const auto& xi = rates.promote;
    const auto& beta = rates.fail;
    Matrix A = Matrix::from_rows({{beta[0], 0.0, 0.0},
                                  {xi[0], beta[1], 0.0},
                                  {0.0, xi[1], beta[2]}});
    return Realization(SystemKind::discrete, A, {1.0, 0.0, 0.0}, {0.0, 0.0, xi[2]});
}

Realization supply_chain(const SupplyRates& rates) {
    for (int i = 0; i < 2; ++i) {
        require_rate(rates.discard[i], "discard rate delta" + std::to_string(i + 1));
        require_rate(rates.ship[i], "shipping rate xi" + std::to_string(i + 1));
        require_budget(rates.ship[i] + rates.discard[i],
                       "stage " + std::to_string(i + 1) + " rates xi + delta");
    }
    require_rate(rates.return_rate, "return rate beta3");
    require_rate(rates.sell, "sell rate gamma3");
    require_budget(rates.return_rate + rates.sell, "retailer rates beta3 + gamma3");

    const double d1 = rates.discard[0], d2 = rates.discard[1];
    const double x1 = rates.ship[0], x2 = rates.ship[1];
    const double b3 = rates.return_rate, g3 = rates.sell;
    Matrix A = Matrix::from_rows({{1.0 - x1 - d1, 0.0, 0.0},
                                  {x1, 1.0 - x2 - d2, b3},
                                  {0.0, x2, 1.0 - b3 - g3}});
    return Realization(SystemKind::discrete, A, {1.0, 0.0, 0.0}, {0.0, 0.0, g3});
}

Realization continuous_example() {
    Matrix A = Matrix::from_rows({{-2.0, 1.0, 0.0},
                                  {0.0, -1.0, 1.0},
                                  {0.0, 0.0, -1.0}});
    return Realization(SystemKind::continuous, A, {1.0, 1.0, 1.0}, {1.0, 0.0, 0.0});
}

}  // namespace phaseforge
