#pragma once

#include "phaseforge/xform.hpp"

namespace phaseforge {

/// Paired output series of a positive system and its phase-type image,
/// with their maximum absolute discrepancy.
struct EquivalenceReport {
    Vector grid;
    Vector y_system;
    Vector y_ph;
    double max_abs_err = 0.0;
    double psi = 0.0;
};

/// Phase-type side of the output identity: psi * u * F_(X*)(t) on each
/// grid point, with F the cdf of the normalized distribution.
Vector y_ph(const TransformResult& tr, double u_level, const Vector& grid);

/// Point-mass variants valid for 0 < psi < 1, evaluated under the raw
/// (unnormalized) initial vector whose deficit is 1 - psi:
/// continuous (F_X(t) - (1 - psi)) / f_X(0) * u, discrete
/// (F_X(k) - (1 - psi)) * u.
Vector y_ph_deficit_variants(const TransformResult& tr, double u_level, const Vector& grid);

/// Simulates the realization from a zero initial state under the constant
/// input, evaluates y_ph on the same grid, and reports the discrepancy.
EquivalenceReport verify_equivalence(const Realization& r, const TransformResult& tr, double u_level,
                                     const Vector& grid);

/// PASS threshold: max_abs_err <= 1e-8 * (1 + max |y_system|).
bool equivalence_pass(const EquivalenceReport& report);

}  // namespace phaseforge
