#pragma once

#include <optional>
#include <utility>

#include "phaseforge/phtype.hpp"
#include "phaseforge/possys.hpp"

namespace phaseforge {

struct TransformChecks {
    bool structure = false;   // Metzler (continuous) / nonnegative (discrete)
    bool excitable = false;
    bool stable = false;
    double exit_identity_residual = 0.0;
};

/// Everything a realization-to-phase-type conversion produces: the diagonal
/// similarity data, the raw initial vector alpha_raw (which need not sum to
/// one), its normalization (alpha_star, psi), the transformed pair (T, t),
/// and the normalized distribution itself.
struct TransformResult {
    SystemKind kind = SystemKind::discrete;

    double eta = 0.0;     // shift used by the eigenvector cross-check (continuous)
    Vector nu;            // length n+1 null direction of the augmented matrix (continuous)
    Vector z;             // (I - A)^(-1) B (discrete)
    Vector scale;         // diagonal of the similarity U (continuous) or M (discrete)

    Vector alpha_raw;
    Vector alpha_star;
    double psi = 0.0;

    Matrix T;             // transformed state matrix
    Vector exit;          // transformed exit vector

    TransformChecks checks;

    std::optional<ContPH> cph;  // built from alpha_star (continuous kind)
    std::optional<DiscPH> dph;  // built from alpha_star (discrete kind)
};

/// Block matrix [[A, B], [0, 0]] of size (n+1) x (n+1).
Matrix augment(const Matrix& A, const Vector& B);

/// Diagonal of U from the augmented null direction: nu_i / nu_(n+1).
/// Depends only on ratios, so rescaling nu leaves the result unchanged.
Vector scaling_from_nu(const Vector& nu);

/// (alpha_star, psi): psi = sum(alpha_raw), alpha_star = alpha_raw / psi.
std::pair<Vector, double> normalize_alpha(const Vector& alpha_raw);

/// Transforms an excitable, stable, Metzler continuous realization into a
/// continuous phase-type representation. The null direction nu of the
/// augmented matrix is obtained exactly from A v = -B and cross-checked
/// against power iteration on the shifted augmented matrix.
TransformResult cont_to_cph(const Realization& r);

/// Transforms an excitable, stable, nonnegative discrete realization into
/// a discrete phase-type representation through M = diag((I - A)^(-1) B).
TransformResult disc_to_dph(const Realization& r);

}  // namespace phaseforge
