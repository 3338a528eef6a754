#include "phaseforge/xform.hpp"

#include <cmath>
#include <string>

namespace phaseforge {

namespace {

constexpr double kExitIdentityTol = 1e-9;
constexpr double kCrossCheckTol = 1e-8;

/// alpha = C * diag(scale), T = diag(scale)^(-1) A diag(scale),
/// t = diag(scale)^(-1) B. Shared by both transform directions.
void apply_diagonal_similarity(const Realization& r, const Vector& scale, TransformResult& out) {
    const std::size_t n = r.order();
    out.scale = scale;
    out.alpha_raw.resize(n);
    out.exit.resize(n);
    out.T = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.alpha_raw[i] = r.C()[i] * scale[i];
        out.exit[i] = r.B()[i] / scale[i];
        for (std::size_t j = 0; j < n; ++j) out.T(i, j) = r.A()(i, j) * scale[j] / scale[i];
    }
}

double exit_identity_residual(const TransformResult& tr) {
    const std::size_t n = tr.exit.size();
    const Vector row_sums = tr.T * ones(n);
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = tr.kind == SystemKind::continuous ? -row_sums[i] : 1.0 - row_sums[i];
        resid = std::max(resid, std::abs(tr.exit[i] - expected));
    }
    return resid;
}

void check_hypotheses(const Realization& r) {
    if (r.kind() == SystemKind::continuous) {
        if (!is_metzler(r.A())) throw NotMetzler("state matrix is not Metzler");
    } else {
        for (std::size_t i = 0; i < r.order(); ++i)
            for (std::size_t j = 0; j < r.order(); ++j)
                if (r.A()(i, j) < 0.0) throw NotNonnegative("state matrix has negative entries");
    }
    if (!is_excitable(r.A(), r.B())) throw NotExcitable("pair (A, B) is not excitable");
    if (!is_stable(r)) throw NotStable("state matrix is not asymptotically stable");
}

}  // namespace

Matrix augment(const Matrix& A, const Vector& B) {
    if (!A.square() || A.rows() != B.size()) throw DimensionMismatch("augment shape mismatch");
    const std::size_t n = B.size();
    Matrix delta(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) delta(i, j) = A(i, j);
        delta(i, n) = B[i];
    }
    return delta;
}

Vector scaling_from_nu(const Vector& nu) {
    if (nu.size() < 2) throw DimensionMismatch("nu must have length n + 1 >= 2");
    const double last = nu.back();
    if (!(last > 0.0)) throw NonpositiveZ("nu_(n+1) must be positive");
    Vector scale(nu.size() - 1);
    for (std::size_t i = 0; i + 1 < nu.size(); ++i) {
        if (!(nu[i] > 0.0)) throw NonpositiveZ("nu must be strictly positive");
        scale[i] = nu[i] / last;
    }
    return scale;
}

std::pair<Vector, double> normalize_alpha(const Vector& alpha_raw) {
    double psi = 0.0;
    for (double a : alpha_raw) {
        if (a < -1e-12) throw InvalidValue("alpha_raw must be nonnegative");
        psi += a;
    }
    if (psi <= 1e-14) throw ZeroMass("alpha_raw has no mass to normalize");
    Vector star(alpha_raw.size());
    for (std::size_t i = 0; i < alpha_raw.size(); ++i) star[i] = std::max(alpha_raw[i], 0.0) / psi;
    return {star, psi};
}

TransformResult cont_to_cph(const Realization& r) {
    if (r.kind() != SystemKind::continuous) throw InvalidValue("cont_to_cph needs a continuous realization");
    check_hypotheses(r);

    const std::size_t n = r.order();
    TransformResult out;
    out.kind = SystemKind::continuous;
    out.checks = {true, true, true, 0.0};

    // Delta nu = 0 with nu_(n+1) = 1 reduces to A v = -B: solve it exactly.
    Vector neg_b(n);
    for (std::size_t i = 0; i < n; ++i) neg_b[i] = -r.B()[i];
    const Vector v = solve_linear(r.A(), neg_b);
    out.nu = v;
    out.nu.push_back(1.0);
    for (double x : out.nu)
        if (!(x > 1e-12)) throw NonpositiveZ("augmented null direction is not strictly positive");

    // Independent route: Perron vector of Delta + eta I by power iteration.
    const Matrix delta = augment(r.A(), r.B());
    out.eta = 1.0 + delta.inf_norm();
    Matrix shifted = delta;
    for (std::size_t i = 0; i <= n; ++i) shifted(i, i) += out.eta;
    const EigenPair perron = dominant_eigenpair(shifted, 1e-10, 50000);
    const double nu_len = std::sqrt(dot(out.nu, out.nu));
    for (std::size_t i = 0; i <= n; ++i) {
        if (std::abs(out.nu[i] / nu_len - perron.vector[i]) > kCrossCheckTol)
            throw Error("null-direction cross-check disagrees with the Perron eigenvector");
    }

    apply_diagonal_similarity(r, scaling_from_nu(out.nu), out);

    out.checks.exit_identity_residual = exit_identity_residual(out);
    if (out.checks.exit_identity_residual > kExitIdentityTol)
        throw Error("transformed exit vector does not satisfy t = -T 1");

    auto [star, psi] = normalize_alpha(out.alpha_raw);
    out.alpha_star = std::move(star);
    out.psi = psi;
    out.cph.emplace(out.alpha_star, out.T, out.exit);
    return out;
}

TransformResult disc_to_dph(const Realization& r) {
    if (r.kind() != SystemKind::discrete) throw InvalidValue("disc_to_dph needs a discrete realization");
    check_hypotheses(r);

    const std::size_t n = r.order();
    TransformResult out;
    out.kind = SystemKind::discrete;
    out.checks = {true, true, true, 0.0};

    out.z = solve_linear(Matrix::identity(n) - r.A(), r.B());
    for (double zi : out.z)
        if (!(zi > 1e-12)) throw NonpositiveZ("(I - A)^(-1) B must be strictly positive");

    apply_diagonal_similarity(r, out.z, out);
    for (double a : out.alpha_raw)
        if (a < 0.0) throw Error("transformed alpha must be nonnegative");

    out.checks.exit_identity_residual = exit_identity_residual(out);
    if (out.checks.exit_identity_residual > kExitIdentityTol)
        throw Error("transformed exit vector does not satisfy t = (I - T) 1");

    auto [star, psi] = normalize_alpha(out.alpha_raw);
    out.alpha_star = std::move(star);
    out.psi = psi;
    out.dph.emplace(out.alpha_star, out.T, out.exit);
    return out;
}

}  // namespace phaseforge
