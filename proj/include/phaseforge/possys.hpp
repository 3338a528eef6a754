#pragma once

#include <cstddef>
#include <vector>

#include "phaseforge/matnum.hpp"

namespace phaseforge {

enum class SystemKind { continuous, discrete };

/// A positive SISO state-space realization (A, B, C). Construction
/// validates the positivity structure: B and C nonnegative, A nonnegative
/// (discrete) or Metzler (continuous). Entries above -1e-9 are treated as
/// floating noise and clamped to zero; anything below is rejected.
class Realization {
public:
    Realization(SystemKind kind, Matrix A, Vector B, Vector C);

    SystemKind kind() const { return kind_; }
    const Matrix& A() const { return A_; }
    const Vector& B() const { return B_; }
    const Vector& C() const { return C_; }
    std::size_t order() const { return B_.size(); }

private:
    SystemKind kind_;
    Matrix A_;
    Vector B_;
    Vector C_;
};

/// Sampled (time, state, output) series from a simulation run.
struct Trajectory {
    Vector times;
    std::vector<Vector> states;
    Vector outputs;
};

/// True iff every off-diagonal entry of A is >= -1e-12.
bool is_metzler(const Matrix& A);

/// True iff every state is reachable from the input through the nonzero
/// pattern of (A, B): edge j -> i when |A(i,j)| > 1e-12, input -> i when
/// B(i) > 1e-12. Breadth-first search from the input node.
bool is_excitable(const Matrix& A, const Vector& B);

/// Asymptotic stability via the Perron root: continuous systems need it
/// below zero, discrete systems below one (both with a 1e-12 margin).
bool is_stable(const Realization& r);

/// x(k+1) = A x(k) + B u(k), y(k) = C x(k) for k = 0..K where K is the
/// length of the input sequence. Outputs y(0..K).
Trajectory simulate_discrete(const Realization& r, const Vector& u, const Vector& x0, std::size_t horizon);

/// Exact step response under a constant input level:
/// x(t) = e^(At) x0 + A^(-1) (e^(At) - I) B u. Requires A invertible.
Trajectory simulate_continuous(const Realization& r, double u_level, const Vector& x0, const Vector& grid);

}  // namespace phaseforge
