#include "phaseforge/possys.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace phaseforge {

namespace {

constexpr double kClampTol = 1e-9;
constexpr double kZeroPattern = 1e-12;

double clamp_noise(double x, const char* what) {
    if (x < -kClampTol) throw NotNonnegative(std::string(what) + " has a negative entry " + std::to_string(x));
    return x < 0.0 ? 0.0 : x;
}

}  // namespace

Realization::Realization(SystemKind kind, Matrix A, Vector B, Vector C)
    : kind_(kind), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
    const std::size_t n = B_.size();
    if (!A_.square() || A_.rows() != n || C_.size() != n)
        throw DimensionMismatch("realization requires square n x n A with length-n B and C");
    if (!A_.all_finite()) throw InvalidValue("realization A has non-finite entries");

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(B_[i]) || !std::isfinite(C_[i]))
            throw InvalidValue("realization B/C have non-finite entries");
        B_[i] = clamp_noise(B_[i], "B");
        C_[i] = clamp_noise(C_[i], "C");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (kind_ == SystemKind::discrete) {
                if (A_(i, j) < -kClampTol) throw NotNonnegative("discrete A has a negative entry");
                if (A_(i, j) < 0.0) A_(i, j) = 0.0;
            } else if (i != j) {
                if (A_(i, j) < -kClampTol) throw NotMetzler("continuous A has a negative off-diagonal entry");
                if (A_(i, j) < 0.0) A_(i, j) = 0.0;
            }
        }
    }
}

bool is_metzler(const Matrix& A) {
    if (!A.square()) throw DimensionMismatch("is_metzler requires a square matrix");
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j && A(i, j) < -kZeroPattern) return false;
    return true;
}

bool is_excitable(const Matrix& A, const Vector& B) {
    if (!A.square() || A.rows() != B.size()) throw DimensionMismatch("is_excitable shape mismatch");
    const std::size_t n = B.size();
    std::vector<bool> reached(n, false);
    std::deque<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        if (B[i] > kZeroPattern) {
            reached[i] = true;
            frontier.push_back(i);
        }
    }
    while (!frontier.empty()) {
        const std::size_t j = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            if (!reached[i] && std::abs(A(i, j)) > kZeroPattern) {
                reached[i] = true;
                frontier.push_back(i);
            }
        }
    }
    for (bool r : reached)
        if (!r) return false;
    return true;
}

bool is_stable(const Realization& r) {
    const double root = perron_root(r.A());
    if (r.kind() == SystemKind::continuous) return root < -1e-12;
    return root < 1.0 - 1e-12;
}

Trajectory simulate_discrete(const Realization& r, const Vector& u, const Vector& x0, std::size_t horizon) {
    if (r.kind() != SystemKind::discrete) throw InvalidValue("simulate_discrete needs a discrete realization");
    if (x0.size() != r.order()) throw DimensionMismatch("x0 length does not match system order");
    if (u.size() != horizon) throw DimensionMismatch("input sequence length must equal the horizon");

    Trajectory out;
    out.times.reserve(horizon + 1);
    out.states.reserve(horizon + 1);
    out.outputs.reserve(horizon + 1);

    Vector x = x0;
    out.times.push_back(0.0);
    out.states.push_back(x);
    out.outputs.push_back(dot(r.C(), x));
    for (std::size_t k = 0; k < horizon; ++k) {
        Vector next = r.A() * x;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += r.B()[i] * u[k];
        x = std::move(next);
        out.times.push_back(static_cast<double>(k + 1));
        out.states.push_back(x);
        out.outputs.push_back(dot(r.C(), x));
    }
    return out;
}

Trajectory simulate_continuous(const Realization& r, double u_level, const Vector& x0, const Vector& grid) {
    if (r.kind() != SystemKind::continuous) throw InvalidValue("simulate_continuous needs a continuous realization");
    if (x0.size() != r.order()) throw DimensionMismatch("x0 length does not match system order");
    if (grid.empty() || grid.front() < 0.0) throw InvalidValue("time grid must start at a nonnegative time");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidValue("time grid must be strictly increasing");

    const std::size_t n = r.order();
    const Matrix I = Matrix::identity(n);

    Trajectory out;
    out.times = grid;
    out.states.reserve(grid.size());
    out.outputs.reserve(grid.size());
    for (double t : grid) {
        const Matrix E = mat_exp(r.A() * t);
        const Vector w = (E - I) * r.B();
        const Vector forced = solve_linear(r.A(), w);  // A^{-1}(e^{At}-I)B
        Vector x = E * x0;
        for (std::size_t i = 0; i < n; ++i) x[i] += forced[i] * u_level;
        out.states.push_back(x);
        out.outputs.push_back(dot(r.C(), x));
    }
    return out;
}

}  // namespace phaseforge
