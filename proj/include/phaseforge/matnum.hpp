#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "phaseforge/errors.hpp"

namespace phaseforge {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Values are immutable in spirit: every
/// operation below is a pure function returning a fresh value.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator*(double scalar) const;
    Vector operator*(const Vector& x) const;

    /// Max absolute row sum.
    double inf_norm() const;

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector entries_;
};

double dot(const Vector& a, const Vector& b);
double inf_norm(const Vector& v);
Vector ones(std::size_t n);

/// x with Ax = b by Gaussian elimination with row pivoting. Throws
/// SingularMatrix when a pivot magnitude drops below 1e-14 times the
/// largest initial entry magnitude.
Vector solve_linear(const Matrix& A, const Vector& b);

/// e^A by scaling-and-squaring with the order-13 diagonal Pade approximant;
/// the scaled norm is brought below 0.5 before evaluation. Throws Overflow
/// if an intermediate magnitude leaves the representable range.
Matrix mat_exp(const Matrix& A);

/// A^k by repeated squaring; A^0 = I.
Matrix mat_pow(const Matrix& A, std::uint64_t k);

struct EigenPair {
    double value = 0.0;
    Vector vector;
};

/// Power iteration from the all-ones vector for a nonnegative matrix.
/// Returns (lambda, v) with ||Av - lambda v||_inf <= tol * ||v||_inf and v
/// of unit Euclidean length, entrywise nonnegative. Throws NoConvergence
/// after max_iter steps.
EigenPair dominant_eigenpair(const Matrix& A, double tol = 1e-12, std::size_t max_iter = 10000);

/// Spectral radius of an entrywise-nonnegative matrix via normalized
/// repeated squaring of the matrix, rho = lim ||A^(2^m)||^(1/2^m). Unlike
/// power iteration this converges even when the dominant eigenvalue is
/// defective, which triangular state matrices routinely are.
double spectral_radius(const Matrix& A);

/// Dominant (Perron) eigenvalue of a Metzler or nonnegative matrix,
/// computed as spectral_radius(A + eta*I) - eta with eta = 1 + max
/// absolute row sum, the shift that makes the matrix nonnegative with
/// positive diagonal.
double perron_root(const Matrix& A);

}  // namespace phaseforge
