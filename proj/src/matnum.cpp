#include "phaseforge/matnum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace phaseforge {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw DimensionMismatch(msg);
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.all_finite()) throw InvalidValue(std::string(what) + ": matrix has non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw InvalidValue(std::string(what) + ": vector has non-finite entries");
    }
}

constexpr double kPivotRelTol = 1e-14;

/// Row-pivoted LU factorization, in place. perm[i] is the source row of
/// pivot row i. Throws SingularMatrix against the initial magnitude scale.
struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
};

LuFactors lu_factor(const Matrix& A) {
    const std::size_t n = A.rows();
    LuFactors f{A, {}};
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    const double threshold = kPivotRelTol * scale;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(f.lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(f.lu(r, col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (!(best > threshold)) throw SingularMatrix("pivot below singularity threshold at column " + std::to_string(col));
        if (pivot != col) {
            std::swap(f.perm[pivot], f.perm[col]);
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(pivot, j), f.lu(col, j));
        }
        const double d = f.lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = f.lu(r, col) / d;
            f.lu(r, col) = m;
            for (std::size_t j = col + 1; j < n; ++j) f.lu(r, j) -= m * f.lu(col, j);
        }
    }
    return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
    const std::size_t n = f.lu.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

/// Solve A X = B column by column with one factorization.
Matrix lu_solve_matrix(const Matrix& A, const Matrix& B) {
    const LuFactors f = lu_factor(A);
    const std::size_t n = A.rows();
    Matrix X(n, B.cols());
    Vector col(n);
    for (std::size_t j = 0; j < B.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = B(i, j);
        const Vector xj = lu_solve(f, col);
        for (std::size_t i = 0; i < n; ++i) X(i, j) = xj[i];
    }
    return X;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw InvalidValue("matrix dimensions must be at least 1x1");
    if (!std::isfinite(fill)) throw InvalidValue("matrix fill value must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<Vector> copied;
    copied.reserve(rows.size());
    for (const auto& r : rows) copied.emplace_back(r);
    return from_rows(copied);
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty() || rows.front().empty()) throw InvalidValue("matrix dimensions must be at least 1x1");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
        if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged row list");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (!std::isfinite(rows[i][j])) throw InvalidValue("matrix entries must be finite");
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix addition shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + rhs.entries_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix subtraction shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - rhs.entries_[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require(cols_ == rhs.rows_, "matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = entries_[i * cols_ + k];
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

Matrix Matrix::operator*(double scalar) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
    return out;
}

Vector Matrix::operator*(const Vector& x) const {
    require(cols_ == x.size(), "matrix-vector shape mismatch");
    Vector out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) sum += entries_[i * cols_ + j] * x[j];
        out[i] = sum;
    }
    return out;
}

double Matrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) row += std::abs(entries_[i * cols_ + j]);
        best = std::max(best, row);
    }
    return best;
}

bool Matrix::all_finite() const {
    for (double x : entries_)
        if (!std::isfinite(x)) return false;
    return true;
}

double dot(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "dot product length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double inf_norm(const Vector& v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

Vector ones(std::size_t n) { return Vector(n, 1.0); }

Vector solve_linear(const Matrix& A, const Vector& b) {
    require(A.square(), "solve_linear requires a square matrix");
    require(A.rows() == b.size(), "solve_linear right-hand side length mismatch");
    require_finite(A, "solve_linear");
    require_finite(b, "solve_linear");
    const Vector x = lu_solve(lu_factor(A), b);
    require_finite(x, "solve_linear result");
    return x;
}

Matrix mat_exp(const Matrix& A) {
    require(A.square(), "mat_exp requires a square matrix");
    require_finite(A, "mat_exp");
    const std::size_t n = A.rows();

    // [13/13] diagonal Pade coefficients.
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};

    const double norm = A.inf_norm();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix As = A * std::ldexp(1.0, -squarings);

    const Matrix I = Matrix::identity(n);
    const Matrix A2 = As * As;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A2 * A4;

    const Matrix Upoly = A6 * (A6 * b[13] + A4 * b[11] + A2 * b[9]) + A6 * b[7] + A4 * b[5] + A2 * b[3] + I * b[1];
    const Matrix U = As * Upoly;
    const Matrix V = A6 * (A6 * b[12] + A4 * b[10] + A2 * b[8]) + A6 * b[6] + A4 * b[4] + A2 * b[2] + I * b[0];

    Matrix R = lu_solve_matrix(V - U, V + U);
    for (int s = 0; s < squarings; ++s) {
        R = R * R;
        if (!R.all_finite()) throw Overflow("mat_exp overflow while squaring");
    }
    if (!R.all_finite()) throw Overflow("mat_exp produced non-finite entries");
    return R;
}

Matrix mat_pow(const Matrix& A, std::uint64_t k) {
    require(A.square(), "mat_pow requires a square matrix");
    require_finite(A, "mat_pow");
    Matrix result = Matrix::identity(A.rows());
    Matrix base = A;
    while (k > 0) {
        if (k & 1u) {
            result = result * base;
            if (!result.all_finite()) throw Overflow("mat_pow overflow");
        }
        k >>= 1u;
        if (k > 0) {
            base = base * base;
            if (!base.all_finite()) throw Overflow("mat_pow overflow");
        }
    }
    return result;
}

EigenPair dominant_eigenpair(const Matrix& A, double tol, std::size_t max_iter) {
    require(A.square(), "dominant_eigenpair requires a square matrix");
    require_finite(A, "dominant_eigenpair");
    if (!(tol > 0.0)) throw InvalidValue("dominant_eigenpair tolerance must be positive");
    const std::size_t n = A.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (A(i, j) < -1e-12) throw InvalidValue("dominant_eigenpair requires a nonnegative matrix");

    Vector v = ones(n);
    double inv_len = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& x : v) x *= inv_len;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const Vector av = A * v;
        const double lambda = dot(v, av) / dot(v, v);  // Rayleigh quotient
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(av[i] - lambda * v[i]));
        if (resid <= tol * inf_norm(v)) {
            Vector clean = v;
            for (double& x : clean) x = std::max(x, 0.0);
            return {lambda, clean};
        }
        const double len = std::sqrt(dot(av, av));
        if (!(len > 0.0)) {
            // A v vanished: v is an exact null vector, eigenvalue 0.
            Vector clean = v;
            for (double& x : clean) x = std::max(x, 0.0);
            return {0.0, clean};
        }
        v = av;
        for (double& x : v) x /= len;
    }
    throw NoConvergence("power iteration did not reach tolerance in " + std::to_string(max_iter) + " iterations");
}

double spectral_radius(const Matrix& A) {
    require(A.square(), "spectral_radius requires a square matrix");
    require_finite(A, "spectral_radius");
    const std::size_t n = A.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (A(i, j) < -1e-12) throw InvalidValue("spectral_radius requires a nonnegative matrix");

    // Invariant: A^(2^m) = exp(log_scale) * M, so the Gelfand estimate at
    // step m is exp((log_scale + log ||M||) / 2^m). The estimates decrease
    // monotonically to rho; 55 squarings leave an error near 1e-14 even for
    // defective dominant eigenvalues. A fixed squaring count avoids false
    // early convergence when consecutive norm estimates stagnate.
    Matrix M = A;
    double log_scale = 0.0;
    double power = 1.0;  // 2^m
    if (M.inf_norm() == 0.0) return 0.0;

    for (int m = 0; m < 55; ++m) {
        const double norm = M.inf_norm();
        if (norm == 0.0) return 0.0;  // nilpotent
        const Matrix scaled = M * (1.0 / norm);
        M = scaled * scaled;
        log_scale = 2.0 * (log_scale + std::log(norm));
        power *= 2.0;
    }
    return std::exp((log_scale + std::log(std::max(M.inf_norm(), 1e-300))) / power);
}

double perron_root(const Matrix& A) {
    require(A.square(), "perron_root requires a square matrix");
    const std::size_t n = A.rows();
    const double eta = 1.0 + A.inf_norm();
    Matrix shifted = A;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += eta;
    return spectral_radius(shifted) - eta;
}

}  // namespace phaseforge
