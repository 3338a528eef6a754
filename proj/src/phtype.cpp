#include "phaseforge/phtype.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "phaseforge/rng.hpp"

namespace phaseforge {

namespace {

constexpr double kProbWindow = 1e-10;
constexpr double kRowSumTol = 1e-10;

/// Clamps a raw probability to [0, 1], but only when it already sits in
/// the [-1e-10, 1 + 1e-10] sanity window; anything farther out is a logic
/// bug, not floating noise.
double probability(double raw, const char* what) {
    if (raw < -kProbWindow || raw > 1.0 + kProbWindow)
        throw InvalidValue(std::string(what) + ": value " + std::to_string(raw) + " outside probability window");
    if (raw < 0.0) return 0.0;
    if (raw > 1.0) return 1.0;
    return raw;
}

Vector checked_alpha(Vector alpha, double& deficit_out) {
    if (alpha.empty()) throw DimensionMismatch("initial vector must have length >= 1");
    double sum = 0.0;
    for (double& a : alpha) {
        if (!std::isfinite(a)) throw InvalidValue("initial vector has non-finite entries");
        if (a < -1e-12) throw InvalidValue("initial vector has a negative entry");
        if (a < 0.0) a = 0.0;
        sum += a;
    }
    if (sum > 1.0 + kProbWindow) throw InvalidValue("initial vector mass exceeds one");
    deficit_out = sum < 1.0 ? 1.0 - sum : 0.0;
    return alpha;
}

std::size_t draw_initial(Rng& rng, const Vector& alpha, bool& absorbed_at_zero) {
    const double u = rng.next_unit();
    double cum = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        cum += alpha[i];
        if (u < cum) {
            absorbed_at_zero = false;
            return i;
        }
    }
    absorbed_at_zero = true;  // landed in the deficit mass
    return 0;
}

double summarize(SampleSet& s) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    s.mean = sum / static_cast<double>(s.values.size());
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.variance = s.values.size() > 1 ? ss / static_cast<double>(s.values.size() - 1) : 0.0;
    return s.mean;
}

}  // namespace

ContPH::ContPH(Vector alpha, Matrix T, Vector exit_rates)
    : alpha_(std::move(alpha)), T_(std::move(T)), exit_(std::move(exit_rates)), deficit_(0.0) {
    const std::size_t n = alpha_.size();
    if (!T_.square() || T_.rows() != n || exit_.size() != n)
        throw DimensionMismatch("ContPH requires n x n T with length-n alpha and exit vector");
    alpha_ = checked_alpha(std::move(alpha_), deficit_);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(T_(i, i) < 0.0)) throw InvalidValue("sub-generator diagonal must be strictly negative");
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && T_(i, j) < -1e-12) throw InvalidValue("sub-generator off-diagonal must be nonnegative");
            row += T_(i, j);
        }
        if (exit_[i] < -kRowSumTol) throw InvalidValue("exit rates must be nonnegative");
        if (std::abs(exit_[i] + row) > kRowSumTol)
            throw InvalidValue("exit rates must equal -T 1 (row " + std::to_string(i) + ")");
    }
}

DiscPH::DiscPH(Vector alpha, Matrix T, Vector exit_probs)
    : alpha_(std::move(alpha)), T_(std::move(T)), exit_(std::move(exit_probs)), deficit_(0.0) {
    const std::size_t n = alpha_.size();
    if (!T_.square() || T_.rows() != n || exit_.size() != n)
        throw DimensionMismatch("DiscPH requires n x n T with length-n alpha and exit vector");
    alpha_ = checked_alpha(std::move(alpha_), deficit_);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (T_(i, j) < -1e-12) throw InvalidValue("sub-stochastic matrix must be nonnegative");
            if (T_(i, j) < 0.0) T_(i, j) = 0.0;
            row += T_(i, j);
        }
        if (exit_[i] < -1e-12) throw InvalidValue("exit probabilities must be nonnegative");
        if (exit_[i] < 0.0) exit_[i] = 0.0;
        if (std::abs(row + exit_[i] - 1.0) > kRowSumTol)
            throw InvalidValue("rows of [T | t] must sum to one (row " + std::to_string(i) + ")");
    }
    // Absorption must be certain: (I - T) x = 1 solvable.
    solve_linear(Matrix::identity(n) - T_, ones(n));
}

double cph_pdf(const ContPH& d, double x) {
    if (x < 0.0) throw NegativeTime("cph_pdf requires x >= 0");
    const Matrix E = mat_exp(d.T() * x);
    const double val = dot(d.alpha(), E * d.exit_rates());
    if (val < -1e-12) throw InvalidValue("cph_pdf produced a negative density");
    return val;
}

double cph_cdf(const ContPH& d, double x) {
    if (x < 0.0) throw NegativeTime("cph_cdf requires x >= 0");
    const Matrix E = mat_exp(d.T() * x);
    return probability(1.0 - dot(d.alpha(), E * ones(d.order())), "cph_cdf");
}

double cph_lst(const ContPH& d, double s) {
    if (!(s > 0.0)) throw InvalidValue("cph_lst requires s > 0");
    Matrix M = d.T() * -1.0;
    for (std::size_t i = 0; i < d.order(); ++i) M(i, i) += s;
    return dot(d.alpha(), solve_linear(M, d.exit_rates()));
}

Matrix cph_tpm(const ContPH& d, double s) {
    if (s < 0.0) throw NegativeTime("cph_tpm requires s >= 0");
    const std::size_t n = d.order();
    Matrix lambda(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) lambda(i, j) = d.T()(i, j);
        lambda(i, n) = d.exit_rates()[i];
    }
    Matrix P = mat_exp(lambda * s);
    for (std::size_t i = 0; i <= n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            P(i, j) = probability(P(i, j), "cph_tpm entry");
            row += P(i, j);
        }
        if (std::abs(row - 1.0) > kRowSumTol)
            throw InvalidValue("cph_tpm row " + std::to_string(i) + " does not sum to one");
    }
    return P;
}

double dph_pmf(const DiscPH& d, std::uint64_t k) {
    if (k == 0) return d.deficit();
    const Vector w = mat_pow(d.T(), k - 1) * d.exit_probs();
    return probability(dot(d.alpha(), w), "dph_pmf");
}

double dph_cdf(const DiscPH& d, std::uint64_t k) {
    const Vector w = mat_pow(d.T(), k) * ones(d.order());
    return probability(1.0 - dot(d.alpha(), w), "dph_cdf");
}

double ph_mean(const ContPH& d) {
    const Vector x = solve_linear(d.T(), ones(d.order()));
    return -dot(d.alpha(), x);
}

double ph_mean(const DiscPH& d) {
    const Vector x = solve_linear(Matrix::identity(d.order()) - d.T(), ones(d.order()));
    return dot(d.alpha(), x);
}

SampleSet ph_sample(const ContPH& d, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidCount("sample count must be at least 1");
    SampleSet out;
    out.seed = seed;
    out.values.resize(count);
    const std::size_t n = d.order();
    for (std::size_t idx = 0; idx < count; ++idx) {
        Rng rng = Rng::substream(seed, idx);
        bool at_zero = false;
        std::size_t state = draw_initial(rng, d.alpha(), at_zero);
        double time = 0.0;
        while (!at_zero) {
            const double rate = -d.T()(state, state);
            time += -std::log(1.0 - rng.next_unit()) / rate;
            const double u = rng.next_unit() * rate;
            double cum = 0.0;
            bool jumped = false;
            for (std::size_t j = 0; j < n && !jumped; ++j) {
                if (j == state) continue;
                cum += d.T()(state, j);
                if (u < cum) {
                    state = j;
                    jumped = true;
                }
            }
            if (!jumped) break;  // exit weight: absorbed
        }
        out.values[idx] = time;
    }
    summarize(out);
    return out;
}

SampleSet ph_sample(const DiscPH& d, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidCount("sample count must be at least 1");
    SampleSet out;
    out.seed = seed;
    out.values.resize(count);
    const std::size_t n = d.order();
    for (std::size_t idx = 0; idx < count; ++idx) {
        Rng rng = Rng::substream(seed, idx);
        bool at_zero = false;
        std::size_t state = draw_initial(rng, d.alpha(), at_zero);
        double time = 0.0;
        while (!at_zero) {
            time += 1.0;
            const double u = rng.next_unit();
            double cum = 0.0;
            bool jumped = false;
            for (std::size_t j = 0; j < n && !jumped; ++j) {
                cum += d.T()(state, j);
                if (u < cum) {
                    state = j;
                    jumped = true;
                }
            }
            if (!jumped) break;  // exit probability: absorbed at this step
        }
        out.values[idx] = time;
    }
    summarize(out);
    return out;
}

}  // namespace phaseforge
