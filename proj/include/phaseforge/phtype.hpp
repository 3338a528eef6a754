#pragma once

#include <cstdint>

#include "phaseforge/matnum.hpp"

namespace phaseforge {

/// Continuous phase-type distribution: initial weights alpha over the n
/// transient states, sub-generator T, exit rates t = -T 1, and the deficit
/// 1 - sum(alpha) held as an explicit point mass at time zero rather than
/// an appended absorbing state.
class ContPH {
public:
    ContPH(Vector alpha, Matrix T, Vector exit_rates);

    const Vector& alpha() const { return alpha_; }
    const Matrix& T() const { return T_; }
    const Vector& exit_rates() const { return exit_; }
    double deficit() const { return deficit_; }
    std::size_t order() const { return alpha_.size(); }

private:
    Vector alpha_;
    Matrix T_;
    Vector exit_;
    double deficit_;
};

/// Discrete phase-type distribution: sub-stochastic T with exit
/// probabilities t = (I - T) 1 and certain absorption ((I - T) invertible).
class DiscPH {
public:
    DiscPH(Vector alpha, Matrix T, Vector exit_probs);

    const Vector& alpha() const { return alpha_; }
    const Matrix& T() const { return T_; }
    const Vector& exit_probs() const { return exit_; }
    double deficit() const { return deficit_; }
    std::size_t order() const { return alpha_.size(); }

private:
    Vector alpha_;
    Matrix T_;
    Vector exit_;
    double deficit_;
};

struct SampleSet {
    Vector values;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Density alpha e^(Tx) t.
double cph_pdf(const ContPH& d, double x);

/// Distribution function 1 - alpha e^(Tx) 1, clamped to [0, 1].
double cph_cdf(const ContPH& d, double x);

/// Laplace-Stieltjes transform alpha (sI - T)^(-1) t for s > 0.
double cph_lst(const ContPH& d, double s);

/// Transition probability matrix e^(Lambda s) of the full chain, with
/// Lambda = [[T, t], [0, 0]]. Rows sum to one.
Matrix cph_tpm(const ContPH& d, double s);

/// Mass function: deficit at k = 0, alpha T^(k-1) t for k >= 1.
double dph_pmf(const DiscPH& d, std::uint64_t k);

/// Distribution function 1 - alpha T^k 1, clamped to [0, 1].
double dph_cdf(const DiscPH& d, std::uint64_t k);

/// Expected absorption time; the deficit mass contributes time zero.
double ph_mean(const ContPH& d);
double ph_mean(const DiscPH& d);

/// Simulates absorption times of the underlying chain. Sample i is drawn
/// from RNG substream i (see rng.hpp), so output is reproducible for a
/// fixed seed regardless of evaluation order.
SampleSet ph_sample(const ContPH& d, std::size_t count, std::uint64_t seed);
SampleSet ph_sample(const DiscPH& d, std::size_t count, std::uint64_t seed);

}  // namespace phaseforge
