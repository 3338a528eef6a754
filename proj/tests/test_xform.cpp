#include <cmath>

#include "doctest.h"
#include "phaseforge/scenarios.hpp"
#include "phaseforge/xform.hpp"
#include "test_support.hpp"

using namespace phaseforge;
using phaseforge::testing::random_continuous;
using phaseforge::testing::random_discrete;
using phaseforge::testing::uniform;

TEST_CASE("augment layout") {
    const Matrix d = augment(Matrix::from_rows({{-1.0}}), {1.0});
    CHECK(d.rows() == 2);
    CHECK(d(0, 0) == -1.0);
    CHECK(d(0, 1) == 1.0);
    CHECK(d(1, 0) == 0.0);
    CHECK(d(1, 1) == 0.0);

    const Matrix z = augment(Matrix(2, 2), {0.0, 0.0});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(z(i, j) == 0.0);

    CHECK_THROWS_AS(augment(Matrix(2, 2), {1.0}), DimensionMismatch);
}

TEST_CASE("cont_to_cph on the continuous demo system") {
    const TransformResult tr = cont_to_cph(continuous_example());

    CHECK(tr.psi == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(tr.scale[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(tr.scale[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(tr.scale[2] == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(tr.alpha_raw[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(tr.alpha_raw[1] == doctest::Approx(0.0));
    CHECK(tr.alpha_raw[2] == doctest::Approx(0.0));
    CHECK(tr.alpha_star[0] == doctest::Approx(1.0).epsilon(1e-12));

    const Matrix expected_T = Matrix::from_rows({{-2.0, 4.0 / 3.0, 0.0}, {0.0, -1.0, 0.5}, {0.0, 0.0, -1.0}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(tr.T(i, j) == doctest::Approx(expected_T(i, j)).epsilon(1e-9));

    CHECK(tr.exit[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(tr.exit[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(tr.exit[2] == doctest::Approx(1.0).epsilon(1e-9));

    const double len = std::sqrt(dot(tr.nu, tr.nu));
    CHECK(tr.nu[0] / len == doctest::Approx(0.5222330).epsilon(1e-6));
    CHECK(tr.nu[1] / len == doctest::Approx(0.6963106).epsilon(1e-6));
    CHECK(tr.nu[2] / len == doctest::Approx(0.3481553).epsilon(1e-6));
    CHECK(tr.nu[3] / len == doctest::Approx(0.3481553).epsilon(1e-6));

    REQUIRE(tr.cph.has_value());
    CHECK(tr.cph->deficit() == doctest::Approx(0.0));
    CHECK(tr.checks.exit_identity_residual <= 1e-9);
}

TEST_CASE("cont_to_cph scalar closed form") {
    const double rate = 0.7;
    const Realization r(SystemKind::continuous, Matrix::from_rows({{-rate}}), {1.0}, {1.0});
    const TransformResult tr = cont_to_cph(r);
    CHECK(tr.nu[0] == doctest::Approx(1.0 / rate).epsilon(1e-12));
    CHECK(tr.nu[1] == doctest::Approx(1.0));
    CHECK(tr.scale[0] == doctest::Approx(1.0 / rate).epsilon(1e-12));
    CHECK(tr.alpha_raw[0] == doctest::Approx(1.0 / rate).epsilon(1e-12));
    CHECK(tr.T(0, 0) == doctest::Approx(-rate).epsilon(1e-12));
    CHECK(tr.exit[0] == doctest::Approx(rate).epsilon(1e-12));
    CHECK(tr.psi == doctest::Approx(1.0 / rate).epsilon(1e-12));
}

TEST_CASE("cont_to_cph hypothesis failures are named") {
    const Matrix stable = Matrix::from_rows({{-1.0, 0.0}, {0.0, -2.0}});
    CHECK_THROWS_AS(cont_to_cph(Realization(SystemKind::continuous, stable, {0.0, 0.0}, {1.0, 0.0})),
                    NotExcitable);
    const Matrix unstable = Matrix::from_rows({{1.0, 0.0}, {0.0, -2.0}});
    CHECK_THROWS_AS(cont_to_cph(Realization(SystemKind::continuous, unstable, {1.0, 1.0}, {1.0, 0.0})),
                    NotStable);
    CHECK_THROWS_AS(cont_to_cph(Realization(SystemKind::discrete, Matrix(2, 2), {1.0, 1.0}, {1.0, 0.0})),
                    InvalidValue);
}

TEST_CASE("disc_to_dph on the student system") {
    const TransformResult tr = disc_to_dph(student_dynamics(StudentRates{}));

    CHECK(tr.psi == doctest::Approx(0.6905371).epsilon(1e-7));
    CHECK(tr.alpha_raw[0] == doctest::Approx(0.0));
    CHECK(tr.alpha_raw[1] == doctest::Approx(0.0));
    CHECK(tr.alpha_raw[2] == doctest::Approx(0.6905371).epsilon(1e-7));

    const Matrix expected_T = Matrix::from_rows({{0.2, 0.0, 0.0}, {0.85, 0.15, 0.0}, {0.0, 0.92, 0.08}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(tr.T(i, j) == doctest::Approx(expected_T(i, j)).epsilon(1e-12));

    CHECK(tr.exit[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(tr.exit[1] == doctest::Approx(0.0));
    CHECK(tr.exit[2] == doctest::Approx(0.0));

    CHECK(tr.alpha_star[2] == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(tr.dph.has_value());
    CHECK(tr.checks.exit_identity_residual <= 1e-9);
}

TEST_CASE("disc_to_dph on the supply chain system") {
    const TransformResult tr = disc_to_dph(supply_chain(SupplyRates{}));

    CHECK(tr.alpha_raw[2] == doctest::Approx(0.7231638).epsilon(1e-7));
    const Matrix expected_T = Matrix::from_rows({{0.25, 0.0, 0.0},
                                                 {0.8329412, 0.12, 0.0470588},
                                                 {0.0, 0.85, 0.15}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(tr.T(i, j) == doctest::Approx(expected_T(i, j)).epsilon(1e-6));
    CHECK(tr.exit[0] == doctest::Approx(0.75).epsilon(1e-12));

    // z equals the hand-solved staging system (4/3, 170/177, 160/177).
    CHECK(tr.z[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(tr.z[1] == doctest::Approx(170.0 / 177.0).epsilon(1e-12));
    CHECK(tr.z[2] == doctest::Approx(160.0 / 177.0).epsilon(1e-12));
}

TEST_CASE("disc_to_dph one-state immediate absorption") {
    const Realization r(SystemKind::discrete, Matrix(1, 1), {1.0}, {1.0});
    const TransformResult tr = disc_to_dph(r);
    CHECK(tr.z[0] == doctest::Approx(1.0));
    CHECK(tr.T(0, 0) == doctest::Approx(0.0));
    CHECK(tr.exit[0] == doctest::Approx(1.0));
    CHECK(tr.psi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ph_mean(*tr.dph) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disc_to_dph hypothesis failures") {
    CHECK_THROWS_AS(disc_to_dph(Realization(SystemKind::discrete, Matrix::identity(2), {1.0, 1.0}, {1.0, 0.0})),
                    NotStable);
    CHECK_THROWS_AS(disc_to_dph(Realization(SystemKind::discrete, Matrix(2, 2) , {1.0, 0.0}, {1.0, 0.0})),
                    NotExcitable);
}

TEST_CASE("normalize_alpha") {
    {
        const auto [star, psi] = normalize_alpha({1.5, 0.0, 0.0});
        CHECK(psi == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(star[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(star[1] == 0.0);
    }
    {
        const auto [star, psi] = normalize_alpha({0.0, 0.0, 0.6905371});
        CHECK(psi == doctest::Approx(0.6905371).epsilon(1e-12));
        CHECK(star[2] == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        const auto [star, psi] = normalize_alpha({0.25, 0.25});
        CHECK(psi == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(star[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(star[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normalize_alpha({0.0, 0.0}), ZeroMass);
    CHECK_THROWS_AS(normalize_alpha({-0.5, 1.0}), InvalidValue);
}

TEST_CASE("similarity preserves Markov parameters") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 5);

        const Realization rd = random_discrete(rng, n);
        const TransformResult td = disc_to_dph(rd);
        for (std::uint64_t k = 1; k <= 25; ++k) {
            const double original = dot(rd.C(), mat_pow(rd.A(), k - 1) * rd.B());
            const double transformed = dot(td.alpha_raw, mat_pow(td.T, k - 1) * td.exit);
            CHECK(std::abs(original - transformed) <= 1e-9 * (1.0 + std::abs(original)));
        }

        const Realization rc = random_continuous(rng, n);
        const TransformResult tc = cont_to_cph(rc);
        for (double t = 0.1; t <= 5.0; t += 0.7) {
            const double original = dot(rc.C(), mat_exp(rc.A() * t) * rc.B());
            const double transformed = dot(tc.alpha_raw, mat_exp(tc.T * t) * tc.exit);
            CHECK(std::abs(original - transformed) <= 1e-8);
        }
    }
}

TEST_CASE("psi times the normalized pmf reproduces the impulse response") {
    const Realization r = student_dynamics(StudentRates{});
    const TransformResult tr = disc_to_dph(r);
    for (std::uint64_t k = 1; k <= 12; ++k) {
        const double markov = dot(r.C(), mat_pow(r.A(), k - 1) * r.B());
        CHECK(tr.psi * dph_pmf(*tr.dph, k) == doctest::Approx(markov).epsilon(1e-12));
    }
}

TEST_CASE("similarity preserves the Perron root") {
    Rng rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        const Realization rd = random_discrete(rng, 4);
        CHECK(perron_root(disc_to_dph(rd).T) == doctest::Approx(perron_root(rd.A())).epsilon(1e-9));
        const Realization rc = random_continuous(rng, 4);
        CHECK(perron_root(cont_to_cph(rc).T) == doctest::Approx(perron_root(rc.A())).epsilon(1e-9));
    }
}

TEST_CASE("scaling_from_nu depends only on ratios") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        Vector nu(5);
        for (auto& v : nu) v = uniform(rng, 0.2, 3.0);
        const Vector base = scaling_from_nu(nu);
        const double c = uniform(rng, 0.1, 9.0);
        Vector scaled = nu;
        for (auto& v : scaled) v *= c;
        const Vector again = scaling_from_nu(scaled);
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(again[i] == doctest::Approx(base[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(scaling_from_nu({1.0, 0.0, 1.0}), NonpositiveZ);
    CHECK_THROWS_AS(scaling_from_nu({1.0}), DimensionMismatch);
}

TEST_CASE("shift choice does not change the Perron direction") {
    const Realization r = continuous_example();
    const Matrix delta = augment(r.A(), r.B());
    const double eta = 1.0 + delta.inf_norm();
    Vector reference;
    for (double extra : {0.0, 1.0}) {
        Matrix shifted = delta;
        for (std::size_t i = 0; i < 4; ++i) shifted(i, i) += eta + extra;
        const EigenPair p = dominant_eigenpair(shifted, 1e-12, 20000);
        CHECK(p.value == doctest::Approx(eta + extra).epsilon(1e-9));
        CHECK(p.vector[0] == doctest::Approx(0.5222330).epsilon(1e-6));
        CHECK(p.vector[3] == doctest::Approx(0.3481553).epsilon(1e-6));
        if (reference.empty()) {
            reference = p.vector;
        } else {
            for (std::size_t i = 0; i < 4; ++i)
                CHECK(std::abs(p.vector[i] - reference[i]) <= 1e-8);
        }
    }
}

TEST_CASE("transformed exit identity holds for random systems") {
    Rng rng(67);
    for (int trial = 0; trial < 8; ++trial) {
        const TransformResult td = disc_to_dph(random_discrete(rng, 5));
        const Vector row_sums = td.T * ones(5);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(std::abs(td.exit[i] - (1.0 - row_sums[i])) <= 1e-9);

        const TransformResult tc = cont_to_cph(random_continuous(rng, 5));
        const Vector crow = tc.T * ones(5);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(std::abs(tc.exit[i] + crow[i]) <= 1e-9);
    }
}
