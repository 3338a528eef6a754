#include "doctest.h"
#include "phaseforge/equiv.hpp"
#include "phaseforge/scenarios.hpp"
#include "test_support.hpp"

using namespace phaseforge;
using phaseforge::testing::uniform;

TEST_CASE("student_dynamics builds the expected realization") {
    const Realization r = student_dynamics(StudentRates{});
    CHECK(r.kind() == SystemKind::discrete);
    const Matrix expected = Matrix::from_rows({{0.2, 0.0, 0.0}, {0.6, 0.15, 0.0}, {0.0, 0.8, 0.08}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(r.A()(i, j) == expected(i, j));
    CHECK(r.B() == Vector{1.0, 0.0, 0.0});
    CHECK(r.C() == Vector{0.0, 0.0, 0.9});

    CHECK(is_excitable(r.A(), r.B()));
    CHECK(is_stable(r));
    CHECK(disc_to_dph(r).psi == doctest::Approx(0.6905371).epsilon(1e-7));
}

TEST_CASE("student pipeline with no repeats has mean three") {
    StudentRates r;
    r.promote = {1.0, 1.0, 1.0};
    r.fail = {0.0, 0.0, 0.0};
    const TransformResult tr = disc_to_dph(student_dynamics(r));
    CHECK(ph_mean(*tr.dph) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(tr.psi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("student rate validation") {
    StudentRates bad;
    bad.promote[0] = 1.0;
    bad.fail[0] = 0.2;  // xi1 + beta1 = 1.2
    CHECK_THROWS_AS(student_dynamics(bad), InvalidRates);
    StudentRates negative;
    negative.fail[1] = -0.1;
    CHECK_THROWS_AS(student_dynamics(negative), InvalidRates);
}

TEST_CASE("supply_chain builds the expected realization") {
    const Realization r = supply_chain(SupplyRates{});
    const Matrix expected = Matrix::from_rows({{0.25, 0.0, 0.0}, {0.6, 0.12, 0.05}, {0.0, 0.8, 0.15}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(r.A()(i, j) == doctest::Approx(expected(i, j)).epsilon(1e-15));
    CHECK(r.B() == Vector{1.0, 0.0, 0.0});
    CHECK(r.C()[2] == doctest::Approx(0.8));
    CHECK(is_excitable(r.A(), r.B()));
    CHECK(is_stable(r));
}

TEST_CASE("supply pipeline with no losses has mean three") {
    SupplyRates r;
    r.ship = {1.0, 1.0};
    r.discard = {0.0, 0.0};
    r.return_rate = 0.0;
    r.sell = 1.0;
    const TransformResult tr = disc_to_dph(supply_chain(r));
    CHECK(ph_mean(*tr.dph) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("supply rate validation") {
    SupplyRates bad;
    bad.return_rate = 0.3;
    bad.sell = 0.8;  // beta3 + gamma3 = 1.1
    CHECK_THROWS_AS(supply_chain(bad), InvalidRates);
}

TEST_CASE("continuous example satisfies every transform hypothesis") {
    const Realization r = continuous_example();
    CHECK(r.kind() == SystemKind::continuous);
    CHECK(r.A()(0, 0) == -2.0);
    CHECK(r.A()(1, 2) == 1.0);
    CHECK(is_metzler(r.A()));
    CHECK(is_excitable(r.A(), r.B()));
    CHECK(is_stable(r));
    CHECK(cont_to_cph(r).psi == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("student psi matches the closed form on random rates") {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        StudentRates r;
        for (int i = 0; i < 3; ++i) {
            r.fail[i] = uniform(rng, 0.0, 0.45);
            r.promote[i] = uniform(rng, 0.05, 1.0 - r.fail[i]);
        }
        const double closed = (r.promote[0] * r.promote[1] * r.promote[2]) /
                              ((1.0 - r.fail[0]) * (1.0 - r.fail[1]) * (1.0 - r.fail[2]));
        CHECK(disc_to_dph(student_dynamics(r)).psi == doctest::Approx(closed).epsilon(1e-12));
    }
}
