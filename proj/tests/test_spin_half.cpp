#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "seqent/spin_half.hpp"

using namespace seqent;
using namespace seqent::spin;
using Catch::Approx;

TEST_CASE("spin matrices", "[spin]") {
    CHECK((spin_matrix(0, 0, 1) - oracle::pauli_z()).norm() == 0.0);
    CHECK((spin_matrix(1, 0, 0) - oracle::pauli_x()).norm() == 0.0);
    CHECK((spin_matrix(0, 1, 0) - oracle::pauli_y()).norm() == 0.0);
    const auto ov = squared_overlaps(spin_observable(UnitVector3(0, 0, 1)),
                                     spin_observable(UnitVector3::in_xz_plane(degrees_to_radians(60))));
    CHECK(ov.maxCoeff() == Approx(0.75));
    CHECK_THROWS_AS(UnitVector3(1, 1, 0), InvalidArgument);
}

TEST_CASE("closed-form curves", "[spin]") {
    CHECK(lambda_s_theta(0.0) == 0.0);
    CHECK(lambda_s_theta(pi / 2) == Approx(0.693).margin(5e-4));
    CHECK(lambda_s_theta(degrees_to_radians(40)) == Approx(0.361).margin(5e-4));
    CHECK(deutsch_theta(pi / 2) == Approx(0.317).margin(5e-4));
    CHECK(mu_theta(pi / 2) == Approx(0.693).margin(5e-4));
    CHECK(deutsch_theta(0.0) == 0.0);
    CHECK(mu_theta(0.0) == 0.0);
    CHECK(deutsch_theta(degrees_to_radians(50)) == Approx(0.096).margin(5e-4));
    CHECK(mu_theta(degrees_to_radians(50)) == Approx(0.197).margin(5e-4));
    CHECK_THROWS_AS(lambda_s_theta(-0.1), InvalidArgument);
}

TEST_CASE("closed-form curves agree with the general bounds", "[spin]") {
    const auto z = spin_observable(UnitVector3(0, 0, 1));
    for (int deg = 1; deg < 180; deg += 7) {
        const double t = degrees_to_radians(deg);
        const auto n = spin_observable(UnitVector3::in_xz_plane(t));
        REQUIRE(lambda_s_theta(t) == Approx(lambda_s_two(z, n)).margin(1e-12));
        REQUIRE(deutsch_theta(t) == Approx(deutsch_bound(z, n)).margin(1e-12));
        REQUIRE(mu_theta(t) == Approx(maassen_uffink_bound(z, n)).margin(1e-12));
    }
}

TEST_CASE("regime boundary", "[spin]") {
    const double ts = theta_star();
    CHECK(std::abs(radians_to_degrees(ts) - 67.0) < 0.5);
    CHECK(std::abs(regime_boundary_residual(ts)) <= 1e-12);
    CHECK(regime_boundary_residual(pi / 2) < 0.0);
    CHECK(regime_boundary_residual(pi / 4) > 0.0);
    CHECK(regime_of(degrees_to_radians(30)) == Regime::low);
    CHECK(regime_of(degrees_to_radians(90)) == Regime::middle_numeric);
    CHECK(regime_of(degrees_to_radians(150)) == Regime::high);
}

TEST_CASE("optimal distinct bound per regime", "[spin]") {
    CHECK(sanchez_ruiz_theta(degrees_to_radians(30)).value == Approx(0.173).margin(5e-4));
    CHECK(sanchez_ruiz_theta(pi / 2).value == Approx(std::log(2.0)).margin(1e-4));
    CHECK(sanchez_ruiz_theta(degrees_to_radians(120)).value == Approx(0.4916).margin(1e-4));
    // continuity across both regime boundaries
    const double ts = theta_star();
    for (double edge : {ts, pi - ts}) {
        const double inside = sanchez_ruiz_theta(edge).value;
        const double nudged = sanchez_ruiz_theta(edge < pi / 2 ? edge + 1e-7 : edge - 1e-7).value;
        REQUIRE(inside == Approx(nudged).margin(1e-4));
    }
}

TEST_CASE("closed forms match a Bloch-sphere grid scan", "[spin]") {
    for (int deg : {20, 50, 130, 160}) {
        const double t = degrees_to_radians(deg);
        const auto grid = oracle::bloch_grid_minimum(
            [&](const oracle::CVec& v) {
                return oracle::entropy(oracle::spin_probabilities(v, 0.0)) +
                       oracle::entropy(oracle::spin_probabilities(v, t));
            },
            0.5);
        const double closed = deg < 90 ? sum_direction_value(t) : difference_direction_value(t);
        REQUIRE(closed <= grid.value + 1e-12);
        REQUIRE(closed == Approx(grid.value).margin(1e-4));
    }
}

TEST_CASE("table rows", "[spin]") {
    const auto rows = table1();
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].lambda_s == 0.0);
    CHECK(rows[0].lambda_d == Approx(0.0).margin(1e-12));
    CHECK(rows[0].lambda_d2 == 0.0);
    CHECK(rows[0].lambda_d1 == 0.0);
    CHECK(rows[2].lambda_s == Approx(0.135).margin(5e-4));
    CHECK(rows[2].lambda_d == Approx(0.089).margin(5e-4));
    CHECK(rows[2].lambda_d2 == Approx(0.031).margin(5e-4));
    CHECK(rows[2].lambda_d1 == Approx(0.015).margin(5e-4));
    CHECK(rows[7].lambda_s == Approx(0.633).margin(5e-4));
    CHECK(rows[7].lambda_d == Approx(0.604).margin(1e-3));
    CHECK(rows[7].lambda_d2 == Approx(0.399).margin(5e-4));
    CHECK(rows[7].lambda_d1 == Approx(0.190).margin(5e-4));
}

TEST_CASE("theta curve cache returns identical values", "[spin]") {
    ThetaCurve curve;
    const auto first = curve.at(degrees_to_radians(80));
    const auto second = curve.at(degrees_to_radians(80));
    CHECK(first.lambda_d == second.lambda_d);
    CHECK(first.chain_holds(1e-6));
}
