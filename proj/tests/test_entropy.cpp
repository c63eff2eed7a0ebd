#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "seqent/entropy.hpp"
#include "seqent/spin_half.hpp"

using namespace seqent;
using Catch::Approx;

namespace {

const HermitianObservable& sz() { static const HermitianObservable o(oracle::pauli_z()); return o; }
const HermitianObservable& sx() { static const HermitianObservable o(oracle::pauli_x()); return o; }
const HermitianObservable& sy() { static const HermitianObservable o(oracle::pauli_y()); return o; }

DensityOperator ket(Complex a0, Complex a1) {
    ComplexVector v(2);
    v << a0, a1;
    return DensityOperator(PureState::normalized(v));
}

DensityOperator diag_state(double p) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1 - p;
    return DensityOperator(m);
}

}  // namespace

TEST_CASE("Shannon entropy", "[entropy]") {
    CHECK(shannon_entropy(ProbabilityDistribution({0.25, 0.25, 0.25, 0.25})) == Approx(std::log(4.0)));
    CHECK(shannon_entropy(ProbabilityDistribution({1.0, 0.0, 0.0})) == 0.0);
    const double c = std::cos(spin::degrees_to_radians(15.0));
    CHECK(shannon_entropy(ProbabilityDistribution({c * c, 1 - c * c})) == Approx(0.246).margin(5e-4));
    CHECK(shannon_entropy(ProbabilityDistribution({0.5, 0.5}), 2.0) == Approx(1.0));
    CHECK_THROWS_AS(shannon_entropy(ProbabilityDistribution({0.5, 0.5}), 1.0), InvalidArgument);
}

TEST_CASE("distinct-measurement entropy", "[entropy]") {
    CHECK(entropy_distinct(ket(1, 0), sz()) == Approx(0.0).margin(1e-15));
    CHECK(entropy_distinct(DensityOperator::maximally_mixed(2), sz()) == Approx(std::log(2.0)));
    const HermitianObservable n30(oracle::spin(spin::degrees_to_radians(30.0)));
    CHECK(entropy_distinct(ket(1, 0), n30) == Approx(0.246).margin(5e-4));
}

TEST_CASE("sequential entropies of two steps", "[entropy]") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        REQUIRE(entropies_sequential(random_mixed_state(2, s), sz(), sx()).s_b == Approx(std::log(2.0)));
    }
    const auto e = entropies_sequential(ket(1, 0), sz(), sx());
    CHECK(e.s_a == Approx(0.0).margin(1e-15));
    CHECK(e.s_b == Approx(std::log(2.0)));
    CHECK(e.s_joint == Approx(std::log(2.0)));
    const auto same = entropies_sequential(random_mixed_state(3, 1), random_observable(3, 2), random_observable(3, 2));
    CHECK(same.s_joint == Approx(same.s_a));
}

TEST_CASE("sequential entropies of three steps", "[entropy]") {
    const double h = oracle::binary_entropy(0.3);
    const auto e = entropies_sequential_3(diag_state(0.3), sz(), sz(), sz());
    CHECK(e.s_a == Approx(h));
    CHECK(e.s_b == Approx(h));
    CHECK(*e.s_c == Approx(h));
    CHECK(e.s_joint == Approx(h));
    CHECK(*entropies_sequential_3(ket(1, 0), sz(), sx(), sz()).s_c == Approx(std::log(2.0)));
    for (std::uint64_t s = 0; s < 100; ++s) {
        const long dim = 2 + static_cast<long>(s % 4);
        const auto r = entropies_sequential_3(random_mixed_state(dim, s), random_observable(dim, s + 1),
                                              random_observable(dim, s + 2), random_observable(dim, s + 3));
        REQUIRE(*r.s_ab + *r.s_bc >= r.s_joint + r.s_b - 1e-9);
        REQUIRE(r.s_a + r.s_b + *r.s_c >= r.s_joint - 1e-9);
    }
}

TEST_CASE("log base rescales every entropy", "[entropy]") {
    const auto rho = random_mixed_state(3, 8);
    const auto a = random_observable(3, 9), b = random_observable(3, 10);
    const auto e = entropies_sequential(rho, a, b);
    const auto bits = entropies_sequential(rho, a, b, 2.0);
    CHECK(bits.s_joint == Approx(e.s_joint / std::log(2.0)));
    CHECK(bits.s_b == Approx(e.s_b / std::log(2.0)));
}

TEST_CASE("variance relations", "[entropy]") {
    const auto eig = variance_relations(ket(1, 0), sz(), random_observable(2, 4));
    CHECK(eig.var_a == Approx(0.0).margin(1e-15));
    CHECK(eig.robertson_rhs == Approx(0.0).margin(1e-15));

    const auto zx = variance_relations(random_mixed_state(2, 3), sz(), sx());
    CHECK(zx.c_of_b.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(zx.successive_rhs == Approx(0.0).margin(1e-15));

    const auto xy = variance_relations(ket(1, 1), sz(), sy());
    CHECK(xy.var_a * xy.var_b == Approx(1.0));
    CHECK(xy.robertson_rhs == Approx(1.0));

    for (std::uint64_t s = 0; s < 200; ++s) {
        const long dim = 2 + static_cast<long>(s % 4);
        const auto a = random_observable(dim, s + 50);
        const auto v = variance_relations(random_mixed_state(dim, s), a, random_observable(dim, s + 60));
        REQUIRE(v.var_a * v.var_b >= v.robertson_rhs - 1e-9);
        REQUIRE(v.successive_var_a * v.successive_var_b >= v.successive_rhs - 1e-9);
        REQUIRE(commutator(a.matrix(), v.c_of_b).cwiseAbs().maxCoeff() < 1e-10);
    }
}
