#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "seqent/hermitian.hpp"
#include "seqent/state.hpp"

using namespace seqent;
using Catch::Approx;

namespace {

const HermitianObservable& sz() { static const HermitianObservable o(oracle::pauli_z()); return o; }
const HermitianObservable& sx() { static const HermitianObservable o(oracle::pauli_x()); return o; }

DensityOperator ket(double re0, double re1) {
    ComplexVector v(2);
    v << re0, re1;
    return DensityOperator(PureState::normalized(v));
}

DensityOperator z_plus() { return ket(1, 0); }
DensityOperator x_plus() { return ket(1, 1); }

DensityOperator diag_state(double p) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1 - p;
    return DensityOperator(m);
}

// outcome index of eigenvalue +1 / −1 for the Pauli observables
constexpr std::size_t kPlus = 1, kMinus = 0;

}  // namespace

TEST_CASE("state constructors validate their input", "[state]") {
    CHECK_THROWS_AS(PureState(ComplexVector::Ones(2)), InvalidArgument);
    ComplexMatrix not_trace_one = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator(not_trace_one), InvalidArgument);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator(negative), InvalidArgument);
    CHECK(DensityOperator::maximally_mixed(3).matrix().trace().real() == Approx(1.0));
}

TEST_CASE("Luders map", "[state]") {
    CHECK((luders_map(x_plus(), sz()).matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((luders_map(z_plus(), sz()).matrix() - z_plus().matrix()).norm() < 1e-12);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto rho = random_mixed_state(2, s);
        REQUIRE((luders_map(rho, sz()).matrix() - oracle::dephase(rho.matrix())).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("two-step joint table for z+ then sigma_z, sigma_x", "[state]") {
    const auto j = wigner_joint_2(z_plus(), sz(), sx());
    CHECK(j(kPlus, kPlus) == Approx(0.5));
    CHECK(j(kPlus, kMinus) == Approx(0.5));
    CHECK(j(kMinus, kPlus) == Approx(0.0).margin(1e-15));
    CHECK(j(kMinus, kMinus) == Approx(0.0).margin(1e-15));
    const auto ma = j.marginal(0), mb = j.marginal(1);
    CHECK(ma[kPlus] == Approx(1.0));
    CHECK(mb[kPlus] == Approx(0.5));
    CHECK(mb[kMinus] == Approx(0.5));
}

TEST_CASE("repeated measurement gives a diagonal joint table", "[state]") {
    const auto j = wigner_joint_2(diag_state(0.3), sz(), sz());
    CHECK(j(kPlus, kPlus) == Approx(0.3));
    CHECK(j(kMinus, kMinus) == Approx(0.7));
    CHECK(j(kPlus, kMinus) == Approx(0.0).margin(1e-15));
    const auto j3 = wigner_joint_3(diag_state(0.3), sz(), sz(), sz());
    CHECK(j3(kPlus, kPlus, kPlus) == Approx(0.3));
    CHECK(j3(kMinus, kMinus, kMinus) == Approx(0.7));
}

TEST_CASE("three-step table for z+ through sigma_z, sigma_x, sigma_z", "[state]") {
    const auto j3 = wigner_joint_3(z_plus(), sz(), sx(), sz());
    for (std::size_t b : {kPlus, kMinus})
        for (std::size_t c : {kPlus, kMinus}) {
            CHECK(j3(kPlus, b, c) == Approx(0.25));
            CHECK(j3(kMinus, b, c) == Approx(0.0).margin(1e-15));
        }
    const auto three = sequential_marginals(j3);
    REQUIRE(three.size() == 3);
    for (const auto& m : three) {
        double total = 0;
        for (double w : m.weights()) total += w;
        CHECK(total == Approx(1.0));
    }
}

TEST_CASE("joint tables agree with direct nested-projector products", "[state]") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const long dim = 2 + static_cast<long>(s % 4);
        const auto rho = random_mixed_state(dim, s);
        const auto a = random_observable(dim, s + 1000), b = random_observable(dim, s + 2000),
                   c = random_observable(dim, s + 3000);
        const auto j2 = wigner_joint_2(rho, a, b);
        const auto j3 = wigner_joint_3(rho, a, b, c);
        for (std::size_t i = 0; i < a.outcome_count(); ++i) {
            double row = 0;
            for (std::size_t k = 0; k < b.outcome_count(); ++k) {
                const ComplexMatrix w = b.projector(k) * a.projector(i);
                const double direct = (w * rho.matrix() * w.adjoint()).trace().real();
                REQUIRE(j2(i, k) == Approx(direct).margin(1e-12));
                row += j2(i, k);
                double over_c = 0;
                for (std::size_t l = 0; l < c.outcome_count(); ++l) over_c += j3(i, k, l);
                REQUIRE(over_c == Approx(j2(i, k)).margin(1e-12));
            }
            REQUIRE(row == Approx((rho.matrix() * a.projector(i)).trace().real()).margin(1e-12));
        }
    }
}

TEST_CASE("product joint has the factor marginals", "[state]") {
    const JointDistribution j({{0.0, 1.0}, {0.0, 1.0, 2.0}}, {0.06, 0.12, 0.12, 0.14, 0.28, 0.28});
    CHECK(j.marginal(0)[0] == Approx(0.3));
    CHECK(j.marginal(1)[0] == Approx(0.2));
    CHECK(j.marginal(1)[2] == Approx(0.4));
}

TEST_CASE("probability hygiene", "[state]") {
    CHECK_NOTHROW(ProbabilityDistribution({1.0 + 1e-13, -1e-13}));
    CHECK(ProbabilityDistribution({1.0, -1e-13})[1] == 0.0);
    CHECK_THROWS_AS(ProbabilityDistribution({0.5, 0.4}), InvalidDistribution);
    CHECK_THROWS_AS(ProbabilityDistribution({1.1, -0.1}), InvalidDistribution);
}

TEST_CASE("interference gap", "[state]") {
    CHECK(interference_gap(x_plus(), sz(), sx()) == Approx(0.5));
    ComplexMatrix mix = ComplexMatrix::Zero(2, 2);
    mix(0, 0) = 0.8;
    mix(1, 1) = 0.2;
    CHECK(interference_gap(DensityOperator(mix), sz(), sx()) == Approx(0.0).margin(1e-15));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = random_observable(3, s);
        CHECK(interference_gap(random_mixed_state(3, s + 7), a, a) == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("sampler: repeated measurement is perfectly correlated", "[state]") {
    const ObservableChain chain{&sz(), &sz()};
    const auto counts = sample_sequence(random_mixed_state(2, 5), chain, 20000, 3);
    std::uint64_t off_diagonal = counts.counts[1] + counts.counts[2];
    CHECK(off_diagonal == 0);
}

TEST_CASE("sampler frequencies stay within Monte Carlo error", "[state]") {
    const ObservableChain chain{&sz(), &sx()};
    const auto counts = sample_sequence(z_plus(), chain, 1000000, 11);
    const auto f = counts.frequencies();
    // row-major: index (a, b) = a * 2 + b
    CHECK(std::abs(f[kPlus * 2 + kPlus] - 0.5) < 0.002);
    CHECK(f[kMinus * 2 + kPlus] == 0.0);
    const auto again = sample_sequence(z_plus(), chain, 1000000, 11);
    CHECK(again.counts == counts.counts);

    // 4σ on every cell of a random qutrit three-step chain
    const auto a = random_observable(3, 1), b = random_observable(3, 2), c = random_observable(3, 3);
    const auto rho = random_mixed_state(3, 4);
    const ObservableChain abc{&a, &b, &c};
    const std::uint64_t n = 200000;
    const auto mc = sample_sequence(rho, abc, n, 99);
    const auto exact = wigner_joint_3(rho, a, b, c);
    const auto freq = mc.frequencies();
    for (std::size_t k = 0; k < freq.size(); ++k) {
        const double p = exact.table()[k];
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
        REQUIRE(std::abs(freq[k] - p) <= 4 * sigma + 1e-12);
    }
}

TEST_CASE("random generators are valid and deterministic", "[state]") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const long dim = 2 + static_cast<long>(s % 6);
        const auto rho = random_mixed_state(dim, s);
        REQUIRE(rho.matrix().trace().real() == Approx(1.0));
        REQUIRE(oracle::hermitian_eigenvalues(rho.matrix()).front() > -1e-12);
        REQUIRE(is_hermitian(random_observable(dim, s).matrix()));
        REQUIRE(random_observable(dim, s).matrix() == random_observable(dim, s).matrix());
        REQUIRE(random_mixed_state(dim, s).matrix() == rho.matrix());
        const ComplexMatrix u = random_unitary(dim, s);
        REQUIRE((u.adjoint() * u - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
}
