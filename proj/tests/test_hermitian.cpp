#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "seqent/hermitian.hpp"
#include "seqent/spin_half.hpp"
#include "seqent/state.hpp"

using namespace seqent;
using Catch::Approx;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<long>(values.size()), static_cast<long>(values.size()));
    long i = 0;
    for (double v : values) m(i, i) = v, ++i;
    return m;
}

}  // namespace

TEST_CASE("eigh of diag(1, -1) sorts eigenvalues and swaps basis vectors", "[hermitian]") {
    const auto es = eigh(diag({1.0, -1.0}));
    CHECK(es.values(0) == Approx(-1.0));
    CHECK(es.values(1) == Approx(1.0));
    CHECK(std::abs(es.vectors(1, 0)) == Approx(1.0));
    CHECK(std::abs(es.vectors(0, 1)) == Approx(1.0));
}

TEST_CASE("eigh of the identity returns an orthonormal pair", "[hermitian]") {
    const auto es = eigh(ComplexMatrix::Identity(2, 2));
    CHECK(es.values(0) == Approx(1.0));
    CHECK(es.values(1) == Approx(1.0));
    CHECK((es.vectors.adjoint() * es.vectors - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("spin component at 60 degrees overlaps sigma_z eigenvectors by cos^2 30", "[hermitian]") {
    const HermitianObservable z(oracle::pauli_z());
    const HermitianObservable n(oracle::spin(spin::degrees_to_radians(60.0)));
    const auto ov = squared_overlaps(z, n);
    CHECK(ov.maxCoeff() == Approx(0.75).margin(1e-12));
    CHECK(ov.minCoeff() == Approx(0.25).margin(1e-12));
}

TEST_CASE("eigh matches the Jacobi oracle on 500 random Hermitian matrices", "[hermitian]") {
    for (std::uint64_t s = 0; s < 500; ++s) {
        const long dim = 2 + static_cast<long>(s % 7);
        const ComplexMatrix h = random_observable(dim, 1000 + s).matrix();
        const auto es = eigh(h);
        const auto ref = oracle::hermitian_eigenvalues(h);
        for (long i = 0; i < dim; ++i) REQUIRE(es.values(i) == Approx(ref[static_cast<std::size_t>(i)]).margin(1e-9));
        // H V = V Λ and V unitary
        REQUIRE((h * es.vectors - es.vectors * es.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
        REQUIRE((es.vectors.adjoint() * es.vectors - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("eigh rejects non-Hermitian and malformed input", "[hermitian]") {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, -1;
    CHECK_THROWS_AS(eigh(m), NotHermitian);
    CHECK_THROWS_AS(eigh(ComplexMatrix(2, 3)), InvalidArgument);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(eigh(bad), InvalidArgument);
}

TEST_CASE("spectral resolution groups an exact degeneracy", "[hermitian]") {
    const auto sd = spectral_resolution(diag({1.0, 1.0, 2.0}), 1e-8);
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.eigenvalues[0] == Approx(1.0));
    CHECK(sd.eigenvalues[1] == Approx(2.0));
    CHECK(sd.multiplicities == std::vector<int>{2, 1});
}

TEST_CASE("spectral resolution of sigma_z gives rank-one diagonal projectors", "[hermitian]") {
    const auto sd = spectral_resolution(oracle::pauli_z(), std::nullopt);
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.eigenvalues[0] == Approx(-1.0));
    CHECK((sd.projectors[0] - diag({0.0, 1.0})).norm() < 1e-12);
    CHECK((sd.projectors[1] - diag({1.0, 0.0})).norm() < 1e-12);
}

TEST_CASE("near-degenerate eigenvalues within cluster_tol merge", "[hermitian]") {
    const auto sd = spectral_resolution(diag({1.0, 1.0 + 1e-12, 2.0}), 1e-8);
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.multiplicities == std::vector<int>{2, 1});
    const auto split = spectral_resolution(diag({1.0, 1.0 + 1e-6, 2.0}), 1e-8);
    CHECK(split.eigenvalues.size() == 3);
}

TEST_CASE("spectral projectors are orthogonal, complete and reconstruct H", "[hermitian]") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const long dim = 2 + static_cast<long>(s % 5);
        std::vector<double> spectrum;
        for (long i = 0; i < dim; ++i) spectrum.push_back(static_cast<double>(i / 2));
        const auto obs = random_observable_with_spectrum(spectrum, s);
        const auto& sd = obs.spectrum();
        ComplexMatrix sum = ComplexMatrix::Zero(dim, dim), recon = sum;
        for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
            for (std::size_t j = 0; j < sd.projectors.size(); ++j) {
                const ComplexMatrix pp = sd.projectors[i] * sd.projectors[j];
                const ComplexMatrix want = i == j ? sd.projectors[i] : ComplexMatrix::Zero(dim, dim);
                REQUIRE((pp - want).cwiseAbs().maxCoeff() < 1e-10);
            }
            REQUIRE(sd.projectors[i].trace().real() == Approx(static_cast<double>(sd.multiplicities[i])));
            sum += sd.projectors[i];
            recon += sd.eigenvalues[i] * sd.projectors[i];
        }
        REQUIRE((sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
        REQUIRE((recon - obs.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("operator norm", "[hermitian]") {
    CHECK(operator_norm(ComplexMatrix::Identity(5, 5)) == Approx(1.0));
    CHECK(operator_norm(diag({3.0, -4.0})) == Approx(4.0));
    const ComplexMatrix pz = 0.5 * (ComplexMatrix::Identity(2, 2) + oracle::pauli_z());
    const ComplexMatrix px = 0.5 * (ComplexMatrix::Identity(2, 2) + oracle::pauli_x());
    CHECK(operator_norm(pz + px) == Approx(1.0 + 1.0 / std::sqrt(2.0)).margin(1e-12));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const ComplexMatrix m = random_unitary(4, s) * diag({0.1, 2.5, -0.7, 1.0}) * random_unitary(4, s + 99);
        REQUIRE(operator_norm(m) == Approx(oracle::operator_norm(m)).margin(1e-9));
    }
}

TEST_CASE("observable construction validates dimension and hermiticity", "[hermitian]") {
    CHECK_THROWS_AS(HermitianObservable(ComplexMatrix::Identity(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(HermitianObservable(ComplexMatrix::Identity(17, 17)), InvalidArgument);
    ComplexMatrix m = oracle::pauli_y();
    m(0, 1) += 1e-6;
    CHECK_THROWS_AS(HermitianObservable(m), NotHermitian);
    const HermitianObservable id(ComplexMatrix::Identity(3, 3));
    CHECK(id.outcome_count() == 1);
    CHECK_FALSE(id.nondegenerate());
    CHECK_THROWS_AS(id.eigenvector(0), DegenerateSpectrum);
}
