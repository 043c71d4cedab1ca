#include <entx/channels.hpp>

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace entx;

namespace {

SeparableChannel identity_channel(std::size_t dA, std::size_t dB) {
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks;
    ks.emplace_back(ComplexMatrix::identity(dA), ComplexMatrix::identity(dB));
    return SeparableChannel(dA, dB, dA, dB, std::move(ks));
}

// local Kraus set carved from a Haar unitary on dim*branches rows
std::vector<ComplexMatrix> random_local_kraus(std::size_t dim, std::size_t branches,
                                              std::uint64_t seed) {
    const auto u = random_unitary(dim * branches, seed);
    std::vector<ComplexMatrix> ks;
    for (std::size_t n = 0; n < branches; ++n) {
        ComplexMatrix k(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                k(i, j) = u(n * dim + i, j);
            }
        }
        ks.push_back(std::move(k));
    }
    return ks;
}

// product of two random local channels; separable and trace preserving
SeparableChannel random_separable_channel(std::size_t dA, std::size_t dB, std::uint64_t seed) {
    const auto ka = random_local_kraus(dA, 2, seed);
    const auto kb = random_local_kraus(dB, 2, seed + 1);
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks;
    for (const auto& a : ka) {
        for (const auto& b : kb) {
            ks.emplace_back(a, b);
        }
    }
    return SeparableChannel(dA, dB, dA, dB, std::move(ks));
}

PureState random_pure(std::size_t dA, std::size_t dB, std::mt19937_64& rng) {
    return PureState(dA, dB, testutil::random_state_vector(dA * dB, rng));
}

}  // namespace

TEST_CASE("identity channel is trace preserving with zero defect") {
    const auto ch = identity_channel(2, 2);
    const auto tp = validate_trace_preserving(ch);
    CHECK(tp.ok);
    CHECK(tp.defect == 0.0);
}

TEST_CASE("defective channels need the unchecked flag") {
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks;
    ComplexMatrix half = ComplexMatrix::identity(2);
    for (auto& z : half.data) {
        z *= 0.5;
    }
    ks.emplace_back(half, ComplexMatrix::identity(2));
    CHECK_THROWS_AS(SeparableChannel(2, 2, 2, 2, ks), input_error);
    const SeparableChannel ch(2, 2, 2, 2, ks, /*allow_unchecked=*/true);
    CHECK_FALSE(ch.tp.ok);
    CHECK(ch.tp.defect > 0.1);
}

TEST_CASE("Kraus shape mismatches are rejected") {
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks;
    ks.emplace_back(ComplexMatrix::identity(3), ComplexMatrix::identity(2));
    CHECK_THROWS_AS(SeparableChannel(2, 2, 2, 2, std::move(ks)), shape_error);
}

TEST_CASE("identity channel leaves states unchanged") {
    std::mt19937_64 rng(51);
    const auto psi = random_pure(2, 3, rng);
    const DensityMatrix rho(2, 3, psi.projector());
    const auto out = apply_channel(identity_channel(2, 3), rho);
    CHECK(frobenius_norm(out.matrix - rho.matrix) < 1e-14);

    const auto branches = branch_vectors(identity_channel(2, 3), psi);
    REQUIRE(branches.size() == 1);
    CHECK(vec_norm(branches[0]) == Catch::Approx(1.0));
}

TEST_CASE("random separable channels preserve trace and act linearly") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ch = random_separable_channel(2, 3, 500 + trial);
        REQUIRE(ch.tp.ok);

        const auto psi1 = random_pure(2, 3, rng);
        const auto psi2 = random_pure(2, 3, rng);
        const DensityMatrix r1(2, 3, psi1.projector());
        const DensityMatrix r2(2, 3, psi2.projector());
        ComplexMatrix mixed_m = cplx(0.25) * r1.matrix + cplx(0.75) * r2.matrix;
        const DensityMatrix mixed(2, 3, std::move(mixed_m));

        const auto out = apply_channel(ch, mixed);
        cplx tr{};
        for (std::size_t i = 0; i < out.matrix.rows; ++i) {
            tr += out.matrix(i, i);
        }
        CHECK(std::abs(tr - cplx(1.0)) < 1e-10);

        const auto o1 = apply_channel(ch, r1);
        const auto o2 = apply_channel(ch, r2);
        const ComplexMatrix lin = cplx(0.25) * o1.matrix + cplx(0.75) * o2.matrix;
        CHECK(frobenius_norm(out.matrix - lin) < 1e-10);

        // branch norms sum to one on pure inputs
        double total = 0;
        for (const auto& v : branch_vectors(ch, psi1)) {
            const double n = vec_norm(v);
            total += n * n;
        }
        CHECK(total == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("proportionality against the identity channel") {
    std::mt19937_64 rng(53);
    const auto psi = random_pure(2, 2, rng);
    const auto ch = identity_channel(2, 2);

    const auto same = proportionality_matrix(ch, {psi}, psi);
    CHECK(same.max_residual < 1e-12);
    CHECK(std::abs(same.c(0, 0) - cplx(1.0)) < 1e-12);

    const auto other = random_pure(2, 2, rng);
    const auto off = proportionality_matrix(ch, {other}, psi);
    // residual is the part of `other` outside the span of psi
    const double overlap = std::abs(inner(psi.amplitudes, other.amplitudes));
    CHECK(off.max_residual == Catch::Approx(std::sqrt(1.0 - overlap * overlap)).margin(1e-10));
}

TEST_CASE("coefficient_orthonormality") {
    CoefficientMatrix id;
    id.rows = 2;
    id.cols = 2;
    id.data = {1.0, 0.0, 0.0, 1.0};
    CHECK(coefficient_orthonormality(id));

    CoefficientMatrix repeated;
    repeated.rows = 2;
    repeated.cols = 2;
    repeated.data = {1.0, 0.0, 1.0, 0.0};
    CHECK_FALSE(coefficient_orthonormality(repeated));
}

TEST_CASE("lemma1 dimension predicate") {
    CHECK(lemma1_dimension_check(8, 4, 4));
    CHECK(lemma1_dimension_check(4, 8, 4));  // ordering is internal
    CHECK_FALSE(lemma1_dimension_check(7, 7, 4));
    CHECK(lemma1_dimension_check(2, 2, 1));
    CHECK_FALSE(lemma1_dimension_check(8, 3, 4));
    CHECK_THROWS_AS(lemma1_dimension_check(0, 2, 1), input_error);
}
