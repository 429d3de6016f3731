#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "linalg.hpp"
#include "states.hpp"
#include "test_helpers.hpp"

using namespace pbdm;
using namespace pbdm::testing;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("deletion parameter validation and derivation") {
    CHECK_THROWS_AS(DeletionParams(1.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DeletionParams(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DeletionParams(0.5, 1.0001), std::invalid_argument);

    const DeletionParams p(0.6, 0.3);
    CHECK(p.beta == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p.m1 * p.m1 + p.m2 * p.m2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pure machine output at the boundaries") {
    // alpha = 1: |0>|Sigma>|A0>
    const PureState one = deletion_pure_output(DeletionParams(1.0, kInvSqrt2));
    const std::vector<cplx>& a = one.amplitudes();
    CHECK(std::abs(a[(0 * 2 + 0) * 3 + 1] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(a[(0 * 2 + 1) * 3 + 1] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    double rest = 0.0;
    for (std::size_t i = 0; i < 12; ++i)
        if (i != 1 && i != 4) rest += std::abs(a[i]);
    CHECK(rest == 0.0);

    // alpha = 0: |1>|Sigma>|A1>
    const PureState zero = deletion_pure_output(DeletionParams(0.0, kInvSqrt2));
    const std::vector<cplx>& b = zero.amplitudes();
    CHECK(std::abs(b[(1 * 2 + 0) * 3 + 2] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(b[(1 * 2 + 1) * 3 + 2] - cplx{kInvSqrt2, 0.0}) < 1e-15);
}

TEST_CASE("pure machine output ancilla populations at the symmetric point") {
    const PureState psi = deletion_pure_output(DeletionParams(kInvSqrt2, kInvSqrt2));
    const CMat rho12 = outer(psi.amplitudes(), psi.amplitudes());
    const CMat anc = partial_trace(rho12, {2, 2, 3}, {2});
    // squared weights 2 a^2 b^2, a^4, b^4 on (A, A0, A1)
    CHECK(anc(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(anc(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(anc(2, 2).real() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("reduced output: frozen entries at alpha=0.5, m1=1/sqrt2") {
    const CMat r = deletion_output(DeletionParams(0.5, kInvSqrt2)).matrix();
    CHECK(r(0, 0).real() == doctest::Approx(0.03125).epsilon(1e-13));
    CHECK(r(0, 1).real() == doctest::Approx(0.03125).epsilon(1e-13));
    CHECK(r(1, 1).real() == doctest::Approx(0.21875).epsilon(1e-13));
    CHECK(r(1, 2).real() == doctest::Approx(0.1875).epsilon(1e-13));
    CHECK(r(2, 2).real() == doctest::Approx(0.46875).epsilon(1e-13));
    CHECK(r(2, 3).real() == doctest::Approx(0.28125).epsilon(1e-13));
    CHECK(r(3, 3).real() == doctest::Approx(0.28125).epsilon(1e-13));
    // Hermitian completion and structural zeros
    CHECK(hermiticity_defect(r) < 1e-15);
    CHECK(std::abs(r(0, 2)) == 0.0);
    CHECK(std::abs(r(0, 3)) == 0.0);
    CHECK(std::abs(r(1, 3)) == 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(r(i, j).imag()) == 0.0);
}

TEST_CASE("reduced output at alpha=1 is the product state") {
    const CMat r = deletion_output(DeletionParams(1.0, kInvSqrt2)).matrix();
    CMat e0(2, 2);
    e0(0, 0) = 1.0;
    const CMat expected = kron(e0, outer({kInvSqrt2, kInvSqrt2}, {kInvSqrt2, kInvSqrt2}));
    CHECK(max_entry_diff(r, expected) < 1e-15);
    CHECK(std::abs(trace(r) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("pure output reduces to the two-qubit output across the grid") {
    const double m1s[] = {0.0, 0.3, kInvSqrt2, 0.9, 1.0};
    for (double m1 : m1s) {
        for (int i = 1; i <= 9; ++i) {
            const DeletionParams p(0.1 * i, m1);
            const PureState psi = deletion_pure_output(p);
            const CMat reduced =
                partial_trace(outer(psi.amplitudes(), psi.amplitudes()), {2, 2, 3}, {0, 1});
            CHECK(max_entry_diff(reduced, deletion_output(p).matrix()) <= 1e-12);
        }
    }
}

TEST_CASE("bit-flip symmetry alpha <-> beta at m1 = 1/sqrt2") {
    const CMat xx = kron(pauli_x(), pauli_x());
    for (int i = 1; i <= 99; ++i) {
        const double alpha = 0.01 * i;
        const double beta = std::sqrt(1.0 - alpha * alpha);
        const CMat lhs = xx * deletion_output(DeletionParams(alpha, kInvSqrt2)).matrix() * xx;
        const CMat rhs = deletion_output(DeletionParams(beta, kInvSqrt2)).matrix();
        CHECK(max_entry_diff(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("grid invariants: trace and positivity") {
    for (int i = 1; i <= 99; i += 7) {
        for (int j = 0; j <= 10; ++j) {
            const DeletionParams p(0.01 * i, 0.1 * j);
            const DensityMatrix rho = deletion_output(p);  // ctor enforces PSD floor
            CHECK(std::abs(trace(rho.matrix()) - cplx{1.0, 0.0}) <= 1e-12);
            CHECK(hermitian_eigenvalues(rho.matrix()).front() >= -1e-10);
        }
    }
}

TEST_CASE("werner family") {
    CHECK(max_entry_diff(werner(0.0).matrix(), 0.25 * CMat::identity(4)) < 1e-15);

    const std::vector<cplx> psi_minus = bell_state(BellKind::PsiMinus).amplitudes();
    CHECK(max_entry_diff(werner(1.0).matrix(), outer(psi_minus, psi_minus)) < 1e-15);

    const std::vector<double> eig = hermitian_eigenvalues(werner(0.5).matrix());
    CHECK(eig[0] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eig[2] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(eig[3] == doctest::Approx(0.625).epsilon(1e-12));

    CHECK_THROWS_AS(werner(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(werner(1.01), std::invalid_argument);
}

TEST_CASE("bell states") {
    const std::vector<cplx> pp = bell_state(BellKind::PsiPlus).amplitudes();
    CHECK(pp[0] == cplx{});
    CHECK(std::abs(pp[1] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(pp[2] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(pp[3] == cplx{});

    const std::vector<cplx> pm = bell_state(BellKind::PsiMinus).amplitudes();
    CHECK(std::abs(pm[1] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(pm[2] + cplx{kInvSqrt2, 0.0}) < 1e-15);

    // both marginals of every Bell state are maximally mixed
    for (BellKind k : {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus}) {
        const std::vector<cplx> amps = bell_state(k).amplitudes();
        const CMat proj = outer(amps, amps);
        CHECK(max_entry_diff(partial_trace(proj, {2, 2}, {0}), 0.5 * CMat::identity(2)) < 1e-15);
        CHECK(max_entry_diff(partial_trace(proj, {2, 2}, {1}), 0.5 * CMat::identity(2)) < 1e-15);
    }
}

TEST_CASE("bloch state constructor") {
    const PureState zero = pure_from_bloch(0.0, 1.23);
    CHECK(std::abs(zero.amplitudes()[0] - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(zero.amplitudes()[1]) < 1e-15);

    const PureState one = pure_from_bloch(3.14159265358979323846, 0.0);
    CHECK(std::abs(one.amplitudes()[0]) < 1e-15);
    CHECK(std::abs(std::abs(one.amplitudes()[1]) - 1.0) < 1e-15);

    const PureState plus = pure_from_bloch(3.14159265358979323846 / 2.0, 0.0);
    CHECK(std::abs(plus.amplitudes()[0] - cplx{kInvSqrt2, 0.0}) < 1e-12);
    CHECK(std::abs(plus.amplitudes()[1] - cplx{kInvSqrt2, 0.0}) < 1e-12);
    // Bloch vector (1,0,0): <psi|sx|psi> = 1
    const CMat proj = outer(plus.amplitudes(), plus.amplitudes());
    CHECK(trace(proj * pauli_x()).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(PureState({1.0, 1.0}), std::invalid_argument);        // not normalized
    CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}), std::invalid_argument);   // dim 3 not allowed

    CMat not_herm(4, 4);
    not_herm(0, 0) = 1.0;
    not_herm(0, 1) = 0.5;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, std::invalid_argument);

    CMat wrong_trace = 0.5 * CMat::identity(4);
    CHECK_THROWS_AS(DensityMatrix{wrong_trace}, std::invalid_argument);

    CMat indefinite(4, 4);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{indefinite}, std::invalid_argument);
}
