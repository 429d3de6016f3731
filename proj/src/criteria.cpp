#include "criteria.hpp"

#include <algorithm>
#include <cmath>

namespace pbdm {

namespace {

constexpr double kVerdictGuard = 1e-10;  // keeps boundary states from flapping
constexpr double kEigenClamp = 1e-12;    // rounding floor for u before sqrt

}  // namespace

std::pair<double, double> w_determinants(const DensityMatrix& rho) {
    const CMat pt = partial_transpose_b(rho.matrix());

    Mat3 top;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) top(i, j) = pt(i, j).real();

    std::array<double, 16> full{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) full[i * 4 + j] = pt(i, j).real();

    return {det3(top), det4(full)};
}

std::array<double, 4> ppt_spectrum(const DensityMatrix& rho) {
    const std::vector<double> eig = hermitian_eigenvalues(partial_transpose_b(rho.matrix()));
    return {eig[0], eig[1], eig[2], eig[3]};
}

Mat3 correlation_matrix(const DensityMatrix& rho) {
    Mat3 c;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const cplx t = trace(rho.matrix() * kron(pauli(i), pauli(j)));
            if (std::abs(t.imag()) > 1e-12)
                throw std::invalid_argument("correlation_matrix: Pauli trace has imaginary residue");
            c(i, j) = t.real();
        }
    return c;
}

HorodeckiQuantities horodecki_quantities(const DensityMatrix& rho) {
    const Mat3 c = correlation_matrix(rho);
    const Mat3 u_mat = mul3(transpose3(c), c);

    CMat u_complex(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) u_complex(i, j) = u_mat(i, j);
    std::vector<double> eig = hermitian_eigenvalues(u_complex);

    HorodeckiQuantities q;
    for (std::size_t k = 0; k < 3; ++k) {
        double v = eig[2 - k];  // descending
        if (v < 0.0 && v >= -kEigenClamp) v = 0.0;
        q.u[k] = std::max(v, 0.0);
    }
    q.big_m = q.u[0] + q.u[1];
    q.big_n = std::sqrt(q.u[0]) + std::sqrt(q.u[1]) + std::sqrt(q.u[2]);
    return q;
}

std::array<double, 3> closed_form_u(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("closed_form_u: alpha must lie in the open interval (0,1)");
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2, a6 = a4 * a2, a8 = a4 * a4;
    const double a10 = a8 * a2, a12 = a8 * a4;

    const double u1 = 4.0 * a4 - 8.0 * a6 + 4.0 * a8;
    const double big_a = 4.0 * a8 - 8.0 * a6 + 6.0 * a4 - 2.0 * a2 + 0.5;
    double big_b = 1.0 + 64.0 * a12 + 224.0 * a8 - 8.0 * a2 - 192.0 * a10 - 128.0 * a6 + 40.0 * a4;
    if (big_b < 0.0 && big_b >= -kEigenClamp) big_b = 0.0;
    const double root = std::sqrt(big_b) / 2.0;
    return {u1, big_a + root, big_a - root};
}

std::pair<double, double> closed_form_w(double alpha, double m1) {
    const DeletionParams p(alpha, m1);  // validates and derives complements
    const double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
    const double a4 = a2 * a2, a6 = a4 * a2;
    const double b4 = b2 * b2, b6 = b4 * b2;
    const double m1sq = p.m1 * p.m1, m2sq = p.m2 * p.m2;

    const double w3 = a6 * b4 * m1sq * (a2 + m1sq * b2);
    const double w4 = -a6 * b6 * (a4 * m2sq + m1sq * b4 + a2 * b2);
    return {w3, w4};
}

double fidelity_bound(const DensityMatrix& rho) {
    return 0.5 * (1.0 + horodecki_quantities(rho).big_n / 3.0);
}

CriteriaReport analyze(const DensityMatrix& rho) {
    CriteriaReport r;
    std::tie(r.w3, r.w4) = w_determinants(rho);
    r.ppt_spectrum = ppt_spectrum(rho);

    const HorodeckiQuantities q = horodecki_quantities(rho);
    r.u = q.u;
    r.big_m = q.big_m;
    r.big_n = q.big_n;
    r.f_max = 0.5 * (1.0 + q.big_n / 3.0);

    r.inseparable = r.ppt_spectrum.front() < -kVerdictGuard;
    r.bell_violated = r.big_m > 1.0 + kVerdictGuard;
    return r;
}

const std::array<double, kFidelityTableRows>& published_fidelity_table() {
    static const std::array<double, kFidelityTableRows> values = {
        0.666783, 0.668531, 0.675915, 0.694094, 0.725347,
        0.765805, 0.808094, 0.847683, 0.893974};
    return values;
}

std::array<FidelityTableRow, kFidelityTableRows> audit_published_fidelity_table() {
    const double m1 = 1.0 / std::sqrt(2.0);
    std::array<FidelityTableRow, kFidelityTableRows> rows;
    for (std::size_t i = 0; i < kFidelityTableRows; ++i) {
        const double alpha = 0.1 * static_cast<double>(i + 1);
        FidelityTableRow& row = rows[i];
        row.alpha = alpha;
        row.f_pipeline = fidelity_bound(deletion_output(DeletionParams(alpha, m1)));
        row.f_published = published_fidelity_table()[i];
        row.delta = row.f_pipeline - row.f_published;
        row.mismatch = std::abs(row.delta) > kFidelityMismatchTolerance;
    }
    return rows;
}

}  // namespace pbdm
