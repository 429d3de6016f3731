#include "states.hpp"

#include <cmath>

namespace pbdm {

DeletionParams::DeletionParams(double alpha_in, double m1_in) {
    if (!(alpha_in >= 0.0 && alpha_in <= 1.0))
        throw std::invalid_argument("DeletionParams: alpha must lie in [0,1]");
    if (!(m1_in >= 0.0 && m1_in <= 1.0))
        throw std::invalid_argument("DeletionParams: m1 must lie in [0,1]");
    alpha = alpha_in;
    beta = std::sqrt(1.0 - alpha_in * alpha_in);
    m1 = m1_in;
    m2 = std::sqrt(1.0 - m1_in * m1_in);
}

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    const std::size_t d = amps_.size();
    if (d != 2 && d != 4 && d != 12)
        throw std::invalid_argument("PureState: dimension must be 2, 4 or 12");
    double norm2 = 0.0;
    for (cplx z : amps_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("PureState: non-finite amplitude");
        norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: squared norm deviates from 1 by more than 1e-12");
}

DensityMatrix::DensityMatrix(CMat m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4)
        throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix");
    if (hermiticity_defect(m_) > 1e-12)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(trace(m_) - cplx{1.0, 0.0}) > 1e-12)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by more than 1e-12");
    const std::vector<double> eig = hermitian_eigenvalues(m_);
    if (eig.front() < -1e-10)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond the -1e-10 floor");
}

PureState deletion_pure_output(const DeletionParams& p) {
    // index (qa*2 + qb)*3 + ancilla, ancilla 0,1,2 = A, A0, A1
    std::vector<cplx> amps(12, cplx{});
    const double a = p.alpha, b = p.beta;
    amps[(0 * 2 + 0) * 3 + 1] = a * a * p.m1;
    amps[(0 * 2 + 1) * 3 + 1] = a * a * p.m2;
    amps[(1 * 2 + 0) * 3 + 2] = b * b * p.m1;
    amps[(1 * 2 + 1) * 3 + 2] = b * b * p.m2;
    amps[(0 * 2 + 1) * 3 + 0] = a * b;
    amps[(1 * 2 + 0) * 3 + 0] = a * b;
    return PureState(std::move(amps));
}

DensityMatrix deletion_output(const DeletionParams& p) {
    const double a2 = p.alpha * p.alpha;
    const double b2 = p.beta * p.beta;

    CMat e0(2, 2), e1(2, 2);
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    const CMat blank = outer({p.m1, p.m2}, {p.m1, p.m2});
    const std::vector<cplx> psi_plus = bell_state(BellKind::PsiPlus).amplitudes();

    const CMat rho = (a2 * a2) * kron(e0, blank) + (b2 * b2) * kron(e1, blank) +
                     (2.0 * a2 * b2) * outer(psi_plus, psi_plus);
    return DensityMatrix(rho);
}

DensityMatrix werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner: p must lie in [0,1]");
    const std::vector<cplx> psi_minus = bell_state(BellKind::PsiMinus).amplitudes();
    const CMat rho = p * outer(psi_minus, psi_minus) + ((1.0 - p) / 4.0) * CMat::identity(4);
    return DensityMatrix(rho);
}

PureState bell_state(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amps(4, cplx{});
    switch (kind) {
        case BellKind::PsiPlus: amps[1] = r; amps[2] = r; break;
        case BellKind::PsiMinus: amps[1] = r; amps[2] = -r; break;
        case BellKind::PhiPlus: amps[0] = r; amps[3] = r; break;
        case BellKind::PhiMinus: amps[0] = r; amps[3] = -r; break;
    }
    return PureState(std::move(amps));
}

PureState pure_from_bloch(double theta, double phi) {
    const cplx phase = std::polar(1.0, phi);
    return PureState({std::cos(theta / 2.0), phase * std::sin(theta / 2.0)});
}

const CMat& pauli_x() {
    static const CMat m(2, 2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const CMat& pauli_y() {
    static const CMat m(2, 2, {cplx{0.0, 0.0}, cplx{0.0, -1.0}, cplx{0.0, 1.0}, cplx{0.0, 0.0}});
    return m;
}

const CMat& pauli_z() {
    static const CMat m(2, 2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

const CMat& pauli(std::size_t i) {
    switch (i) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

}  // namespace pbdm
