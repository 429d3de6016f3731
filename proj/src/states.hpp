#pragma once

#include <vector>

#include "linalg.hpp"

// Constructors and validators for the states under study: the
// Pati-Braunstein deletion-machine output (pure, with its 3-dimensional
// ancilla, and reduced to the two qubits), Bell states, Werner states and
// single-qubit Bloch states.
//
// Basis conventions, fixed once here and assumed everywhere:
//   * two-qubit basis order |00>, |01>, |10>, |11>, first factor = qubit a;
//   * the machine ancilla is 3-dimensional with orthonormal basis
//     (A, A0, A1) in that order, so the pure machine output lives in
//     dimension 2 x 2 x 3 = 12 with index (qa*2 + qb)*3 + ancilla.

namespace pbdm {

/// Real input amplitudes of the deletion machine. The constructor takes
/// alpha and m1 in [0,1] and derives beta, m2 so the pair is always
/// normalized: the machine input is alpha|0> + beta|1> (twice) and the
/// blank state it writes is m1|0> + m2|1>.
struct DeletionParams {
    double alpha;
    double beta;
    double m1;
    double m2;

    DeletionParams(double alpha_in, double m1_in);
};

/// Unit-norm complex vector of dimension 2, 4 or 12.
class PureState {
public:
    explicit PureState(std::vector<cplx> amplitudes);

    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const& { return amps_; }
    // keeps amplitudes of a temporary alive when bound to a reference
    std::vector<cplx> amplitudes() && { return std::move(amps_); }

private:
    std::vector<cplx> amps_;
};

/// Two-qubit density matrix: 4x4, Hermitian within 1e-12, unit trace
/// within 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(CMat m);

    const CMat& matrix() const { return m_; }

private:
    CMat m_;
};

/// Full pure output of the machine on identical inputs, with the ancilla:
/// alpha^2 |0>|Sigma>|A0> + beta^2 |1>|Sigma>|A1> + alpha beta (|01>+|10>)|A>.
PureState deletion_pure_output(const DeletionParams& p);

/// Reduced two-qubit state after the deletion operation, built term by term:
/// alpha^4 |0><0| x P_Sigma + beta^4 |1><1| x P_Sigma + 2 alpha^2 beta^2 |psi+><psi+|.
/// Equals the ancilla partial trace of deletion_pure_output.
DensityMatrix deletion_output(const DeletionParams& p);

/// Werner state p |psi-><psi-| + (1-p)/4 I, p in [0,1].
DensityMatrix werner(double p);

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

PureState bell_state(BellKind kind);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
PureState pure_from_bloch(double theta, double phi);

// Pauli matrices, index 0..2 = x, y, z.
const CMat& pauli_x();
const CMat& pauli_y();
const CMat& pauli_z();
const CMat& pauli(std::size_t i);

}  // namespace pbdm
