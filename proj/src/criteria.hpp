#pragma once

#include <array>
#include <utility>

#include "linalg.hpp"
#include "states.hpp"

// Inseparability and nonlocality diagnostics for two-qubit states:
// determinant witnesses W3/W4, the Peres-Horodecki partial-transpose
// spectrum, the Pauli correlation matrix, the Horodecki Bell-CHSH
// quantity M(rho), N(rho) and the optimal teleportation fidelity bound
// F_max = (1 + N/3)/2. Closed forms for the deletion-machine family are
// provided as independent cross-checks of the numeric pipeline.

namespace pbdm {

struct CriteriaReport {
    double w3 = 0.0;
    double w4 = 0.0;
    std::array<double, 4> ppt_spectrum{};  // ascending
    std::array<double, 3> u{};             // eigenvalues of C^T C, descending
    double big_m = 0.0;                    // M(rho) = sum of the two largest u
    double big_n = 0.0;                    // N(rho) = sum of sqrt(u_i)
    double f_max = 0.0;                    // (1 + N/3)/2
    bool inseparable = false;              // min PPT eigenvalue < -1e-10
    bool bell_violated = false;            // M > 1 + 1e-10
};

/// Determinant witnesses of inseparability: the leading principal minors
/// of order 3 and 4 of the partial transpose rho^{T_B}. Written out in
/// the original indices (rows top to bottom, PPT convention
/// rho^{T_B}_{m mu, n nu} = rho_{m nu, n mu}) these are
///
///        | r(00,00) r(01,00) r(00,10) |        plus the fourth
///   W3 = | r(00,01) r(01,01) r(00,11) |,  W4 = row/column completing
///        | r(10,00) r(11,00) r(10,10) |        the 4x4 determinant.
///
/// A negative value of either certifies entanglement. Real parts are
/// used; the states analyzed here are real-valued.
std::pair<double, double> w_determinants(const DensityMatrix& rho);

/// Eigenvalues of rho^{T_B}, ascending. A negative minimum is necessary
/// and sufficient for two-qubit inseparability.
std::array<double, 4> ppt_spectrum(const DensityMatrix& rho);

/// Pauli correlation matrix C_ij = Tr[rho sigma_i x sigma_j], i,j = x,y,z.
Mat3 correlation_matrix(const DensityMatrix& rho);

struct HorodeckiQuantities {
    std::array<double, 3> u{};  // eigenvalues of C^T C, descending, clamped >= 0
    double big_m = 0.0;
    double big_n = 0.0;
};

/// Bell-CHSH quantities from the correlation matrix: the state violates
/// the CHSH inequality for some choice of settings iff M(rho) > 1.
HorodeckiQuantities horodecki_quantities(const DensityMatrix& rho);

/// Closed-form eigenvalues of C^T C for the deletion-machine output with
/// blank-state weight m1 = 1/sqrt(2):
///   u1 = 4a^4 - 8a^6 + 4a^8,  u2,3 = A +- sqrt(B)/2,  a = alpha, with
///   A = 4a^8 - 8a^6 + 6a^4 - 2a^2 + 1/2,
///   B = 1 + 64a^12 + 224a^8 - 8a^2 - 192a^10 - 128a^6 + 40a^4.
/// Valid for alpha in the open interval (0,1); returned in that labeling
/// (u2 >= u1 >= u3).
std::array<double, 3> closed_form_u(double alpha);

/// Closed-form determinant witnesses for the deletion-machine output,
/// any blank state:
///   W3 = a^6 b^4 m1^2 (a^2 + m1^2 b^2),
///   W4 = -a^6 b^6 (a^4 m2^2 + m1^2 b^4 + a^2 b^2).
std::pair<double, double> closed_form_w(double alpha, double m1);

/// Maximal average teleportation fidelity (1 + N/3)/2 achievable through
/// the state with the standard protocol plus local rotations.
double fidelity_bound(const DensityMatrix& rho);

/// Runs every diagnostic and assembles the report.
CriteriaReport analyze(const DensityMatrix& rho);

// ---------------------------------------------------------------------
// Audit of the fidelity table quoted in the literature for this family
// (alpha = 0.1 .. 0.9, m1 = 1/sqrt(2)). The quoted values disagree with
// the closed-form pipeline for alpha >= 0.4 and break the alpha <->
// sqrt(1-alpha^2) symmetry of the state; they are treated as an audit
// target, never as ground truth.
// ---------------------------------------------------------------------

struct FidelityTableRow {
    double alpha;
    double f_pipeline;
    double f_published;
    double delta;  // f_pipeline - f_published
    bool mismatch;
};

inline constexpr double kFidelityMismatchTolerance = 2e-3;
inline constexpr std::size_t kFidelityTableRows = 9;

/// Published reference values for alpha = 0.1, ..., 0.9.
const std::array<double, kFidelityTableRows>& published_fidelity_table();

/// Pipeline-vs-published comparison, one row per alpha.
std::array<FidelityTableRow, kFidelityTableRows> audit_published_fidelity_table();

}  // namespace pbdm
