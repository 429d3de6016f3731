#pragma once

#include <cstdint>
#include <string>

#include "criteria.hpp"
#include "linalg.hpp"
#include "states.hpp"

// Direct simulation of the standard teleportation protocol through an
// arbitrary shared two-qubit state, with optimal local pre-rotations.
// This verifies the fidelity bound (1 + N/3)/2 by a physical computation
// that never touches the correlation-matrix algebra: build the induced
// single-qubit channel from the Bell measurement and Pauli corrections,
// then average input-output fidelity over Haar-random pure inputs.
//
// Protocol conventions (fixed here, tested against the singlet):
//   * Alice holds the input qubit (system 0) and half a (system 1) of the
//     shared pair; Bob holds system b (system 2).
//   * Alice measures systems (0,1) in the Bell basis ordered
//     psi- = (|01>-|10>)/sqrt2, psi+ = (|01>+|10>)/sqrt2,
//     phi- = (|00>-|11>)/sqrt2, phi+ = (|00>+|11>)/sqrt2.
//   * Bob's corrections, matched to the psi- referenced protocol, are
//     psi- -> I, psi+ -> sigma_z, phi- -> sigma_x, phi+ -> sigma_z sigma_x,
//     so a shared singlet teleports every input exactly.

namespace pbdm {

/// The effective single-qubit channel induced by teleporting through a
/// shared state, as a Choi matrix J = (id x channel)(|phi+><phi+|)
/// normalized to trace 1. Trace preservation shows up as the marginal
/// over the second (output) factor being I/2.
struct TeleportChannel {
    CMat choi;           // 4x4, Hermitian, PSD, trace 1
    std::string source;  // human-readable description of shared state + rotations
};

struct FidelityEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct OptimalRotations {
    CMat rot_a;  // 2x2 unitary applied to Alice's half
    CMat rot_b;  // 2x2 unitary applied to Bob's half
    double predicted_fidelity = 0.0;
    double det_c = 0.0;
};

struct TeleportVerification {
    double formula = 0.0;    // fidelity bound (1 + N/3)/2 from the criteria pipeline
    double predicted = 0.0;  // protocol prediction from the SVD branch
    FidelityEstimate simulated;
    double det_c = 0.0;
    bool det_branch_negative = false;  // det(C) <= 0: the bound is attainable
    bool consistent = false;
};

/// Lifts a proper rotation O in SO(3) to an SU(2) unitary R through the
/// double cover (quaternion extraction, largest-pivot branch), with the
/// convention R sigma_j R^dagger = sum_i O_ij sigma_i. The sign ambiguity
/// of the cover is irrelevant under conjugation.
CMat su2_from_so3(const Mat3& o);

/// Adjoint action of a 2x2 unitary on the Pauli basis,
/// O_ij = Re Tr(sigma_i R sigma_j R^dagger)/2; inverse of su2_from_so3.
Mat3 so3_from_su2(const CMat& r);

/// Builds the teleportation channel through (rot_a x rot_b) shared
/// (rot_a x rot_b)^dagger: Bell measurement on (input, a), Born-weighted
/// Pauli correction on b, outcome-averaged into Choi form. `label`
/// becomes the channel's source description.
TeleportChannel protocol_channel(const DensityMatrix& shared, const CMat& rot_a,
                                 const CMat& rot_b, std::string label = {});

/// Closed-form Bloch-averaged fidelity (2 F_e + 1)/3 with the
/// entanglement fidelity F_e = <phi+| choi |phi+>. Used as the exact
/// oracle the Monte Carlo estimate must reproduce.
double average_fidelity_exact(const TeleportChannel& ch);

// Monte Carlo sampling is split over this many fixed PCG32 substreams
// ((seed, stream_origin + k) for k < kMcSubstreams) and merged in stream
// order, so the estimate is identical no matter how many threads run.
inline constexpr std::uint64_t kMcSubstreams = 64;

/// Mean fidelity <psi| channel(|psi><psi|) |psi> over `samples` Haar-random
/// pure inputs (cos theta uniform on [-1,1], phase uniform on [0,2pi)).
/// Requires samples >= 100. Reproducible for fixed (seed, stream_origin).
FidelityEstimate average_fidelity_mc(const TeleportChannel& ch, std::uint64_t samples,
                                     std::uint64_t seed, std::uint64_t stream_origin = 0);

/// Local pre-rotations that minimize the trace of the rotated correlation
/// matrix: with C = U diag(s1,s2,sg*s3) V^T (proper factors, sg the sign
/// of det C), O_A = diag(-1,-1,1) U^T and O_B = V^T turn C into
/// diag(-s1,-s2,sg*s3). The standard protocol then reaches
///   (1 + (s1+s2+s3)/3)/2   when det C <= 0  (equals the fidelity bound),
///   (1 + (s1+s2-s3)/3)/2   otherwise.
OptimalRotations optimal_rotations(const Mat3& c);

/// End-to-end check of the fidelity bound: formula vs Monte Carlo through
/// the optimally rotated protocol. `consistent` compares the branch
/// prediction with the estimate at three standard errors.
TeleportVerification verify_fidelity(const DensityMatrix& shared, std::uint64_t samples,
                                     std::uint64_t seed, std::uint64_t stream_origin = 0);

}  // namespace pbdm
