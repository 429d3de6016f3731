#include "teleport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rng.hpp"

namespace pbdm {

namespace {

void check_unitary(const CMat& r, const char* which) {
    if (r.rows() != 2 || r.cols() != 2)
        throw std::invalid_argument(std::string(which) + ": expected a 2x2 unitary");
    if (max_abs(adjoint(r) * r - CMat::identity(2)) > 1e-12)
        throw std::invalid_argument(std::string(which) + ": matrix not unitary within 1e-12");
}

struct ChunkStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

// Chan's pairwise combination; applied in fixed stream order.
ChunkStats merge(const ChunkStats& a, const ChunkStats& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    ChunkStats out;
    out.count = a.count + b.count;
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * static_cast<double>(b.count) / static_cast<double>(out.count);
    out.m2 = a.m2 + b.m2 +
             delta * delta * static_cast<double>(a.count) * static_cast<double>(b.count) /
                 static_cast<double>(out.count);
    return out;
}

}  // namespace

CMat su2_from_so3(const Mat3& o) {
    const Mat3 gram = mul3(transpose3(o), o);
    double defect = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            defect = std::max(defect, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
    if (defect > 1e-10 || std::abs(det3(o) - 1.0) > 1e-10)
        throw std::invalid_argument("su2_from_so3: input is not a proper rotation");

    // quaternion (w,x,y,z) by the largest-pivot branch
    double w, x, y, z;
    const double t = o(0, 0) + o(1, 1) + o(2, 2);
    if (t > 0.0) {
        const double r = std::sqrt(1.0 + t);
        w = 0.5 * r;
        x = (o(2, 1) - o(1, 2)) / (2.0 * r);
        y = (o(0, 2) - o(2, 0)) / (2.0 * r);
        z = (o(1, 0) - o(0, 1)) / (2.0 * r);
    } else if (o(0, 0) >= o(1, 1) && o(0, 0) >= o(2, 2)) {
        const double r = std::sqrt(1.0 + o(0, 0) - o(1, 1) - o(2, 2));
        x = 0.5 * r;
        w = (o(2, 1) - o(1, 2)) / (2.0 * r);
        y = (o(0, 1) + o(1, 0)) / (2.0 * r);
        z = (o(0, 2) + o(2, 0)) / (2.0 * r);
    } else if (o(1, 1) >= o(2, 2)) {
        const double r = std::sqrt(1.0 - o(0, 0) + o(1, 1) - o(2, 2));
        y = 0.5 * r;
        w = (o(0, 2) - o(2, 0)) / (2.0 * r);
        x = (o(0, 1) + o(1, 0)) / (2.0 * r);
        z = (o(1, 2) + o(2, 1)) / (2.0 * r);
    } else {
        const double r = std::sqrt(1.0 - o(0, 0) - o(1, 1) + o(2, 2));
        z = 0.5 * r;
        w = (o(1, 0) - o(0, 1)) / (2.0 * r);
        x = (o(0, 2) + o(2, 0)) / (2.0 * r);
        y = (o(1, 2) + o(2, 1)) / (2.0 * r);
    }

    // R = w I - i (x sx + y sy + z sz)
    CMat r(2, 2);
    r(0, 0) = cplx{w, -z};
    r(0, 1) = cplx{-y, -x};
    r(1, 0) = cplx{y, -x};
    r(1, 1) = cplx{w, z};
    return r;
}

Mat3 so3_from_su2(const CMat& r) {
    check_unitary(r, "so3_from_su2");
    Mat3 o;
    const CMat rd = adjoint(r);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            o(i, j) = 0.5 * trace(pauli(i) * (r * (pauli(j) * rd))).real();
    return o;
}

TeleportChannel protocol_channel(const DensityMatrix& shared, const CMat& rot_a,
                                 const CMat& rot_b, std::string label) {
    check_unitary(rot_a, "protocol_channel rot_a");
    check_unitary(rot_b, "protocol_channel rot_b");

    const CMat local = kron(rot_a, rot_b);
    const CMat chi = local * shared.matrix() * adjoint(local);

    // Bell outcomes and the matching corrections (see header).
    const std::array<BellKind, 4> outcomes = {BellKind::PsiMinus, BellKind::PsiPlus,
                                              BellKind::PhiMinus, BellKind::PhiPlus};
    const std::array<CMat, 4> corrections = {CMat::identity(2), pauli_z(), pauli_x(),
                                             pauli_z() * pauli_x()};

    std::array<CMat, 4> projectors = {CMat(8, 8), CMat(8, 8), CMat(8, 8), CMat(8, 8)};
    for (std::size_t k = 0; k < 4; ++k) {
        const std::vector<cplx> b = bell_state(outcomes[k]).amplitudes();
        projectors[k] = kron(outer(b, b), CMat::identity(2));
    }

    CMat choi(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CMat basis_ij(2, 2);
            basis_ij(i, j) = 1.0;
            const CMat big = kron(basis_ij, chi);  // systems (input)(a)(b)
            CMat mapped(2, 2);
            for (std::size_t k = 0; k < 4; ++k) {
                const CMat reduced = partial_trace(projectors[k] * big, {2, 2, 2}, {2});
                mapped = mapped + corrections[k] * reduced * adjoint(corrections[k]);
            }
            choi = choi + 0.5 * kron(basis_ij, mapped);
        }
    }

    if (hermiticity_defect(choi) > 1e-12)
        throw std::runtime_error("protocol_channel: Choi matrix lost Hermiticity");
    if (std::abs(trace(choi) - cplx{1.0, 0.0}) > 1e-12)
        throw std::runtime_error("protocol_channel: Choi matrix trace deviates from 1");
    if (hermitian_eigenvalues(choi).front() < -1e-10)
        throw std::runtime_error("protocol_channel: Choi matrix not PSD");
    const CMat marginal = partial_trace(choi, {2, 2}, {0});
    if (max_abs(marginal - 0.5 * CMat::identity(2)) > 1e-10)
        throw std::runtime_error("protocol_channel: channel is not trace preserving");

    TeleportChannel ch;
    ch.choi = choi;
    ch.source = label.empty() ? "standard teleportation protocol (Bell measurement + Pauli correction)"
                              : std::move(label);
    return ch;
}

double average_fidelity_exact(const TeleportChannel& ch) {
    const CMat& j = ch.choi;
    // F_e = <phi+| J |phi+> with |phi+> = (1,0,0,1)/sqrt2
    const double fe = 0.5 * (j(0, 0) + j(0, 3) + j(3, 0) + j(3, 3)).real();
    return (2.0 * fe + 1.0) / 3.0;
}

FidelityEstimate average_fidelity_mc(const TeleportChannel& ch, std::uint64_t samples,
                                     std::uint64_t seed, std::uint64_t stream_origin) {
    if (samples < 100)
        throw std::invalid_argument("average_fidelity_mc: need at least 100 samples");

    std::array<cplx, 16> j{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) j[r * 4 + c] = ch.choi(r, c);

    const double two_pi = 2.0 * std::acos(-1.0);

    auto run_chunk = [&](std::uint64_t stream, std::uint64_t count) {
        Pcg32 rng(seed, stream);
        ChunkStats st;
        for (std::uint64_t s = 0; s < count; ++s) {
            const double cos_theta = 1.0 - 2.0 * rng.next_double();
            const double phi = two_pi * rng.next_double();
            const double c2 = std::sqrt(0.5 * (1.0 + cos_theta));
            const double s2 = std::sqrt(0.5 * (1.0 - cos_theta));
            const cplx phase = std::polar(1.0, phi);

            // v = conj(psi) x psi; fidelity = 2 v^dag J v
            const std::array<cplx, 4> v = {c2 * c2, c2 * s2 * phase,
                                           s2 * std::conj(phase) * c2, s2 * s2};
            cplx acc{};
            for (std::size_t r = 0; r < 4; ++r) {
                cplx row{};
                for (std::size_t c = 0; c < 4; ++c) row += j[r * 4 + c] * v[c];
                acc += std::conj(v[r]) * row;
            }
            const double f = 2.0 * acc.real();

            // Welford update
            st.count++;
            const double delta = f - st.mean;
            st.mean += delta / static_cast<double>(st.count);
            st.m2 += delta * (f - st.mean);
        }
        return st;
    };

    const std::uint64_t base = samples / kMcSubstreams;
    const std::uint64_t extra = samples % kMcSubstreams;
    auto chunk_count = [&](std::uint64_t k) { return base + (k < extra ? 1 : 0); };

    std::vector<ChunkStats> stats(kMcSubstreams);
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers > 1 && samples >= 10000) {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t k = next.fetch_add(1); k < kMcSubstreams; k = next.fetch_add(1))
                    stats[k] = run_chunk(stream_origin + k, chunk_count(k));
            });
        for (std::thread& t : pool) t.join();
    } else {
        for (std::uint64_t k = 0; k < kMcSubstreams; ++k)
            stats[k] = run_chunk(stream_origin + k, chunk_count(k));
    }

    ChunkStats total;
    for (const ChunkStats& st : stats) total = merge(total, st);

    FidelityEstimate est;
    est.mean = total.mean;
    est.samples = samples;
    est.seed = seed;
    est.std_error = samples > 1 ? std::sqrt(std::max(total.m2, 0.0) /
                                            static_cast<double>(samples - 1) /
                                            static_cast<double>(samples))
                                : 0.0;
    return est;
}

OptimalRotations optimal_rotations(const Mat3& c) {
    const Svd3Result dec = svd3(c);
    if (dec.s[0] > 1.0 + 1e-9)
        throw std::invalid_argument("optimal_rotations: singular value exceeds 1, not a state's correlation matrix");

    Mat3 flip = Mat3::identity();
    flip(0, 0) = -1.0;
    flip(1, 1) = -1.0;

    OptimalRotations out;
    out.rot_a = su2_from_so3(mul3(flip, transpose3(dec.u)));
    out.rot_b = su2_from_so3(transpose3(dec.v));
    out.det_c = det3(c);
    const double signed_s3 = static_cast<double>(dec.det_sign) * dec.s[2];
    out.predicted_fidelity = 0.5 * (1.0 + (dec.s[0] + dec.s[1] - signed_s3) / 3.0);
    return out;
}

TeleportVerification verify_fidelity(const DensityMatrix& shared, std::uint64_t samples,
                                     std::uint64_t seed, std::uint64_t stream_origin) {
    const Mat3 c = correlation_matrix(shared);
    const OptimalRotations opt = optimal_rotations(c);
    const TeleportChannel ch =
        protocol_channel(shared, opt.rot_a, opt.rot_b, "optimally rotated standard protocol");

    TeleportVerification v;
    v.formula = fidelity_bound(shared);
    v.predicted = opt.predicted_fidelity;
    v.det_c = opt.det_c;
    v.det_branch_negative = opt.det_c <= 1e-12;
    v.simulated = average_fidelity_mc(ch, samples, seed, stream_origin);

    // det(C) > 0: the bound may be unattainable for this protocol family,
    // so consistency is judged against the branch prediction. The 1e-12
    // absolute term covers zero-variance channels (e.g. the singlet).
    const double target = v.det_branch_negative ? v.formula : v.predicted;
    v.consistent = std::abs(target - v.simulated.mean) <= 3.0 * v.simulated.std_error + 1e-12;
    return v;
}

}  // namespace pbdm
