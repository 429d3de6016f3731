// Acceptance suite: the checks the deliverable must pass end to end.
// Prints one PASS/FAIL line per criterion and exits with the number of
// failures. Numeric criteria run against the core library; the
// determinism criterion drives the actual CLI binary.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "linalg.hpp"
#include "states.hpp"
#include "teleport.hpp"

#ifndef PBDM_CLI_PATH
#error "PBDM_CLI_PATH must be defined by the build"
#endif

using namespace pbdm;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& message) {
        if (ok) detail = message;  // keep the first failure
        ok = false;
    }
    void expect(bool condition, const std::string& message) {
        if (!condition) fail(message);
    }
};

DensityMatrix del(double alpha, double m1 = kInvSqrt2) {
    return deletion_output(DeletionParams(alpha, m1));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. special-case exactness: u = (1/4,1/4,1/4) and F = 3/4 at the
//    symmetric point, to 1e-10
void criterion1(Check& c) {
    const CriteriaReport r = analyze(del(kInvSqrt2));
    for (double u : r.u)
        c.expect(std::abs(u - 0.25) <= 1e-10, "u deviates from 1/4: " + fmt(u));
    c.expect(std::abs(r.f_max - 0.75) <= 1e-10, "F_max deviates from 3/4: " + fmt(r.f_max));
}

// 2. closed-form algebra audit across the alpha grid
void criterion2(Check& c) {
    for (int i = 1; i <= 99; ++i) {
        const double alpha = 0.01 * i;
        const auto [w3n, w4n] = w_determinants(del(alpha));
        const auto [w3c, w4c] = closed_form_w(alpha, kInvSqrt2);
        c.expect(std::abs(w3n - w3c) <= 1e-12,
                 "W3 mismatch at alpha=" + fmt(alpha) + ": " + fmt(std::abs(w3n - w3c)));
        c.expect(std::abs(w4n - w4c) <= 1e-12,
                 "W4 mismatch at alpha=" + fmt(alpha) + ": " + fmt(std::abs(w4n - w4c)));

        std::array<double, 3> cf = closed_form_u(alpha);
        std::sort(cf.begin(), cf.end(), std::greater<double>());
        const HorodeckiQuantities q = horodecki_quantities(del(alpha));
        for (std::size_t k = 0; k < 3; ++k)
            c.expect(std::abs(cf[k] - q.u[k]) <= 1e-10,
                     "u mismatch at alpha=" + fmt(alpha) + ": " + fmt(std::abs(cf[k] - q.u[k])));
    }
}

// 3. qualitative claims at every grid point
void criterion3(Check& c) {
    for (int i = 1; i <= 99; ++i) {
        const double alpha = 0.01 * i;
        const CriteriaReport r = analyze(del(alpha));
        c.expect(r.w3 >= 0.0, "W3 < 0 at alpha=" + fmt(alpha));
        c.expect(r.w4 < 0.0, "W4 >= 0 at alpha=" + fmt(alpha));
        c.expect(r.ppt_spectrum[0] < 0.0, "PPT min >= 0 at alpha=" + fmt(alpha));
        c.expect(r.big_m <= 1.0, "M > 1 at alpha=" + fmt(alpha));
        c.expect(r.f_max > 2.0 / 3.0, "F_max <= 2/3 at alpha=" + fmt(alpha));
    }
}

// 4. published-table audit: agreement below 0.4, flagged divergence above,
//    symmetry preserved by the pipeline
void criterion4(Check& c) {
    const auto rows = audit_published_fidelity_table();
    for (std::size_t i = 0; i < 3; ++i) {
        c.expect(std::abs(rows[i].delta) <= 2e-3,
                 "delta exceeds 2e-3 at alpha=" + fmt(rows[i].alpha));
        c.expect(!rows[i].mismatch, "unexpected mismatch flag at alpha=" + fmt(rows[i].alpha));
    }
    for (std::size_t i = 3; i < rows.size(); ++i)
        c.expect(rows[i].mismatch, "missing mismatch flag at alpha=" + fmt(rows[i].alpha));

    c.expect(std::abs(rows[4].f_pipeline - 0.712731) <= 1e-4,
             "pipeline F(0.5) moved: " + fmt(rows[4].f_pipeline));
    c.expect(std::abs(rows[8].f_pipeline - 0.696918) <= 1e-4,
             "pipeline F(0.9) moved: " + fmt(rows[8].f_pipeline));
    c.expect(std::abs(rows[4].f_published - 0.725347) == 0.0, "published F(0.5) constant wrong");
    c.expect(std::abs(rows[8].f_published - 0.893974) == 0.0, "published F(0.9) constant wrong");

    const double gap = std::abs(fidelity_bound(del(0.6)) - fidelity_bound(del(0.8)));
    c.expect(gap <= 1e-10, "symmetry gap |F(0.6)-F(0.8)| = " + fmt(gap));
}

// 5. Werner oracle family
void criterion5(Check& c) {
    for (int i = 0; i <= 20; ++i) {
        const double p = 0.05 * i;
        const CriteriaReport r = analyze(werner(p));
        c.expect(std::abs(r.big_m - 2.0 * p * p) <= 1e-10, "M(werner) off at p=" + fmt(p));
        c.expect(std::abs(r.f_max - (1.0 + p) / 2.0) <= 1e-10, "F(werner) off at p=" + fmt(p));
    }
    c.expect(analyze(werner(kInvSqrt2 + 1e-6)).bell_violated,
             "no Bell violation just above p=1/sqrt2");
    c.expect(!analyze(werner(kInvSqrt2 - 1e-6)).bell_violated,
             "Bell violation just below p=1/sqrt2");
    c.expect(analyze(werner(1.0 / 3.0 + 1e-6)).inseparable,
             "separable verdict just above p=1/3");
    c.expect(!analyze(werner(1.0 / 3.0 - 1e-6)).inseparable,
             "inseparable verdict just below p=1/3");
}

// 6. physical verification of the fidelity bound by Monte Carlo
void criterion6(Check& c) {
    const std::uint64_t n = 100000;
    const std::uint64_t seed = 7;
    const double alphas[] = {0.1, 0.3, 0.5, kInvSqrt2, 0.9};
    for (double alpha : alphas) {
        const TeleportVerification v = verify_fidelity(del(alpha), n, seed);
        c.expect(v.det_branch_negative, "det branch positive at alpha=" + fmt(alpha));
        // the 1e-12 term covers the isotropic point alpha = 1/sqrt2, where
        // the rotated channel has constant per-input fidelity and the
        // standard error collapses to rounding level
        c.expect(std::abs(v.formula - v.simulated.mean) <=
                     3.0 * v.simulated.std_error + 1e-12,
                 "MC off the bound at alpha=" + fmt(alpha) + ": mean=" + fmt(v.simulated.mean) +
                     " formula=" + fmt(v.formula) + " stderr=" + fmt(v.simulated.std_error));
        c.expect(v.consistent, "inconsistent verdict at alpha=" + fmt(alpha));
    }

    const TeleportVerification s = verify_fidelity(werner(1.0), n, seed);
    c.expect(std::abs(s.simulated.mean - 1.0) <= 1e-12,
             "singlet fidelity not exactly 1: " + fmt(s.simulated.mean));

    const TeleportVerification mixed = verify_fidelity(werner(0.0), n, seed);
    c.expect(std::abs(mixed.simulated.mean - 0.5) <= 3.0 * mixed.simulated.std_error + 1e-12,
             "maximally mixed fidelity off 0.5: " + fmt(mixed.simulated.mean));
}

// 7. structural consistency: ancilla trace of the pure output equals the
//    reduced state across the full grid
void criterion7(Check& c) {
    for (int i = 1; i <= 99; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const DeletionParams p(0.01 * i, std::min(0.1 * j, 1.0));
            const PureState psi = deletion_pure_output(p);
            const CMat reduced =
                partial_trace(outer(psi.amplitudes(), psi.amplitudes()), {2, 2, 3}, {0, 1});
            const double diff = max_abs(reduced - del(p.alpha, p.m1).matrix());
            c.expect(diff <= 1e-12, "pure/reduced mismatch " + fmt(diff) + " at alpha=" +
                                        fmt(p.alpha) + " m1=" + fmt(p.m1));
            if (!c.ok) return;
        }
    }
}

// 8. determinism: two identical CLI sweeps are byte-identical
void criterion8(Check& c) {
    const std::string file_a = "acceptance_sweep_a.csv";
    const std::string file_b = "acceptance_sweep_b.csv";
    const std::string base = std::string(PBDM_CLI_PATH) +
                             " sweep --mc-samples 100000 --seed 7 --format csv --output ";
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const int rc_a = std::system((base + file_a).c_str());
    const int rc_b = std::system((base + file_b).c_str());
    c.expect(rc_a == 0 && rc_b == 0, "CLI sweep exited nonzero");
    if (c.ok) {
        const std::string a = slurp(file_a);
        const std::string b = slurp(file_b);
        c.expect(!a.empty(), "sweep output empty");
        c.expect(a == b, "sweep outputs differ between runs");
        c.expect(a.substr(0, a.find('\n')) ==
                     "alpha,w3,w4,ppt_min,u1,u2,u3,M,N,F_max,F_mc,F_mc_stderr",
                 "unexpected CSV header");
    }
    std::remove(file_a.c_str());
    std::remove(file_b.c_str());
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
    double budget_seconds;  // 0 = no budget
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "special-case exactness: u = 1/4 triple, F_max = 3/4", criterion1, 1.0},
        {2, "closed-form algebra audit over the alpha grid", criterion2, 5.0},
        {3, "qualitative claims: W3>=0, W4<0, inseparable, M<=1, F>2/3", criterion3, 0.0},
        {4, "published fidelity table audit and symmetry check", criterion4, 0.0},
        {5, "Werner family: M=2p^2, thresholds at 1/3 and 1/sqrt2", criterion5, 0.0},
        {6, "Monte Carlo teleportation matches the bound at 3 sigma", criterion6, 60.0},
        {7, "pure output reduces to the two-qubit state on the grid", criterion7, 0.0},
        {8, "byte-identical CLI sweep for a fixed seed", criterion8, 0.0},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.budget_seconds > 0.0 && seconds > cr.budget_seconds)
            check.fail("runtime " + fmt(seconds) + " s exceeds budget " +
                       fmt(cr.budget_seconds) + " s");

        if (!check.ok) ++failures;
        std::printf("%s  criterion %d: %s (%.2f s)%s%s\n", check.ok ? "PASS" : "FAIL", cr.id,
                    cr.name, seconds, check.ok ? "" : " -- ", check.ok ? "" : check.detail.c_str());
    }

    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
