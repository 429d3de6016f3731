#include "pbdm.h"

#include <new>
#include <type_traits>

#include "criteria.hpp"
#include "states.hpp"
#include "teleport.hpp"

struct pbdm_state {
    pbdm::DensityMatrix rho;
};

namespace {

template <typename Fn>
pbdm_status guarded(Fn&& fn) {
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            return PBDM_OK;
        } else {
            return fn();
        }
    } catch (const std::invalid_argument&) {
        return PBDM_ERR_INVALID_ARGUMENT;
    } catch (const pbdm::ConvergenceError&) {
        return PBDM_ERR_NO_CONVERGENCE;
    } catch (...) {
        return PBDM_ERR_INTERNAL;
    }
}

pbdm_status wrap_state(pbdm::DensityMatrix rho, pbdm_state** out) {
    *out = new (std::nothrow) pbdm_state{std::move(rho)};
    return *out ? PBDM_OK : PBDM_ERR_INTERNAL;
}

}  // namespace

extern "C" {

const char* pbdm_status_message(pbdm_status status) {
    switch (status) {
        case PBDM_OK: return "ok";
        case PBDM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case PBDM_ERR_NO_CONVERGENCE: return "eigensolver did not converge";
        case PBDM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* pbdm_version(void) { return "0.1.0"; }

pbdm_status pbdm_state_deletion(double alpha, double m1, pbdm_state** out) {
    if (!out) return PBDM_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        return wrap_state(pbdm::deletion_output(pbdm::DeletionParams(alpha, m1)), out);
    });
}

pbdm_status pbdm_state_werner(double p, pbdm_state** out) {
    if (!out) return PBDM_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] { return wrap_state(pbdm::werner(p), out); });
}

pbdm_status pbdm_state_bell(pbdm_bell_kind kind, pbdm_state** out) {
    if (!out) return PBDM_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    pbdm::BellKind k;
    switch (kind) {
        case PBDM_BELL_PSI_PLUS: k = pbdm::BellKind::PsiPlus; break;
        case PBDM_BELL_PSI_MINUS: k = pbdm::BellKind::PsiMinus; break;
        case PBDM_BELL_PHI_PLUS: k = pbdm::BellKind::PhiPlus; break;
        case PBDM_BELL_PHI_MINUS: k = pbdm::BellKind::PhiMinus; break;
        default: return PBDM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const std::vector<pbdm::cplx> amps = pbdm::bell_state(k).amplitudes();
        return wrap_state(pbdm::DensityMatrix(pbdm::outer(amps, amps)), out);
    });
}

pbdm_status pbdm_state_from_entries(const double re[16], const double im[16], pbdm_state** out) {
    if (!out || !re || !im) return PBDM_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        std::vector<pbdm::cplx> entries(16);
        for (std::size_t i = 0; i < 16; ++i) entries[i] = pbdm::cplx{re[i], im[i]};
        return wrap_state(pbdm::DensityMatrix(pbdm::CMat(4, 4, std::move(entries))), out);
    });
}

pbdm_status pbdm_state_entries(const pbdm_state* state, double re[16], double im[16]) {
    if (!state) return PBDM_ERR_INVALID_ARGUMENT;
    const pbdm::CMat& m = state->rho.matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (re) re[i * 4 + j] = m(i, j).real();
            if (im) im[i * 4 + j] = m(i, j).imag();
        }
    return PBDM_OK;
}

void pbdm_state_free(pbdm_state* state) { delete state; }

pbdm_status pbdm_analyze(const pbdm_state* state, pbdm_report* out) {
    if (!state || !out) return PBDM_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const pbdm::CriteriaReport r = pbdm::analyze(state->rho);
        out->w3 = r.w3;
        out->w4 = r.w4;
        for (std::size_t i = 0; i < 4; ++i) out->ppt[i] = r.ppt_spectrum[i];
        for (std::size_t i = 0; i < 3; ++i) out->u[i] = r.u[i];
        out->big_m = r.big_m;
        out->big_n = r.big_n;
        out->f_max = r.f_max;
        out->inseparable = r.inseparable ? 1 : 0;
        out->bell_violated = r.bell_violated ? 1 : 0;
    });
}

pbdm_status pbdm_closed_form_u(double alpha, double u[3]) {
    if (!u) return PBDM_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const std::array<double, 3> v = pbdm::closed_form_u(alpha);
        u[0] = v[0];
        u[1] = v[1];
        u[2] = v[2];
    });
}

pbdm_status pbdm_closed_form_w(double alpha, double m1, double* w3, double* w4) {
    if (!w3 || !w4) return PBDM_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto [a, b] = pbdm::closed_form_w(alpha, m1);
        *w3 = a;
        *w4 = b;
    });
}

pbdm_status pbdm_table1_audit(pbdm_table1_row rows[PBDM_TABLE1_ROWS]) {
    if (!rows) return PBDM_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto audit = pbdm::audit_published_fidelity_table();
        for (std::size_t i = 0; i < pbdm::kFidelityTableRows; ++i) {
            rows[i].alpha = audit[i].alpha;
            rows[i].f_pipeline = audit[i].f_pipeline;
            rows[i].f_published = audit[i].f_published;
            rows[i].delta = audit[i].delta;
            rows[i].mismatch = audit[i].mismatch ? 1 : 0;
        }
    });
}

pbdm_status pbdm_teleport_verify(const pbdm_state* state, uint64_t samples, uint64_t seed,
                                 uint64_t stream_origin, pbdm_teleport_result* out) {
    if (!state || !out) return PBDM_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const pbdm::TeleportVerification v =
            pbdm::verify_fidelity(state->rho, samples, seed, stream_origin);
        out->formula = v.formula;
        out->predicted = v.predicted;
        out->mc_mean = v.simulated.mean;
        out->mc_std_error = v.simulated.std_error;
        out->samples = v.simulated.samples;
        out->seed = v.simulated.seed;
        out->det_c = v.det_c;
        out->det_branch_negative = v.det_branch_negative ? 1 : 0;
        out->consistent = v.consistent ? 1 : 0;
    });
}

}  // extern "C"
