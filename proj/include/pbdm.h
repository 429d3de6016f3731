/*
 * pbdm - analysis of the Pati-Braunstein deletion machine output as an
 * entanglement and teleportation resource.
 *
 * C interface to the shared library. All handles are opaque; every
 * function returns a pbdm_status and writes results through out
 * parameters. Results are deterministic for identical inputs (Monte
 * Carlo functions take an explicit seed).
 */

#ifndef PBDM_H
#define PBDM_H

#include <stdint.h>

#if defined(_WIN32)
#  define PBDM_API __declspec(dllexport)
#else
#  define PBDM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pbdm_status {
    PBDM_OK = 0,
    PBDM_ERR_INVALID_ARGUMENT = 1, /* bad parameter, range or null pointer */
    PBDM_ERR_NO_CONVERGENCE = 2,   /* eigensolver failed to converge */
    PBDM_ERR_INTERNAL = 3
} pbdm_status;

/* Short human-readable description of a status code. Never NULL. */
PBDM_API const char* pbdm_status_message(pbdm_status status);

/* Library version, e.g. "0.1.0". */
PBDM_API const char* pbdm_version(void);

/* ------------------------------------------------------------------ */
/* States                                                              */
/* ------------------------------------------------------------------ */

/* A two-qubit density matrix (4x4, Hermitian, unit trace, positive
 * semidefinite). Basis order |00>, |01>, |10>, |11>. */
typedef struct pbdm_state pbdm_state;

/* Reduced two-qubit output of the deletion machine for input amplitude
 * alpha in [0,1] and blank-state weight m1 in [0,1] (beta and m2 are
 * derived so both pairs are normalized). */
PBDM_API pbdm_status pbdm_state_deletion(double alpha, double m1, pbdm_state** out);

/* Werner state p |psi-><psi-| + (1-p)/4 I, p in [0,1]. */
PBDM_API pbdm_status pbdm_state_werner(double p, pbdm_state** out);

typedef enum pbdm_bell_kind {
    PBDM_BELL_PSI_PLUS = 0,
    PBDM_BELL_PSI_MINUS = 1,
    PBDM_BELL_PHI_PLUS = 2,
    PBDM_BELL_PHI_MINUS = 3
} pbdm_bell_kind;

/* Projector onto a Bell state. */
PBDM_API pbdm_status pbdm_state_bell(pbdm_bell_kind kind, pbdm_state** out);

/* General constructor from row-major 4x4 entries (re + i*im). The matrix
 * must satisfy the density-matrix invariants above within the library
 * tolerances (Hermitian and unit trace to 1e-12, eigenvalues >= -1e-10). */
PBDM_API pbdm_status pbdm_state_from_entries(const double re[16], const double im[16],
                                             pbdm_state** out);

/* Copies the matrix entries out, row-major. Either array may be NULL. */
PBDM_API pbdm_status pbdm_state_entries(const pbdm_state* state, double re[16], double im[16]);

PBDM_API void pbdm_state_free(pbdm_state* state);

/* ------------------------------------------------------------------ */
/* Entanglement / nonlocality / fidelity diagnostics                   */
/* ------------------------------------------------------------------ */

typedef struct pbdm_report {
    double w3;        /* order-3 determinant witness of the partial transpose */
    double w4;        /* order-4 determinant witness (full determinant)       */
    double ppt[4];    /* eigenvalues of the partial transpose, ascending      */
    double u[3];      /* eigenvalues of C^T C, descending                     */
    double big_m;     /* M = u[0] + u[1]; CHSH violated iff M > 1             */
    double big_n;     /* N = sum of sqrt(u[i])                                */
    double f_max;     /* optimal teleportation fidelity (1 + N/3)/2           */
    int inseparable;  /* 1 iff min ppt < -1e-10                               */
    int bell_violated;/* 1 iff M > 1 + 1e-10                                  */
} pbdm_report;

PBDM_API pbdm_status pbdm_analyze(const pbdm_state* state, pbdm_report* out);

/* Closed-form eigenvalues of C^T C for the deletion output at
 * m1 = 1/sqrt(2) and 0 < alpha < 1. The returned labeling satisfies
 * u[1] >= u[0] >= u[2]; sort descending to compare with pbdm_report. */
PBDM_API pbdm_status pbdm_closed_form_u(double alpha, double u[3]);

/* Closed-form determinant witnesses for the deletion output, any m1. */
PBDM_API pbdm_status pbdm_closed_form_w(double alpha, double m1, double* w3, double* w4);

/* ------------------------------------------------------------------ */
/* Published fidelity table audit                                      */
/* ------------------------------------------------------------------ */

#define PBDM_TABLE1_ROWS 9

typedef struct pbdm_table1_row {
    double alpha;       /* 0.1 ... 0.9 */
    double f_pipeline;  /* fidelity bound from the analysis pipeline */
    double f_published; /* value quoted in the literature */
    double delta;       /* f_pipeline - f_published */
    int mismatch;       /* 1 iff |delta| > 2e-3 */
} pbdm_table1_row;

/* Fills the nine audit rows. The published values agree with the
 * pipeline only for alpha <= 0.3; they also break the state's
 * alpha <-> sqrt(1-alpha^2) symmetry (compare rows 0.6 and 0.8), so
 * mismatches are expected and flagged rather than reconciled. */
PBDM_API pbdm_status pbdm_table1_audit(pbdm_table1_row rows[PBDM_TABLE1_ROWS]);

/* ------------------------------------------------------------------ */
/* Teleportation simulation                                            */
/* ------------------------------------------------------------------ */

typedef struct pbdm_teleport_result {
    double formula;      /* fidelity bound (1 + N/3)/2 */
    double predicted;    /* protocol prediction from the correlation SVD branch */
    double mc_mean;      /* Monte Carlo estimate of the achieved fidelity */
    double mc_std_error; /* sample standard deviation / sqrt(samples) */
    uint64_t samples;
    uint64_t seed;
    double det_c;            /* determinant of the correlation matrix */
    int det_branch_negative; /* 1 iff det_c <= 0: the bound is attainable */
    int consistent;          /* 1 iff the estimate matches the branch target at 3 sigma */
} pbdm_teleport_result;

/* Sampling is split over this many RNG substreams per estimate; advance
 * stream_origin in multiples of it to keep estimates independent. */
#define PBDM_MC_SUBSTREAMS 64

/* Simulates the standard teleportation protocol (Bell measurement plus
 * Pauli correction) through the state with optimal local pre-rotations
 * and compares the sampled average fidelity against the fidelity bound.
 * samples must be >= 100. stream_origin selects the block of RNG
 * substreams; pass 0 unless several estimates must be drawn
 * independently from one seed, in which case step it by
 * PBDM_MC_SUBSTREAMS per estimate. */
PBDM_API pbdm_status pbdm_teleport_verify(const pbdm_state* state, uint64_t samples,
                                          uint64_t seed, uint64_t stream_origin,
                                          pbdm_teleport_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PBDM_H */
