#ifndef SICPOVM_H
#define SICPOVM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  SIC_STATUS_OK = 0,
  SIC_STATUS_NULL_POINTER = 1,
  SIC_STATUS_INVALID_UTF8 = 2,
  SIC_STATUS_INVALID_ARGUMENT = 3,
  SIC_STATUS_VERIFICATION_FAILED = 4,
  SIC_STATUS_NUMERICAL_FAILURE = 5,
  SIC_STATUS_PANIC = 6,
} SicStatus;

/**
 * Opaque handle to an orthonormal basis of the traceless Hermitian
 * operators.
 */
typedef struct SicBasisHandle SicBasisHandle;

/**
 * Opaque handle to a one-parameter SIC POVM family with its admissible
 * interval.
 */
typedef struct SicFamilyHandle SicFamilyHandle;

/**
 * Opaque handle to a concrete SIC POVM.
 */
typedef struct SicPovmHandle SicPovmHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Frees a string returned by any `*_json` or `*_csv` function.
 */
void sic_string_free(char *s);

/**
 * Creates the generalized Gell-Mann basis for dimension `d`.
 */
SicStatus sic_basis_gell_mann(uintptr_t d, SicBasisHandle **out);

/**
 * Creates the normalized Pauli basis (dimension 2).
 */
SicStatus sic_basis_pauli(SicBasisHandle **out);

/**
 * Parses a basis from its JSON form; validation errors map to
 * `VERIFICATION_FAILED`.
 */
SicStatus sic_basis_from_json(const char *json, SicBasisHandle **out);

/**
 * Serializes a basis to JSON.
 */
SicStatus sic_basis_to_json(const SicBasisHandle *basis, char **out);

/**
 * Basis dimension `d`; 0 for a null handle.
 */
uintptr_t sic_basis_dim(const SicBasisHandle *basis);

void sic_basis_free(SicBasisHandle *basis);

/**
 * Builds the one-parameter family generated by a basis, including the
 * admissible interval `[t0, t1]`.
 */
SicStatus sic_family_new(const SicBasisHandle *basis, SicFamilyHandle **out);

/**
 * Lower endpoint of the admissible interval.
 */
SicStatus sic_family_t0(const SicFamilyHandle *family, double *out);

/**
 * Upper endpoint of the admissible interval.
 */
SicStatus sic_family_t1(const SicFamilyHandle *family, double *out);

/**
 * Largest admissible magnitude `max{|t0|, t1}`.
 */
SicStatus sic_family_t_m(const SicFamilyHandle *family, double *out);

void sic_family_free(SicFamilyHandle *family);

/**
 * Constructs the POVM of a family at parameter `t`. Fails with
 * `INVALID_ARGUMENT` for `t = 0` and `VERIFICATION_FAILED` outside the
 * admissible interval.
 */
SicStatus sic_povm_build(const SicFamilyHandle *family, double t, SicPovmHandle **out);

/**
 * Constructs the maximal-purity POVM of a basis with the positivity
 * convention (the basis sign is chosen so the selected `t` is positive).
 */
SicStatus sic_povm_build_max(const SicBasisHandle *basis, SicPovmHandle **out);

/**
 * Purity `a = Tr(P^2)` of the POVM.
 */
SicStatus sic_povm_purity(const SicPovmHandle *povm, double *out);

/**
 * Pairwise overlap `b = Tr(P_alpha P_beta)`, distinct pairs.
 */
SicStatus sic_povm_overlap(const SicPovmHandle *povm, double *out);

/**
 * Hilbert-space dimension `d`; 0 for a null handle.
 */
uintptr_t sic_povm_dim(const SicPovmHandle *povm);

/**
 * Serializes a POVM to JSON.
 */
SicStatus sic_povm_to_json(const SicPovmHandle *povm, char **out);

/**
 * Parses a POVM from its JSON form.
 */
SicStatus sic_povm_from_json(const char *json, SicPovmHandle **out);

/**
 * Runs the full property verification and returns the report as JSON.
 * The status reflects only mechanical failure; read `pass` in the report.
 */
SicStatus sic_povm_verify_json(const SicPovmHandle *povm, char **out);

/**
 * Serializes the dual frame of a POVM to JSON.
 */
SicStatus sic_povm_dual_json(const SicPovmHandle *povm, char **out);

void sic_povm_free(SicPovmHandle *povm);

/**
 * Runs the dimension scan and returns the CSV
 * (`d,t0,t1,t_m,ratio,a_tm`) as a string.
 */
SicStatus sic_scan_csv(uintptr_t d_min, uintptr_t d_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SICPOVM_H */
