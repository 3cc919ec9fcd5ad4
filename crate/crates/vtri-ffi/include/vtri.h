/* C interface for the vtri exact triangulation toolkit.
 *
 * Objects cross the boundary as opaque handles. Every fallible call
 * returns a status code from the VTRI_* list below; the message for the
 * most recent failure on the calling thread is available through
 * vtri_last_error(). Strings returned through out-parameters are owned
 * by the caller and must be released with vtri_string_free().
 */

#ifndef VTRI_H
#define VTRI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define VTRI_OK 0           /* success */
#define VTRI_ERR_CHECK 1    /* a mathematical check or precondition failed */
#define VTRI_ERR_PARSE 2    /* input text could not be parsed or resolved */
#define VTRI_ERR_RESOURCE 3 /* a configured resource budget was exhausted */
#define VTRI_ERR_ARGUMENT 4 /* null pointer or non-UTF-8 string argument */
#define VTRI_ERR_PANIC 5    /* internal panic; handle state is unchanged */

/* Opaque handle to an exact scalar in the ordered field Q(epsilon). */
typedef struct vtri_scalar vtri_scalar;

/* Opaque handle to a parsed scene document. */
typedef struct vtri_scene vtri_scene;

/* Message from the most recent failing call on this thread. The pointer
 * stays valid until the next failing call on the same thread. */
const char *vtri_last_error(void);

/* Releases a string returned through an out-parameter. */
void vtri_string_free(char *s);

/* --- Scalars ---------------------------------------------------------- */

/* Parses a scalar literal such as "(1 + 2*e)/(1 - e)". */
int vtri_scalar_parse(const char *text, vtri_scalar **out);

/* Builds the rational scalar num/den. Fails when den is zero. */
int vtri_scalar_from_ratio(int64_t num, int64_t den, vtri_scalar **out);

/* Builds the positive infinitesimal generator epsilon. */
int vtri_scalar_epsilon(vtri_scalar **out);

void vtri_scalar_free(vtri_scalar *s);

int vtri_scalar_add(const vtri_scalar *a, const vtri_scalar *b, vtri_scalar **out);
int vtri_scalar_sub(const vtri_scalar *a, const vtri_scalar *b, vtri_scalar **out);
int vtri_scalar_mul(const vtri_scalar *a, const vtri_scalar *b, vtri_scalar **out);

/* Fails with VTRI_ERR_CHECK when b is zero. */
int vtri_scalar_div(const vtri_scalar *a, const vtri_scalar *b, vtri_scalar **out);

int vtri_scalar_neg(const vtri_scalar *a, vtri_scalar **out);

/* Fails with VTRI_ERR_CHECK when a is zero. */
int vtri_scalar_inv(const vtri_scalar *a, vtri_scalar **out);

/* Writes -1, 0, or 1 according to the field order. */
int vtri_scalar_cmp(const vtri_scalar *a, const vtri_scalar *b, int *out);

/* Writes the epsilon-adic valuation. *finite is 0 exactly when the
 * scalar is zero (valuation plus infinity), in which case *val is 0. */
int vtri_scalar_valuation(const vtri_scalar *a, int64_t *val, int *finite);

/* Writes the standard part as a rational literal. Fails with
 * VTRI_ERR_CHECK when the scalar is infinite. */
int vtri_scalar_standard_part(const vtri_scalar *a, char **out);

/* Writes the canonical text form, which round-trips through
 * vtri_scalar_parse(). */
int vtri_scalar_to_string(const vtri_scalar *a, char **out);

/* --- Scenes ----------------------------------------------------------- */

/* Parses a scene document (the same line-oriented format the vtri
 * command-line tool reads). */
int vtri_scene_parse(const char *text, vtri_scene **out);

void vtri_scene_free(vtri_scene *s);

/* Validates every complex declared in the scene and writes a one-line
 * summary per complex. */
int vtri_scene_validate(const vtri_scene *scene, char **report);

/* V-triangulates the first complex in the scene compatibly with every
 * declared subset, runs the independent verifier, and writes the
 * verification report followed by the triangulated complex as a scene
 * document. Returns VTRI_ERR_CHECK when any verifier line fails. */
int vtri_scene_triangulate(const vtri_scene *scene, char **report);

#ifdef __cplusplus
}
#endif

#endif /* VTRI_H */
