/* C interface for the zetaprod corrected-product library.
 *
 * Maintained by hand alongside crates/zetaprod-ffi/src/lib.rs; the crate's
 * test suite checks that every exported symbol and status code listed here
 * matches the Rust side.
 *
 * All functions return a ZP_* status code and write results through out
 * pointers. No function throws or aborts across the boundary.
 */

#ifndef ZETAPROD_H
#define ZETAPROD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    ZP_OK = 0,
    ZP_ERR_NULL = 1,          /* a required pointer argument was NULL */
    ZP_ERR_DOMAIN = 2,        /* argument outside the function's domain */
    ZP_ERR_NUMERICAL = 3,     /* evaluation failed to produce a value */
    ZP_ERR_UNKNOWN_ID = 4,    /* no registry check with that id */
    ZP_ERR_BUFFER = 5,        /* output buffer too small */
    ZP_ERR_INVALID_ENUM = 6   /* method selector out of range */
};

/* pi evaluation strategies for zp_pi_from_product. */
enum {
    ZP_METHOD_NAIVE = 0,
    ZP_METHOD_TAIL_CORRECTED = 1,
    ZP_METHOD_EXTRAPOLATED = 2,
    ZP_METHOD_SERIES = 3
};

/* Opaque cache of zeta values shared across calls. */
typedef struct ZpCache ZpCache;

/* Result of one identity check; pass is 1 or 0. */
typedef struct ZpCheck {
    double lhs;
    double rhs;
    double abs_err;
    double rel_err;
    double tolerance;
    double elapsed_ms;
    uint64_t terms;
    int32_t pass;
} ZpCheck;

/* max_k = 0 selects the default depth. Returns NULL on failure. */
ZpCache *zp_cache_new(uint32_t max_k);

/* Frees a handle from zp_cache_new; NULL is ignored. */
void zp_cache_free(ZpCache *cache);

/* Computes pi from the corrected product with ZP_METHOD_* `method` and
 * `terms` product terms (series depth for ZP_METHOD_SERIES). */
int32_t zp_pi_from_product(const ZpCache *cache, int32_t method,
                           uint64_t terms, double *out);

/* Scaled remainder integral R(y), defined for y >= 1. */
int32_t zp_r_of_y(double y, double *out);

/* Truncated series for log A(y) with k terms. */
int32_t zp_log_a_series(const ZpCache *cache, double y, uint32_t k,
                        double *out);

/* Runs the registry check named by NUL-terminated `id` at scale 1. A
 * failing comparison still returns ZP_OK with out->pass == 0. */
int32_t zp_verify_check(const ZpCache *cache, const char *id, ZpCheck *out);

/* Number of checks in the registry. */
size_t zp_registry_len(void);

/* Copies the NUL-terminated id at `index` into buf (capacity cap). */
int32_t zp_registry_id(size_t index, char *buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* ZETAPROD_H */
