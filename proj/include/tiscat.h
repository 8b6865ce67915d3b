/* tiscat — translation-invariant scattering transform + encoding/decoding
 * pipeline. C API: plain buffers, opaque handles, integer status codes.
 *
 * Conventions:
 *   - return value: 0 ok, 1 invalid argument / validation error, 2 runtime error.
 *     On failure tsc_last_error() returns a message (thread-local).
 *   - images are width*height doubles in raster-scan order (row y outer, x inner).
 *   - matrices are rows*cols doubles, row-major.
 *   - buffers returned through double** / int** / char*** are allocated by the
 *     library; release with tsc_free / tsc_free_strings.
 */
#ifndef TISCAT_H
#define TISCAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TSC_OK 0
#define TSC_EINVAL 1
#define TSC_ERUNTIME 2

/* Last error message for the calling thread; valid until the next failing call. */
const char* tsc_last_error(void);

void tsc_free(void* p);
void tsc_free_strings(char** strings, int count);

/* ---- filter bank ---- */

typedef struct tsc_filter_params {
  int J;          /* scales, j = 0..J-1 */
  int L;          /* orientations over 180 degrees */
  int width, height;
  double sigma0;  /* mother envelope width, pixels */
  double xi0;     /* mother center frequency, rad/px */
  double slant;   /* envelope anisotropy; 0 = default (4/L) */
} tsc_filter_params;

/* Fills *params with the library defaults (J=5, L=4, 128x128). */
int tsc_filter_params_default(tsc_filter_params* params);

typedef struct tsc_filterbank tsc_filterbank;

int tsc_filterbank_create(const tsc_filter_params* params, tsc_filterbank** out);
void tsc_filterbank_destroy(tsc_filterbank* fb);
int tsc_filterbank_count(const tsc_filterbank* fb, int* count);
int tsc_filterbank_filter_info(const tsc_filterbank* fb, int index, int* j, double* gamma_deg);
/* Complex spectrum of filter `index` into caller buffers of width*height. */
int tsc_filterbank_spectrum(const tsc_filterbank* fb, int index, double* re, double* im);
/* Littlewood-Paley sum A(w) = sum_i |psi_i(w)|^2 + |psi_i(-w)|^2 over the
 * annulus r_lo <= |w| <= r_hi (rad/px); returns its min and max. */
int tsc_filterbank_littlewood_paley(const tsc_filterbank* fb, double r_lo, double r_hi,
                                    double* a_min, double* a_max);

/* ---- scattering ---- */

int tsc_feature_count(const tsc_filter_params* params, int M, int* count);
/* Canonical path labels ("m0", "m1_j0g1", "m2_j0g1_j2g0", ...). */
int tsc_feature_labels(const tsc_filter_params* params, int M, char*** labels, int* count);
int tsc_scatter(const tsc_filter_params* params, int M, const double* image, int width,
                int height, double* features /* feature_count */);
int tsc_batch_scatter(const tsc_filter_params* params, int M, const double* images,
                      int n_images, int width, int height, int threads,
                      double* features /* n_images x feature_count */);
/* Fraction of layer-2 energy on pruned paths (j2 <= j1); M=2 diagnostics. */
int tsc_energy_profile(const tsc_filter_params* params, const double* image, int width,
                       int height, double* e_leq);

/* ---- encoding ---- */

int tsc_hrf_double_gamma(double t_seconds, double* value);
/* Simplified GLM: impulse-at-onset regressors convolved with the HRF plus an
 * intercept; OLS betas. bold is t_len x n_voxels; events are
 * (event_image[i], event_onset[i]); betas out is n_images x n_voxels. */
int tsc_glm_betas(const double* bold, int t_len, int n_voxels, int n_images,
                  const int* event_image, const double* event_onset, int n_events, double tr,
                  double* betas);
int tsc_ridge_fit(const double* X, int n, int p, const double* y, double lambda,
                  double* weights /* p */, double* intercept);
int tsc_r2_score(const double* y_true, const double* y_pred, int n, double baseline, double* r2);
int tsc_count_unique(const int* values, int n, int* count);
/* Nested leave-one-session-out CV ridge encoding. X: n x p, Y: n x n_voxels,
 * session: n ids. Outputs (caller buffers): fold_r2 and fold_lambda are
 * n_sessions x n_voxels, mean_r2 is n_voxels; any may be NULL. */
int tsc_nested_cv_encode(const double* X, int n, int p, const double* Y, int n_voxels,
                         const int* session, const double* lambda_grid, int n_grid,
                         int shared_lambda, int threads, double* fold_r2, double* fold_lambda,
                         double* mean_r2);

/* ---- stats ---- */

/* Wilcoxon signed-rank on paired samples. exact=1 if the p-value came from
 * full sign-flip enumeration. */
int tsc_wilcoxon(const double* a, const double* b, int n, double* w_statistic,
                 double* p_two_sided, int* n_used, int* exact);

#define TSC_VOXEL_RED 0
#define TSC_VOXEL_BLUE 1
#define TSC_VOXEL_UNLABELED 2

/* delta = scores2 - scores1; labels per voxel; scatter_voxels gets the indices
 * of the top_k voxels by scores1 (n_scatter = min(top_k, n)). delta, labels,
 * scatter_voxels may be NULL. */
int tsc_compare_models(const double* scores1, const double* scores2, int n, double threshold,
                       int top_k, double* delta, int* labels, int* scatter_voxels,
                       int* n_scatter);

/* ---- decoding ---- */

/* Leave-one-block-out OVR logistic decoding with nested lambda selection.
 * fold_accuracy/flagged are n_blocks long (unique block ids, ascending);
 * flagged[i]=1 when the fold was scored on training-seen classes only. */
int tsc_decode_cv(const double* activity, int n, int n_voxels, const int* labels,
                  const int* blocks, const double* lambda_grid, int n_grid, int threads,
                  double* fold_accuracy, int* flagged, double* mean_accuracy);

/* ---- synthetic data ---- */

/* Texture from a JSON spec, e.g.
 *   {"kind":"gaussian_field","width":128,"height":128,"alpha":1.0,"seed":3}
 *   {"kind":"bars","n_bars":40,"length":30,"width":2,
 *    "angles_deg":[0,45,90,135],"seed":3}
 *   {"kind":"phase_scrambled_of","seed":9,"source":{...}} */
int tsc_gen_texture(const char* spec_json, double** image, int* width, int* height);
int tsc_phase_scramble(const double* image, int width, int height, uint64_t seed, double* out);

#define TSC_PLANT_LAYER1 0
#define TSC_PLANT_LAYER2 1
#define TSC_PLANT_MIXED 2
#define TSC_PLANT_NULL 3

/* Plants linear voxel signal on z-scored features. n_low = number of leading
 * layer-0/1 columns. snr = var(signal)/var(noise); pass INFINITY for
 * noiseless. Outputs (caller buffers, any may be NULL): responses n x
 * n_voxels, beta p x n_voxels, noise_sd n_voxels. */
int tsc_gen_voxels(const double* features, int n, int p, int n_low, const int* kinds,
                   int n_voxels, double snr, uint64_t seed, double* responses, double* beta,
                   double* noise_sd);
int tsc_gen_session_labels(int n_images, int n_sessions, int blocks_per_session,
                           int* session /* n_images */, int* block /* n_images */);

/* ---- file I/O ---- */

/* Raster container ("SCATRAS1", u32 LE dims, float32 payload); read also
 * ingests 8-bit binary PGM. */
int tsc_write_raster_file(const char* path, const double* image, int width, int height);
int tsc_read_raster_file(const char* path, double** image, int* width, int* height);
/* Matrix container ("SCATMAT1", u32 LE dims, float64 payload). */
int tsc_write_matrix_file(const char* path, const double* data, int rows, int cols);
int tsc_read_matrix_file(const char* path, double** data, int* rows, int* cols);
/* CSV with 9-significant-digit floats; col_labels may be NULL (c0,c1,...);
 * with_row_ids adds a leading image_id column. */
int tsc_write_matrix_csv(const char* path, const double* data, int rows, int cols,
                         const char* const* col_labels, int with_row_ids);
int tsc_read_matrix_csv(const char* path, double** data, int* rows, int* cols);
int tsc_write_sessions_csv(const char* path, const int* session, const int* block, int n);
int tsc_read_sessions_csv(const char* path, int** session, int** block, int* n);
int tsc_write_labels_csv(const char* path, const int* labels, int n);
int tsc_read_labels_csv(const char* path, int** labels, int* n);

#ifdef __cplusplus
}
#endif

#endif /* TISCAT_H */
