#ifndef BODYGRAPHS_BODYGRAPHS_H
#define BODYGRAPHS_BODYGRAPHS_H

/* C interface to the bodygraphs library.  Every call returns a bg_status;
   on failure bg_last_error() holds a message for the calling thread.
   Strings handed out through char** parameters are owned by the caller and
   released with bg_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BG_API __declspec(dllexport)
#else
#define BG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_PARSE = 1,
  BG_ERR_INVALID_BODY = 2,
  BG_ERR_DEGENERATE_BODY = 3,
  BG_ERR_SINGULAR_MAP = 4,
  BG_ERR_NOT_COMPATIBLE = 5,
  BG_ERR_PAIR_TOO_CLOSE = 6,
  BG_ERR_NOT_TOUCHING = 7,
  BG_ERR_MANY_SOLUTIONS = 8,
  BG_ERR_NOT_RIGID = 9,
  BG_ERR_BEAM_TOO_SHORT = 10,
  BG_ERR_ATTACH_FAILED = 11,
  BG_ERR_DEPTH_TOO_SMALL = 12,
  BG_ERR_NO_CONVERGENCE = 13,
  BG_ERR_NOT_URTC = 14,
  BG_ERR_IO = 15,
  BG_ERR_INVALID_ARGUMENT = 16,
  BG_ERR_INTERNAL = 17
} bg_status;

typedef enum bg_graph_kind {
  BG_GRAPH_CONTACT = 0,
  BG_GRAPH_UNIT_DISTANCE = 1,
  BG_GRAPH_INTERSECTION = 2,
  BG_GRAPH_EPS_OVERLAP = 3
} bg_graph_kind;

typedef enum bg_relation { BG_DISJOINT = 0, BG_TOUCH = 1, BG_OVERLAP = 2 } bg_relation;

typedef struct bg_body bg_body;
typedef struct bg_certificate bg_certificate;
typedef struct bg_contact_witness bg_contact_witness;

BG_API const char* bg_version(void);
BG_API const char* bg_status_name(bg_status status);
BG_API const char* bg_last_error(void);
BG_API void bg_string_free(char* s);

/* bodies */

typedef struct bg_body_options {
  int segments;      /* > 0 overrides the spec's segment count */
  double tolerance;  /* > 0 overrides the spec's tolerance */
  int symmetrize;    /* 1 forces symmetrization, 0 keeps the spec's flag */
} bg_body_options;

BG_API void bg_body_options_init(bg_body_options* opts);
/* opts may be NULL */
BG_API bg_status bg_body_from_json(const char* json, const bg_body_options* opts, bg_body** out);
/* xy holds n points; symmetrize != 0 takes the halved difference body */
BG_API bg_status bg_body_from_points(const double* xy, size_t n, int symmetrize, double tolerance, bg_body** out);
/* m = {a11, a12, a21, a22} */
BG_API bg_status bg_body_apply(const bg_body* body, const double m[4], bg_body** out);
BG_API void bg_body_free(bg_body* body);
BG_API bg_status bg_body_to_json(const bg_body* body, char** out);
BG_API size_t bg_body_vertex_count(const bg_body* body);
/* writes 2 * count doubles; capacity counts doubles */
BG_API bg_status bg_body_vertices(const bg_body* body, double* xy, size_t capacity);
BG_API bg_status bg_body_norm(const bg_body* body, double x, double y, double* out);
BG_API bg_status bg_body_radial(const bg_body* body, double theta, double out[2]);
BG_API bg_status bg_body_signature(const bg_body* body, double theta, double* out);
BG_API bg_status bg_body_relation(const bg_body* body, double x, double y, bg_relation* out);
/* report may be NULL */
BG_API bg_status bg_body_urtc(const bg_body* body, int* holds, char** report);
/* "theta,rho" rows over [0, pi) */
BG_API bg_status bg_body_signature_csv(const bg_body* body, size_t samples, char** out);

/* graphs; points JSON is {"points": [[x, y], ...]} and may carry candidate "edges" */

BG_API bg_status bg_graph_build(const bg_body* body, const char* points_json, bg_graph_kind kind, double epsilon,
                                char** graph_json);
/* re-checks a graph JSON against the body; pass is 1 when every edge and non-edge obeys its kind */
BG_API bg_status bg_graph_verify(const bg_body* body, const char* graph_json, int* pass, char** report);
BG_API bg_status bg_graph_dot(const char* graph_json, char** out);
BG_API bg_status bg_graph_svg(const bg_body* body, const char* graph_json, char** out);
/* out = {left.x, left.y, right.x, right.y} */
BG_API bg_status bg_third_points(const bg_body* body, const double v1[2], const double v2[2], double out[4]);
/* out = {e1.x, e1.y, e2.x, e2.y} */
BG_API bg_status bg_lattice(const bg_body* body, double theta, double out[4]);

/* separation */

typedef struct bg_separation_options {
  int max_level;
  double margin;
  int seeds;
  int iterations;
  uint64_t rng_seed;
} bg_separation_options;

BG_API void bg_separation_options_init(bg_separation_options* opts);
BG_API bg_status bg_separate(const bg_body* a, const bg_body* b, const bg_separation_options* opts, bg_certificate** out);
BG_API bg_status bg_certificate_from_json(const char* json, bg_certificate** out);
BG_API void bg_certificate_free(bg_certificate* cert);
BG_API int bg_certificate_separated(const bg_certificate* cert);
BG_API double bg_certificate_epsilon(const bg_certificate* cert);
BG_API double bg_certificate_residual(const bg_certificate* cert);
BG_API int bg_certificate_level(const bg_certificate* cert);
BG_API bg_status bg_certificate_to_json(const bg_certificate* cert, char** out);
/* recomputes the deviations of the stored map; pass when they reproduce the stored values */
BG_API bg_status bg_certificate_verify(const bg_body* a, const bg_body* b, const bg_certificate* cert, int* pass,
                                       char** report);

/* contact witness */

typedef struct bg_witness_options {
  int64_t k;           /* 0 selects ceil(180 / epsilon) */
  int full_theta;      /* 1 builds one beam per certificate direction */
  size_t top_angles;   /* beams otherwise, by deviation */
  double lattice_theta;
} bg_witness_options;

BG_API void bg_witness_options_init(bg_witness_options* opts);
BG_API bg_status bg_contact_witness_build(const bg_body* a, const bg_certificate* cert, const bg_witness_options* opts,
                                          bg_contact_witness** out);
BG_API void bg_contact_witness_free(bg_contact_witness* w);
BG_API int64_t bg_contact_witness_k(const bg_contact_witness* w);
BG_API size_t bg_contact_witness_point_count(const bg_contact_witness* w);
BG_API bg_status bg_contact_witness_to_json(const bg_contact_witness* w, char** out);
BG_API bg_status bg_contact_witness_svg(const bg_contact_witness* w, char** out);
/* rigidity report against b mapped by the certificate's map; ok when the
   witness is compatible, lattice-unique on its rings and the beam identity holds */
BG_API bg_status bg_contact_witness_verify(const bg_contact_witness* w, const bg_body* b, const bg_certificate* cert,
                                           int* ok, int* separated_by_rigidity, char** report);
BG_API bg_status bg_minimal_rigid_k(const bg_body* a, double theta, double epsilon, int64_t* out);

/* intersection gadgets */

typedef struct bg_intersection_options {
  int64_t k;
  int drawings;          /* perturbed drawings per check */
  double eta;            /* starting perturbation size */
  uint64_t seed;
  const char* host_json; /* contact drawing {"points", "edges"}; NULL runs K2 and K3 */
  int64_t schedule[8];
  size_t schedule_len;
} bg_intersection_options;

BG_API void bg_intersection_options_init(bg_intersection_options* opts);
/* gadget and svg may be NULL; the gadget JSON is large */
BG_API bg_status bg_intersection_run(const bg_body* body, const bg_intersection_options* opts, int* pass, char** report,
                                     char** gadget, char** svg);
/* nested-cycle gadget alone; packing != 0 selects packing-bound tails */
BG_API bg_status bg_nested_build(const bg_body* body, int64_t k, int packing, int* triangle_free, int* nested,
                                 char** gadget);

#ifdef __cplusplus
}
#endif

#endif
