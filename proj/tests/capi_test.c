/* exercises the shared library through its C header only */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bodygraphs/bodygraphs.h"

static int failures = 0;

#define EXPECT(cond)                                                    \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,    \
              bg_last_error());                                         \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

static bg_body* body(const char* json) {
  bg_body* b = NULL;
  EXPECT(bg_body_from_json(json, NULL, &b) == BG_OK);
  return b;
}

int main(void) {
  bg_body* disk = body("{\"type\":\"disk\",\"segments\":256}");
  bg_body* hex = body("{\"type\":\"regular\",\"n\":6}");
  bg_body* square = body("{\"type\":\"polygon\",\"vertices\":[[1,1],[-1,1],[-1,-1],[1,-1]]}");
  if (!disk || !hex || !square) return 1;

  EXPECT(strlen(bg_version()) > 0);
  EXPECT(strcmp(bg_status_name(BG_ERR_NOT_URTC), "NotUrtc") == 0);

  /* errors come back as codes, not crashes */
  bg_body* bad = NULL;
  EXPECT(bg_body_from_json("{", NULL, &bad) == BG_ERR_PARSE);
  EXPECT(bad == NULL);
  EXPECT(strlen(bg_last_error()) > 0);
  const double odd[6] = {0, 0, 1, 0, 0, 1};
  EXPECT(bg_body_from_points(odd, 3, 0, 0, &bad) == BG_ERR_INVALID_BODY);
  EXPECT(bg_body_from_points(odd, 3, 1, 0, &bad) == BG_OK);
  EXPECT(bg_body_vertex_count(bad) == 6);
  bg_body_free(bad);

  double n = 0;
  EXPECT(bg_body_norm(hex, 1, 0, &n) == BG_OK && fabs(n - 1) < 1e-12);
  EXPECT(bg_body_norm(square, 1, 1, &n) == BG_OK && fabs(n - 1) < 1e-12);
  bg_relation rel;
  EXPECT(bg_body_relation(hex, 2, 0, &rel) == BG_OK && rel == BG_TOUCH);
  EXPECT(bg_body_relation(hex, 1, 0, &rel) == BG_OK && rel == BG_OVERLAP);

  int holds = -1;
  char* report = NULL;
  EXPECT(bg_body_urtc(hex, &holds, &report) == BG_OK && holds == 1);
  bg_string_free(report);
  EXPECT(bg_body_urtc(square, &holds, &report) == BG_OK && holds == 0);
  bg_string_free(report);

  double lat[4];
  EXPECT(bg_lattice(hex, 0, lat) == BG_OK && fabs(lat[0] - 2) < 1e-9 && fabs(lat[3] - sqrt(3.0)) < 1e-9);
  const double v1[2] = {0, 0}, v2[2] = {2, 0};
  double third[4];
  EXPECT(bg_third_points(square, v1, v2, third) == BG_ERR_MANY_SOLUTIONS);

  /* graph build and verify */
  char* graph = NULL;
  EXPECT(bg_graph_build(hex, "{\"points\":[[0,0],[2,0],[1,1.7320508075688772],[9,9]]}", BG_GRAPH_CONTACT, 0,
                        &graph) == BG_OK);
  int pass = 0;
  EXPECT(bg_graph_verify(hex, graph, &pass, &report) == BG_OK && pass == 1);
  bg_string_free(report);
  char* dot = NULL;
  EXPECT(bg_graph_dot(graph, &dot) == BG_OK && strstr(dot, "--") != NULL);
  bg_string_free(dot);
  bg_string_free(graph);
  EXPECT(bg_graph_build(disk, "{\"points\":[[0,0],[1,0]]}", BG_GRAPH_CONTACT, 0, &graph) == BG_ERR_NOT_COMPATIBLE);

  /* separation and its certificate */
  bg_certificate* cert = NULL;
  EXPECT(bg_separate(disk, hex, NULL, &cert) == BG_OK);
  EXPECT(bg_certificate_separated(cert) == 1);
  EXPECT(bg_certificate_epsilon(cert) > 0.02);
  char* cjson = NULL;
  EXPECT(bg_certificate_to_json(cert, &cjson) == BG_OK);
  bg_certificate* back = NULL;
  EXPECT(bg_certificate_from_json(cjson, &back) == BG_OK);
  EXPECT(bg_certificate_verify(disk, hex, back, &pass, &report) == BG_OK && pass == 1);
  bg_string_free(report);
  bg_certificate_free(back);
  bg_string_free(cjson);

  bg_certificate* same = NULL;
  EXPECT(bg_separate(hex, hex, NULL, &same) == BG_OK && bg_certificate_separated(same) == 0);

  /* contact witness at a small k */
  bg_witness_options wo;
  bg_witness_options_init(&wo);
  wo.k = 24;
  bg_contact_witness* w = NULL;
  EXPECT(bg_contact_witness_build(disk, cert, &wo, &w) == BG_OK);
  EXPECT(bg_contact_witness_k(w) == 24);
  EXPECT(bg_contact_witness_point_count(w) > 0);
  int ok = 0, rigid = -1;
  EXPECT(bg_contact_witness_verify(w, hex, cert, &ok, &rigid, &report) == BG_OK && ok == 1 && rigid == 0);
  bg_string_free(report);
  bg_contact_witness_free(w);
  EXPECT(bg_contact_witness_build(disk, same, &wo, &w) == BG_ERR_INVALID_ARGUMENT);
  EXPECT(bg_contact_witness_build(square, cert, &wo, &w) == BG_ERR_NOT_URTC);

  /* intersection gadgets */
  int tf = 0, nested = 0;
  EXPECT(bg_nested_build(disk, 2, 0, &tf, &nested, NULL) == BG_OK && tf == 1 && nested == 1);
  bg_intersection_options io;
  bg_intersection_options_init(&io);
  io.k = 7;
  io.drawings = 1;
  io.schedule[0] = 8;
  io.schedule[1] = 16;
  io.schedule_len = 2;
  EXPECT(bg_intersection_run(disk, &io, &pass, &report, NULL, NULL) == BG_OK && pass == 1);
  bg_string_free(report);
  io.k = 6;
  EXPECT(bg_intersection_run(disk, &io, &pass, &report, NULL, NULL) == BG_ERR_INVALID_ARGUMENT);

  bg_certificate_free(same);
  bg_certificate_free(cert);
  bg_body_free(disk);
  bg_body_free(hex);
  bg_body_free(square);
  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
