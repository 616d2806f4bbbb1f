/* The C interface, exercised from C. */
#include <stdio.h>
#include <string.h>

#include "cad/cad.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  cad_formula* f = NULL;
  cad_tree* t = NULL;
  char* s = NULL;
  size_t total = 0, depth = 0, per[2] = {0, 0}, cells = 0, bad = 0;
  int ell = -1, value = -1, truth = -1;
  cad_mode mode;

  EXPECT(cad_formula_parse("x^2 + y^2 - 1 = 0 and x > 0", "y,x", &f) == CAD_OK);
  EXPECT(cad_formula_to_string(f, &s) == CAD_OK);
  EXPECT(strcmp(s, "x^2 + y^2 - 1 = 0 and x > 0") == 0);
  cad_string_free(s);

  EXPECT(cad_build(f, "y,x", CAD_MODE_SI, 0, &t) == CAD_OK);
  EXPECT(cad_tree_count(t, &total, per, 2, &depth, &ell) == CAD_OK);
  EXPECT(total == 19 && depth == 2 && ell == 0 && per[0] == 5);
  {
    const char* inside[] = {"3/5", "4/5"};
    const char* outside[] = {"0", "0"};
    EXPECT(cad_tree_truth_at(t, inside, 2, &truth) == CAD_OK && truth == 1);
    EXPECT(cad_tree_truth_at(t, outside, 2, &truth) == CAD_OK && truth == 0);
    EXPECT(cad_tree_truth_at(t, outside, 1, &truth) == CAD_ERR_INVALID);
  }
  cad_tree_free(t);
  t = NULL;

  EXPECT(cad_mode_parse("ec-res", &mode) == CAD_OK && mode == CAD_MODE_EC_RES);
  EXPECT(cad_mode_parse("bogus", &mode) == CAD_ERR_INVALID);
  EXPECT(cad_build(f, NULL, mode, 0, &t) == CAD_OK);
  EXPECT(cad_tree_count(t, &total, NULL, 0, NULL, &ell) == CAD_OK && ell == 1);
  EXPECT(cad_tree_json(t, &s) == CAD_OK && strstr(s, "\"provenance\"") != NULL);
  cad_string_free(s);
  EXPECT(cad_tree_plan_json(t, &s) == CAD_OK && strstr(s, "\"ell\"") != NULL);
  cad_string_free(s);
  cad_tree_free(t);
  t = NULL;

  EXPECT(cad_build(f, "y,x", CAD_MODE_SI, 5, &t) == CAD_ERR_CAP && t == NULL);
  EXPECT(strstr(cad_last_error(), "cap") != NULL);
  EXPECT(cad_build_designated(f, "y,x", "(y - 1)*(x - 1)", 0, &t) == CAD_ERR_PRIMITIVITY);
  EXPECT(cad_build_designated(f, "y,x", "x^2 + y^2 - 1", 0, &t) == CAD_OK);
  EXPECT(cad_tree_count(t, &total, NULL, 0, NULL, NULL) == CAD_OK && total == 13);
  cad_tree_free(t);
  t = NULL;
  cad_formula_free(f);
  f = NULL;

  EXPECT(cad_formula_parse("x^2 + = 1", NULL, &f) == CAD_ERR_PARSE && f == NULL);
  EXPECT(strstr(cad_last_error(), "position") != NULL);
  EXPECT(cad_formula_parse("x = 1", "y", &f) == CAD_ERR_PARSE);
  EXPECT(cad_formula_parse(NULL, NULL, &f) == CAD_ERR_INVALID);

  EXPECT(cad_formula_parse("z*x - y = 0 and z*y - x > 0", "x,y,z", &f) == CAD_OK);
  EXPECT(cad_build(f, NULL, CAD_MODE_SI, 0, &t) == CAD_ERR_WELL_ORIENTED);
  cad_formula_free(f);
  f = NULL;

  EXPECT(cad_formula_parse("forall y. exists x. x^2 + y^2 - 1 = 0", "y,x", &f) == CAD_OK);
  EXPECT(cad_decide(f, NULL, CAD_MODE_SI, 0, &value, &cells) == CAD_OK && value == 0 && cells == 13);
  cad_formula_free(f);
  f = NULL;

  EXPECT(cad_dh_generate(1, "t^2", "product", &f) == CAD_OK);
  EXPECT(cad_formula_order(f, &s) == CAD_OK && strcmp(s, "x0,y0,z1,x1,y1") == 0);
  cad_string_free(s);
  EXPECT(cad_primitivity_report(f, "x0,y0,x1,y1,z1", &s, &bad) == CAD_OK && bad == 3);
  cad_string_free(s);
  cad_formula_free(f);
  f = NULL;
  EXPECT(cad_dh_generate(1, "t^2", "sideways", &f) == CAD_ERR_INVALID);

  EXPECT(cad_bound_eq1(3, 1, 3, &s) == CAD_OK && strcmp(s, "2239488") == 0);
  cad_string_free(s);
  EXPECT(cad_gb("lex", "y,x,z", "z^2 - x; z^2 - y", &s) == CAD_OK && strstr(s, "x - y;") != NULL);
  cad_string_free(s);
  EXPECT(cad_version() != NULL);

  printf("%s (%d failures)\n", failures ? "FAIL" : "ok", failures);
  return failures ? 1 : 0;
}
