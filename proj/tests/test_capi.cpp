#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "ortho/capi.h"

TEST_CASE("quad count through the C surface") {
  ortho_report* rep = nullptr;
  REQUIRE(ortho_run_quad_count(1, 0, -2, 1, 1, 1, &rep) == ORTHO_OK);
  REQUIRE(rep != nullptr);
  CHECK(ortho_report_num_rows(rep) == 1);
  double s = 0, pred = 0, ratio = 0;
  int64_t count = 0;
  REQUIRE(ortho_report_row(rep, 0, &s, &count, &pred, &ratio) == ORTHO_OK);
  CHECK(s == 1);
  CHECK(count == 2);
  const std::string csv = ortho_report_csv(rep);
  CHECK(csv.rfind("s,count,prediction,ratio\n", 0) == 0);
  CHECK(csv.find("1,2,") != std::string::npos);
  const std::string json = ortho_report_json(rep);
  CHECK(json.find("\"experiment\": \"quad-count\"") != std::string::npos);
  CHECK(ortho_report_row(rep, 5, &s, &count, &pred, &ratio) == ORTHO_ERR_INVALID);
  ortho_report_free(rep);
}

TEST_CASE("constants and error reporting") {
  double v = 0;
  REQUIRE(ortho_const_eval("huber", "g=2", &v) == ORTHO_OK);
  CHECK(v == doctest::Approx(0.25));
  CHECK(ortho_const_eval("made_up", "", &v) == ORTHO_ERR_INVALID);
  CHECK(std::string(ortho_last_error()).find("unknown constant") !=
        std::string::npos);
  CHECK(ortho_const_eval("huber", "", &v) == ORTHO_ERR_INVALID);
  double err = 1;
  int has = 0;
  REQUIRE(ortho_const_check("margulis", "n=2,vol=1.0471975511965976", &err,
                            &has) == ORTHO_OK);
  CHECK(has == 1);
  CHECK(err < 1e-12);
  REQUIRE(ortho_const_check("mertens", "", &err, &has) == ORTHO_OK);
  CHECK(has == 0);
  const char** names = nullptr;
  int n = 0;
  REQUIRE(ortho_const_names(&names, &n) == ORTHO_OK);
  CHECK(n >= 14);
}

TEST_CASE("invalid form surfaces as an invalid-argument status") {
  ortho_report* rep = nullptr;
  CHECK(ortho_run_quad_count(2, 0, -2, 10, 2, 1, &rep) == ORTHO_ERR_INVALID);
  CHECK(ortho_run_quad_count(1, 0, 2, 10, 2, 1, &rep) == ORTHO_ERR_INVALID);
  CHECK(ortho_run_cusp_bianchi(-15, 2, 2, &rep) == ORTHO_ERR_INVALID);
  CHECK(ortho_run_orbit_ball("nope", 2, 2, 1, &rep) == ORTHO_ERR_INVALID);
}

TEST_CASE("capacity errors map to their status code") {
  ortho_report* rep = nullptr;
  CHECK(ortho_run_orbit_ball("psl2z", 40, 1, 1, &rep) == ORTHO_ERR_CAPACITY);
}

TEST_CASE("quaternion self test") {
  char buf[160] = {0};
  REQUIRE(ortho_quat_selftest(buf, sizeof buf) == ORTHO_OK);
  CHECK(std::strlen(buf) > 10);
}

TEST_CASE("mertens and bianchi runs") {
  ortho_report* rep = nullptr;
  REQUIRE(ortho_run_cusp_mertens(10, 4, &rep) == ORTHO_OK);
  CHECK(ortho_report_num_rows(rep) == 4);
  double c = 0, d = 0;
  REQUIRE(ortho_report_fit(rep, &c, &d) == ORTHO_OK);
  CHECK(c > 0.25);
  CHECK(c < 0.36);
  ortho_report_free(rep);
  REQUIRE(ortho_run_cusp_bianchi(-4, 4, 4, &rep) == ORTHO_OK);
  CHECK(ortho_report_num_rows(rep) == 4);
  ortho_report_free(rep);
}
