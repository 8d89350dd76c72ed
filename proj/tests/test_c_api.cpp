#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "spinlab/spinlab.h"

namespace {

std::string take(spinlab_text* t) {
  std::string s(spinlab_text_data(t), spinlab_text_size(t));
  spinlab_text_free(t);
  return s;
}

const char* kField7 = SPINLAB_FIELDS_DIR "/simplest-cubic-7.cfg";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(spinlab_version()) > 0);
  CHECK(std::string(spinlab_status_name(SPINLAB_OK)) == "OK");
  for (int s = SPINLAB_E_INVALID_ARGUMENT; s <= SPINLAB_E_INTERNAL; ++s)
    CHECK(std::strlen(spinlab_status_name(static_cast<spinlab_status>(s))) > 0);
  CHECK(std::string(spinlab_status_name(SPINLAB_E_EVEN_DEGREE)) != std::string(spinlab_status_name(SPINLAB_E_BAD_UNIT)));
}

TEST_CASE("density entry points") {
  spinlab_text *plus = nullptr, *minus = nullptr;
  REQUIRE(spinlab_s_pair(7, 1, &plus, &minus) == SPINLAB_OK);
  CHECK(take(plus) == "15");
  CHECK(take(minus) == "7");
  CHECK(spinlab_s_pair(9, 1, &plus, &minus) == SPINLAB_E_INVALID_ARGUMENT);
  CHECK(std::strlen(spinlab_last_error()) > 0);
  CHECK(spinlab_s_pair(4, 0, &plus, &minus) == SPINLAB_E_EVEN_DEGREE);
  CHECK(spinlab_s_pair(3, 0, nullptr, &minus) == SPINLAB_E_INVALID_ARGUMENT);

  const int rows[] = {3, 15};
  spinlab_text* t = nullptr;
  REQUIRE(spinlab_density_table(rows, 2, &t) == SPINLAB_OK);
  std::string s = take(t);
  CHECK(s.find("3 | 1/8 | 3/8 | 1/4\n") != std::string::npos);
  CHECK(s.find("47/524288") != std::string::npos);
  CHECK(spinlab_last_error() == std::string());

  REQUIRE(spinlab_density_report(5, &t) == SPINLAB_OK);
  CHECK(take(t).find("d(F|S) = 3/64") != std::string::npos);
  CHECK(spinlab_text_data(nullptr) == std::string());
  spinlab_text_free(nullptr);
}

TEST_CASE("field handles") {
  spinlab_field* f = nullptr;
  REQUIRE(spinlab_field_load_file(kField7, &f) == SPINLAB_OK);
  CHECK(spinlab_field_degree(f) == 3);
  CHECK(std::string(spinlab_field_name(f)) == "simplest-cubic-7");

  spinlab_kernel_report rep;
  spinlab_text* text = nullptr;
  REQUIRE(spinlab_verify_kernel(f, &rep, &text) == SPINLAB_OK);
  CHECK(rep.agree == 1);
  CHECK(rep.formula_plus == 1);
  CHECK(rep.formula_minus == 3);
  CHECK(rep.star_plus == 1);
  CHECK(rep.bmap_minus == 3);
  CHECK(rep.minus_one_symbol == -1);
  CHECK(take(text).find("AGREE") != std::string::npos);
  CHECK(spinlab_verify_kernel(f, nullptr, nullptr) == SPINLAB_OK);

  int passed = 0;
  REQUIRE(spinlab_selfcheck(f, &passed, &text) == SPINLAB_OK);
  CHECK(passed == 1);
  take(text);
  spinlab_field_free(f);
  spinlab_field_free(nullptr);

  CHECK(spinlab_field_load_file("/nonexistent.cfg", &f) == SPINLAB_E_IO);
  CHECK(spinlab_field_load_text("n = 3\n", &f) == SPINLAB_E_CONFIG_SYNTAX);
  CHECK(std::string(spinlab_last_error()).find("missing") != std::string::npos);
  const char* even_h =
      "name = \"x\"\nn = 3\nf = [-1, -2, 1, 1]\nsigma = [-2, 0, 1]\nh = 4\nunit = [0, 1, 0]\n"
      "unit = [1, 1, 0]\ndisc_f = 49\n";
  CHECK(spinlab_field_load_text(even_h, &f) == SPINLAB_E_EVEN_CLASS_NUMBER);
  CHECK(spinlab_verify_kernel(nullptr, &rep, nullptr) == SPINLAB_E_INVALID_ARGUMENT);
}

TEST_CASE("sweep handles") {
  spinlab_field* f = nullptr;
  REQUIRE(spinlab_field_load_file(kField7, &f) == SPINLAB_OK);
  spinlab_sweep_options opts;
  spinlab_sweep_options_default(&opts);
  CHECK(opts.limit == 1000000);
  CHECK(opts.radius_multiplier == 4.0);
  opts.limit = 5000;
  opts.threads = 2;

  spinlab_sweep* s = nullptr;
  REQUIRE(spinlab_sweep_run(f, &opts, &s) == SPINLAB_OK);
  spinlab_tally t;
  spinlab_sweep_tally(s, &t);
  CHECK(t.violations == 0);
  CHECK(t.s_plus + t.s_minus > 100);
  CHECK(t.f_plus <= t.r_plus);
  spinlab_text* text = nullptr;
  REQUIRE(spinlab_sweep_report(s, &text) == SPINLAB_OK);
  CHECK(take(text).find("overall:") != std::string::npos);
  CHECK(spinlab_sweep_csv(s, &text) == SPINLAB_E_INVALID_ARGUMENT);
  spinlab_sweep_free(s);

  opts.emit_csv = 1;
  REQUIRE(spinlab_sweep_run(f, &opts, &s) == SPINLAB_OK);
  REQUIRE(spinlab_sweep_csv(s, &text) == SPINLAB_OK);
  std::string csv = take(text);
  CHECK(csv.rfind("p,p_mod4,root_a,spin_1,spin_2,in_R,in_F,m4_class_bits\n13,1,", 0) == 0);
  spinlab_sweep_free(s);

  opts.limit = 10;
  CHECK(spinlab_sweep_run(f, &opts, &s) == SPINLAB_E_INVALID_ARGUMENT);
  CHECK(spinlab_sweep_run(f, nullptr, &s) == SPINLAB_E_INVALID_ARGUMENT);
  spinlab_sweep_free(nullptr);
  spinlab_field_free(f);
}
