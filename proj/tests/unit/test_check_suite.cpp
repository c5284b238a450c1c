#include <doctest.h>

#include <sstream>

#include "hitchin/check_suite.hpp"

using namespace hitchin::checks;

TEST_CASE("check suite passes on a fresh build") {
  const auto results = run_check_suite();
  CHECK(results.size() > 20);
  for (const auto& r : results) {
    CAPTURE(r.module);
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
    CHECK(r.seconds >= 0.0);
  }
  std::ostringstream os;
  CHECK(print_report(os, results));
  CHECK(os.str().find("PASS") != std::string::npos);
}

TEST_CASE("a 1% right-hand-side perturbation fails only the ODE residual") {
  SuiteOptions o;
  o.rhs_scale = 1.01;
  const auto results = run_check_suite(o);
  int failed = 0;
  for (const auto& r : results) {
    if (r.passed) continue;
    ++failed;
    CHECK(r.module == "painleve");
    CHECK(r.name.find("residual") != std::string::npos);
  }
  CHECK(failed == 1);
  std::ostringstream os;
  CHECK_FALSE(print_report(os, results));
}
