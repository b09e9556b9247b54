#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mercator/division_scan.hpp"
#include "mercator/pitch_math.hpp"

using namespace mercator;

TEST_CASE("parallel scan matches the serial reference bit for bit") {
  for (const auto& [first, last] : {std::pair{1, 1}, std::pair{2, 400}, std::pair{54, 100'000}}) {
    const auto par = scan_divisions(first, last);
    const auto ser = scan_divisions_serial(first, last);
    REQUIRE(par.size() == ser.size());
    REQUIRE(par.size() == static_cast<std::size_t>(last - first + 1));
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].q == ser[i].q);
      CHECK(par[i].p == ser[i].p);
      CHECK(par[i].cents == ser[i].cents);
      CHECK(par[i].steps == ser[i].steps);
    }
  }
}

TEST_CASE("division_error fields agree with each other") {
  const DivisionError e = division_error(53);
  CHECK(e.q == 53);
  CHECK(e.p == 31);
  CHECK(std::abs(e.cents - 0.0682084125572) < 1e-9);
  CHECK(std::abs(e.steps - e.cents * 53 / 1200.0) < 1e-12);
  for (const DivisionError& d : scan_divisions_serial(1, 500)) {
    CHECK(std::abs(d.steps) <= 0.5);
    CHECK(std::abs(d.cents * d.q / 1200.0 - d.steps) < 1e-9);
  }
}

TEST_CASE("scan rejects empty or invalid ranges") {
  CHECK_THROWS_AS(scan_divisions(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(scan_divisions(10, 9), std::invalid_argument);
  CHECK_THROWS_AS(scan_divisions_serial(10, 9), std::invalid_argument);
  CHECK_THROWS_AS(division_error(0), std::domain_error);
}
