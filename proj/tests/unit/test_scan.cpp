#include <doctest.h>

#include <cmath>

#include "qrm/error.hpp"
#include "qrm/scan.hpp"

using namespace qrm;

namespace {

GridSpec small_grid(double step = 0.25) {
  GridSpec g;
  g.delta_range = {0.5, 1.5};
  g.g_range = {0.25, 1.25};
  g.step = step;
  return g;
}

}  // namespace

TEST_CASE("grid geometry") {
  const GridSpec desk;
  CHECK(desk.delta_count() == 61);
  CHECK(desk.g_count() == 61);
  CHECK(desk.delta_at(60) == doctest::Approx(3.1));
  GridSpec fine;
  fine.step = 0.01;
  CHECK(fine.g_count() == 301);
  GridSpec point;
  point.delta_range = {0.7, 0.7};
  point.g_range = {0.5, 0.5};
  CHECK(point.delta_count() == 1);

  GridSpec bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.step = 0.1;
  bad.g_range = {1.0, 0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.g_range = {-0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("two-level scan of the doubly degenerate model") {
  GridSpec g;
  g.delta_range = {0.0, 0.0};
  g.g_range = {0.2, 1.0};
  g.step = 0.2;
  const auto r = min_gap_scan(0.0, g, 2);
  CHECK(r.min_gap < 1e-10);
  CHECK(r.argmin_k == 1);
  CHECK_THROWS_AS(min_gap_scan(0.0, g, 1), std::invalid_argument);
}

TEST_CASE("scan minimum is attained at the reported point") {
  const auto r = min_gap_scan(0.5, small_grid(), 10);
  const auto [gap, k] = min_adjacent_gap(0.5, r.argmin_delta, r.argmin_g, 10);
  CHECK(gap == r.min_gap);
  CHECK(k == r.argmin_k);
  const GridSpec grid = small_grid();
  for (int i = 0; i < grid.delta_count(); ++i) {
    for (int j = 0; j < grid.g_count(); ++j) {
      REQUIRE(min_adjacent_gap(0.5, grid.delta_at(i), grid.g_at(j), 10).first >= r.min_gap);
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  ScanOptions one, many;
  many.threads = 4;
  const auto a = min_gap_scan(1.0, small_grid(), 10, one);
  const auto b = min_gap_scan(1.0, small_grid(), 10, many);
  CHECK(a.min_gap == b.min_gap);
  CHECK(a.argmin_delta == b.argmin_delta);
  CHECK(a.argmin_g == b.argmin_g);
  CHECK(a.argmin_k == b.argmin_k);
  CHECK(a.max_n_fock == b.max_n_fock);
}

TEST_CASE("refining the mesh cannot raise the minimum") {
  const auto coarse = min_gap_scan(0.5, small_grid(0.25), 6);
  const auto fine = min_gap_scan(0.5, small_grid(0.125), 6);
  CHECK(fine.min_gap <= coarse.min_gap);
}

TEST_CASE("epsilon sweep") {
  GridSpec g;
  g.delta_range = {0.7, 0.7};
  g.g_range = {0.5, 0.5};
  const auto single = epsilon_sweep({0.3}, g, 4);
  REQUIRE(single.size() == 1);
  CHECK(single[0].argmin_delta == 0.7);
  CHECK(single[0].argmin_g == 0.5);
  CHECK(single[0].min_gap == min_adjacent_gap(0.3, 0.7, 0.5, 4).first);
  CHECK(epsilon_sweep({0.0, 0.5}, g, 4).size() == 2);
  CHECK_THROWS_AS(epsilon_sweep({0.5, 0.0}, g, 4), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_sweep({}, g, 4), std::invalid_argument);
}

TEST_CASE("failures name the grid point") {
  ScanOptions tight;
  tight.convergence.max_fock = 32;
  GridSpec g;
  g.delta_range = {0.7, 0.7};
  g.g_range = {3.0, 3.0};
  CHECK_THROWS_AS(min_gap_scan(1.0, g, 10, tight), GridPointError);
  try {
    min_gap_scan(1.0, g, 10, tight);
  } catch (const GridPointError& e) {
    CHECK(e.where().find("g=3") != std::string::npos);
  }
}
