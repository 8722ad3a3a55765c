#include <cmath>

#include "doctest.h"
#include "ndstore/generator.hpp"

using namespace nds;

namespace {

// with mu = 0 the sink stays at k = 1 and every emitted coordinate pair lies
// on the parabola y = (10.5 - r)^2 / 5 - 1 with x = r + 4
bool on_parabola(double x, double y, double k) {
  double r = x - (5.0 - k);
  double want = (10.5 - r) * (10.5 - r) / 5.0 - k;
  return std::abs(y - want) <= 1e-9;
}

}  // namespace

TEST_CASE("generator: emits exactly n_total valid elements") {
  InstanceGenerator gen({1000, 0.5, 9});
  int64_t total = 0;
  while (!gen.done()) {
    auto batch = gen.next_batch();
    CHECK(!batch.empty());
    CHECK(batch.size() <= 5);
    for (const auto& e : batch) {
      if (e.is_point()) {
        CHECK(e.x1 == e.x2);
        CHECK(e.y1 == e.y2);
      } else {
        CHECK(e.x1 < e.x2);      // pre-trimmed: x already ordered
        CHECK(e.y1 > e.y2);      // and strictly negative slope
      }
    }
    total += static_cast<int64_t>(batch.size());
  }
  CHECK(total == 1000);
  CHECK(gen.emitted() == 1000);
  CHECK_THROWS_AS(gen.next_batch(), std::logic_error);
}

TEST_CASE("generator: mu = 0 keeps every endpoint on the base parabola") {
  InstanceGenerator gen({500, 0.0, 4});
  while (!gen.done()) {
    for (const auto& e : gen.next_batch()) {
      CHECK(on_parabola(e.x1, e.y1, 1.0));
      CHECK(on_parabola(e.x2, e.y2, 1.0));
    }
  }
}

TEST_CASE("generator: spot values on the parabola at k = 1") {
  // r = 0.5 -> (4.5, 19); r = 10 -> (14, -0.95)
  CHECK(on_parabola(4.5, 19.0, 1.0));
  CHECK(on_parabola(14.0, -0.95, 1.0));
}

TEST_CASE("generator: mu > 0 sinks later batches below the base parabola") {
  InstanceGenerator gen({400, 50.0, 4});
  int sunk = 0;
  int64_t seen = 0;
  while (!gen.done()) {
    for (const auto& e : gen.next_batch()) {
      ++seen;
      if (seen > 200 && !on_parabola(e.x1, e.y1, 1.0)) ++sunk;
    }
  }
  CHECK(sunk > 0);
}

TEST_CASE("generator: a seed determines the stream") {
  InstanceGenerator g1({300, 2.0, 77});
  InstanceGenerator g2({300, 2.0, 77});
  InstanceGenerator g3({300, 2.0, 78});
  bool any_diff = false;
  while (!g1.done()) {
    auto b1 = g1.next_batch();
    auto b2 = g2.next_batch();
    REQUIRE(b1.size() == b2.size());
    for (size_t i = 0; i < b1.size(); ++i) {
      CHECK(b1[i].x1 == b2[i].x1);
      CHECK(b1[i].y1 == b2[i].y1);
      CHECK(b1[i].x2 == b2[i].x2);
      CHECK(b1[i].y2 == b2[i].y2);
    }
    if (!g3.done()) {
      auto b3 = g3.next_batch();
      if (b3.size() != b1.size() || b3[0].x1 != b1[0].x1) any_diff = true;
    }
  }
  CHECK(any_diff);
}
