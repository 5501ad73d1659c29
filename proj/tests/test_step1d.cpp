#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "rlab/generators.hpp"
#include "rlab/step1d.hpp"

using namespace rlab;

namespace {

StepFunction two_level() { return StepFunction::from_pieces({0, 1, 2, 4}, {2, 0, 1}); }

// Levels at which equimeasurability is probed: every value and the midpoints between them.
std::vector<double> probe_levels(const StepFunction& u) {
  std::set<double> vals(u.values().begin(), u.values().end());
  vals.insert(0.0);
  std::vector<double> out(vals.begin(), vals.end());
  const std::size_t k = out.size();
  for (std::size_t i = 0; i + 1 < k; ++i) out.push_back((out[i] + out[i + 1]) / 2);
  return out;
}

bool pointwise_le(const StepFunction& u, const StepFunction& v) {
  bool ok = true;
  for_each_common_piece(u, v, [&](double, double, double a, double b) { ok = ok && a <= b; });
  return ok;
}

}  // namespace

TEST_CASE("evaluate uses half-open pieces") {
  const auto u = StepFunction::indicator(1, 2);
  CHECK(u(1.5) == 1.0);
  CHECK(u(1.0) == 1.0);
  CHECK(u(2.0) == 0.0);
  CHECK(u(-5.0) == 0.0);
  CHECK(StepFunction{}(0.3) == 0.0);
}

TEST_CASE("from_pieces canonicalizes and validates") {
  const auto u = StepFunction::from_pieces({-1, 0, 1, 2, 3, 4}, {0, 2, 2, 0, 1});
  CHECK(u == StepFunction::from_pieces({0, 2, 3, 4}, {2, 0, 1}));
  CHECK(u.piece_count() == 3);
  CHECK(StepFunction::from_pieces({0, 1}, {0}).is_zero());
  CHECK(StepFunction::from_pieces({}, {}).is_zero());

  CHECK_THROWS_AS(StepFunction::from_pieces({0, 0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::from_pieces({1, 0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::from_pieces({0, 1}, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::from_pieces({0, 1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::from_pieces({0, INFINITY}, {1}), std::invalid_argument);
}

TEST_CASE("polarize examples") {
  const auto u = StepFunction::indicator(1, 2);
  CHECK(polarize(u, Halfspace::on_line(1, 0)) == StepFunction::indicator(-2, -1));

  const auto sym = StepFunction::indicator(-1, 1);
  CHECK(polarize(sym, Halfspace::on_line(1, 0.5)) == sym);

  // 2 on [0,1), 1 on [-1,0): the larger value moves into {x <= 0}.
  const auto w = StepFunction::from_pieces({-1, 0, 1}, {1, 2});
  CHECK(polarize(w, Halfspace::on_line(1, 0)) == StepFunction::from_pieces({-1, 0, 1}, {2, 1}));

  CHECK(polarize(StepFunction{}, Halfspace::on_line(-1, 0.3)).is_zero());
}

TEST_CASE("polarize agrees with the pointwise oracle away from breakpoints") {
  Rng rng(2024);
  std::uniform_real_distribution<double> sample(-20.0, 20.0);
  for (int c = 0; c < 100; ++c) {
    const auto u = random_step_function(rng);
    const auto h = random_halfspace_1d(rng, OffsetRange::Any);
    const auto uh = polarize(u, h);
    int mismatches = 0;
    for (int k = 0; k < 10000; ++k) {
      const double x = sample(rng);
      if (oracle::near_breakpoint(u, h.sign(), h.offset(), x, 1e-9)) continue;
      if (uh(x) != oracle::polarized_value(u, h.sign(), h.offset(), x)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("rearrange examples") {
  CHECK(rearrange(StepFunction::indicator(1, 3)) == StepFunction::indicator(-1, 1));
  CHECK(rearrange(two_level()) == StepFunction::from_pieces({-1.5, -0.5, 0.5, 1.5}, {1, 2, 1}));
  const auto sym = StepFunction::from_pieces({-1.5, -0.5, 0.5, 1.5}, {1, 2, 1});
  CHECK(rearrange(sym) == sym);
  CHECK(rearrange(StepFunction{}).is_zero());
}

TEST_CASE("rearrange agrees with the layer-cake oracle") {
  Rng rng(77);
  std::uniform_real_distribution<double> sample(-20.0, 20.0);
  for (int c = 0; c < 100; ++c) {
    const auto u = random_step_function(rng);
    const auto us = rearrange(u);
    int mismatches = 0;
    for (int k = 0; k < 2000; ++k) {
      const double x = sample(rng);
      bool near = false;
      for (double b : us.breakpoints()) near = near || std::abs(x - b) < 1e-9;
      if (!near && us(x) != oracle::layer_cake_value(u, x)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("superlevel_measure is strict") {
  const auto u = two_level();
  CHECK(superlevel_measure(u, 1.5) == 1.0);
  CHECK(superlevel_measure(u, 0.5) == 3.0);
  CHECK(superlevel_measure(u, 2.0) == 0.0);
  CHECK(superlevel_measure(StepFunction{}, 0.0) == 0.0);
}

TEST_CASE("lp distances and norms") {
  CHECK(lp_distance(StepFunction::indicator(0, 1), StepFunction::indicator(0.5, 1.5), 1) == 1.0);
  CHECK(lp_norm(StepFunction::indicator(0, 1, 2.0), 2) == 2.0);
  CHECK(lp_distance(StepFunction::indicator(0, 1), StepFunction::indicator(3, 4), 1) == 2.0);
  CHECK(lp_norm_pow(two_level(), 3) == 8.0 + 2.0);
  CHECK(sup_distance(two_level(), StepFunction{}) == 2.0);
  CHECK(inner_product(two_level(), StepFunction::indicator(0.5, 3)) == doctest::Approx(2 * 0.5 + 1));
  CHECK_THROWS_AS(lp_norm(two_level(), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lp_distance(two_level(), two_level(), 0.0), std::invalid_argument);
}

TEST_CASE("equimeasurability of polarize and rearrange") {
  Rng rng(5);
  for (int c = 0; c < 300; ++c) {
    const auto u = random_step_function(rng);
    const auto h = random_halfspace_1d(rng, OffsetRange::Any);
    const auto uh = polarize(u, h);
    const auto us = rearrange(u);
    for (double lambda : probe_levels(u)) {
      const double m = superlevel_measure(u, lambda);
      CHECK(std::abs(superlevel_measure(uh, lambda) - m) < 1e-9);
      CHECK(std::abs(superlevel_measure(us, lambda) - m) < 1e-9);
    }
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(lp_norm_pow(uh, p) == lp_norm_pow(u, p));
      CHECK(std::abs(lp_norm_pow(us, p) - lp_norm_pow(u, p)) < 1e-12 * std::max(1.0, lp_norm_pow(u, p)));
    }
  }
}

TEST_CASE("idempotence") {
  Rng rng(6);
  for (int c = 0; c < 300; ++c) {
    const auto u = random_step_function(rng);
    const auto h = random_halfspace_1d(rng, OffsetRange::Any);
    const auto uh = polarize(u, h);
    CHECK(polarize(uh, h) == uh);
    const auto us = rearrange(u);
    CHECK(rearrange(us) == us);
  }
}

TEST_CASE("polarization is monotone") {
  Rng rng(8);
  for (int c = 0; c < 300; ++c) {
    const auto v = random_step_function(rng);
    // u <= v: halve v and drop one piece.
    std::vector<double> b(v.breakpoints().begin(), v.breakpoints().end());
    std::vector<double> vals(v.values().begin(), v.values().end());
    for (auto& x : vals) x /= 2;
    if (!vals.empty()) vals[c % vals.size()] = 0;
    const auto u = StepFunction::from_pieces(b, vals);
    REQUIRE(pointwise_le(u, v));
    const auto h = random_halfspace_1d(rng, OffsetRange::Any);
    CHECK(pointwise_le(polarize(u, h), polarize(v, h)));
  }
}

TEST_CASE("polarization and rearrangement are nonexpansive") {
  Rng rng(9);
  for (int c = 0; c < 300; ++c) {
    const auto u = random_step_function(rng);
    const auto v = random_step_function(rng);
    const auto h = random_halfspace_1d(rng, OffsetRange::Any);
    for (double p : {1.0, 2.0}) {
      const double d = lp_distance(u, v, p);
      CHECK(lp_distance(polarize(u, h), polarize(v, h), p) <= d + 1e-12);
      CHECK(lp_distance(rearrange(u), rearrange(v), p) <= d + 1e-12);
    }
  }
}

TEST_CASE("symmetric decreasing functions are fixed by polarizations containing 0") {
  Rng rng(10);
  for (int c = 0; c < 20; ++c) {
    const auto us = rearrange(random_step_function(rng));
    for (int k = 0; k < 100; ++k) {
      const auto h = random_halfspace_1d(rng, OffsetRange::NonNegative);
      CHECK(polarize(us, h) == us);
    }
  }
}
