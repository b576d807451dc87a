#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "ect/directions.hpp"
#include "ect/transforms.hpp"
#include "helpers.hpp"

using namespace ect;

namespace {

RasterImage small_l_shape() {
  RasterImage img;
  img.width = 3;
  img.height = 3;
  img.maxval = 1;
  img.values = {1, 0, 0, 1, 0, 0, 1, 1, 1};
  return img;
}

}  // namespace

TEST_CASE("ect of the hollow triangle, global grid") {
  auto k = testutil::hollow_triangle();
  auto dirs = uniform_circle(4);
  auto m = ect_matrix(k, dirs.samples, 3, ThresholdMode::Global);

  CHECK(m.num_thresholds == 3);
  CHECK(m.radius == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  // Column at angle pi/2 reads (0, 1, 0) over thresholds (-R, 0, R).
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(1, 1) == 1);
  CHECK(m.at(2, 1) == 0);
  // Top row is chi(K) everywhere; bottom row is 0 (no simplex at height -R).
  for (int j = 0; j < 4; ++j) {
    CHECK(m.at(2, j) == euler_characteristic(k));
    CHECK(m.at(0, j) == 0);
  }
  CHECK(m.threshold(0, 0) == -m.radius);
  CHECK(m.threshold(2, 0) == m.radius);
}

TEST_CASE("ect with a degenerate radius override") {
  auto k = build_complex(2, {{0, 0, 0}}, {Simplex{0}});
  CHECK(k.radius() == 0.0);
  auto m = ect_matrix(k, uniform_circle(4).samples, 3, ThresholdMode::Global, 1.0);
  for (int j = 0; j < 4; ++j) {
    CHECK(m.at(0, j) == 0);
    CHECK(m.at(1, j) == 1);
    CHECK(m.at(2, j) == 1);
  }
}

TEST_CASE("ect parameter validation") {
  auto k = testutil::hollow_triangle();
  auto dirs = uniform_circle(4);
  CHECK_THROWS_AS(ect_matrix(k, dirs.samples, 1, ThresholdMode::Global), std::invalid_argument);
  CHECK_THROWS_AS(ect_matrix(k, {}, 3, ThresholdMode::Global), std::invalid_argument);
  CHECK_THROWS_AS(ect_matrix(k, dirs.samples, 3, ThresholdMode::Global, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ect_matrix(k, fibonacci_sphere(4).samples, 3, ThresholdMode::Global),
                  std::invalid_argument);
}

TEST_CASE("threshold grid rows meet their contracts") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    auto k = testutil::random_complex(rng, d);
    auto dirs = d == 2 ? uniform_circle(6) : fibonacci_sphere(6);

    // Per-direction mode: the last row is chi(K) in every column.
    auto m = ect_matrix(k, dirs.samples, 5, ThresholdMode::PerDirection);
    REQUIRE(m.ranges.size() == 6);
    for (int j = 0; j < 6; ++j) CHECK(m.at(4, j) == euler_characteristic(k));

    // Global mode: top row is chi(K); bottom row is zero unless some simplex
    // sits at height exactly -R.
    if (k.radius() == 0.0) continue;
    auto g = ect_matrix(k, dirs.samples, 5, ThresholdMode::Global);
    for (int j = 0; j < 6; ++j) {
      CHECK(g.at(4, j) == euler_characteristic(k));
      bool contact = false;
      for (const Simplex& s : k.simplices())
        contact = contact ||
                  simplex_height(s, k, dirs.samples[static_cast<std::size_t>(j)]) <=
                      -k.radius() + 1e-9 * (1.0 + k.radius());
      if (!contact) CHECK(g.at(0, j) == 0);
    }
  }
}

TEST_CASE("bottom row counts exact contact at -R") {
  auto k = testutil::edge_complex();
  auto far = ect_matrix(k, {Direction(2, {-1, 0, 0})}, 3, ThresholdMode::Global);
  CHECK(far.at(0, 0) == 1);  // the far vertex sits exactly at height -R
  auto flat = ect_matrix(k, {Direction(2, {0, 1, 0})}, 3, ThresholdMode::Global);
  CHECK(flat.at(0, 0) == 0);
}

TEST_CASE("per-direction degenerate range yields a constant column") {
  auto k = testutil::edge_complex();  // flat along y
  auto m = ect_matrix(k, {Direction(2, {0, 1, 0})}, 4, ThresholdMode::PerDirection);
  CHECK(m.ranges[0].first == 0.0);
  CHECK(m.ranges[0].second == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(m.at(i, 0) == 1);
}

TEST_CASE("sect_curve of the edge complex, closed form") {
  auto k = testutil::edge_complex();
  auto curve = ecc(k, Direction(2, {1, 0, 0}));
  auto smooth = sect_curve(curve, 1.0);

  REQUIRE(smooth.knots().size() == 3);
  CHECK(smooth.knots()[0].t == -1.0);
  CHECK(smooth.knots()[1].t == 0.0);
  CHECK(smooth.knots()[2].t == 1.0);
  CHECK(smooth.value(-1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(smooth.value(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(smooth.value(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  // Linear pieces: SECC(t) = -0.5(t+1) on [-1,0], 0.5t - 0.5 on [0,1].
  CHECK(smooth.value(-0.5) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(smooth.value(0.5) == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("sect_curve degenerate cases") {
  CHECK(sect_curve(EulerCurve{}, 2.0).value(0.0) == 0.0);
  // Constant curve from -R on integrates to zero after centering.
  EulerCurve constant({{-2.0, 5}}, 2.0);
  auto smooth = sect_curve(constant, 2.0);
  for (double t : {-2.0, -1.0, 0.0, 1.7, 2.0})
    CHECK(smooth.value(t) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(sect_curve(constant, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sect_curve(constant, 1.0), std::invalid_argument);  // domain exceeds R
}

TEST_CASE("sect scaling behavior") {
  auto k = testutil::edge_complex();
  auto doubled = testutil::scaled(k, 2.0);
  auto s = sect(doubled, {Direction(2, {1, 0, 0})});
  CHECK(s.radius == doctest::Approx(2.0));
  CHECK(s.curves[0].value(0.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.curves[0].value(2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.curves[0].knots().front().t == doctest::Approx(-2.0));
}

TEST_CASE("sect of the empty complex is identically zero") {
  EmbeddedComplex k;
  auto s = sect(k, uniform_circle(8).samples);
  CHECK(s.radius == 1.0);  // substituted domain
  for (const auto& c : s.curves)
    for (double t : {-1.0, -0.3, 0.9, 1.0}) CHECK(c.value(t) == 0.0);
  auto grid = sample_sect(s, 5);
  for (const auto& row : grid)
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("secc endpoints vanish on random complexes") {
  std::mt19937_64 rng(868);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    auto k = testutil::random_complex(rng, d);
    auto dirs = d == 2 ? uniform_circle(6) : fibonacci_sphere(6);
    auto s = sect(k, dirs.samples);
    for (const auto& c : s.curves) {
      CHECK(std::abs(c.value(-s.radius)) <= 1e-9);
      CHECK(std::abs(c.value(s.radius)) <= 1e-9);
    }
  }
}

TEST_CASE("exact integration against a midpoint oracle") {
  // Midpoint sums over a step function carry an error up to h/2 per unit of
  // total variation, so the tolerance carries both that term and the
  // roundoff-scale envelope.
  std::mt19937_64 rng(4000);
  const int samples = 10000;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    auto k = testutil::random_complex(rng, d);
    if (k.radius() == 0.0) continue;
    const Direction omega = testutil::random_direction(rng, d);
    const auto curve = ecc(k, omega);
    const auto smooth = sect_curve(curve, k.radius());

    const double R = k.radius();
    const double h = 2.0 * R / samples;
    int max_abs = 0;
    double tv = 0.0;
    int prev = 0;
    for (const CurveStep& s : curve.steps()) {
      max_abs = std::max(max_abs, std::abs(s.chi));
      tv += std::abs(s.chi - prev);
      prev = s.chi;
    }
    // Same mean as the exact path, so the comparison isolates integration.
    double full = 0.0;
    {
      std::vector<double> xs{-R};
      for (const CurveStep& s : curve.steps())
        if (s.a > -R && s.a < R) xs.push_back(s.a);
      xs.push_back(R);
      for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        full += curve.value_at(xs[i]) * (xs[i + 1] - xs[i]);
    }
    const double mean = full / (2.0 * R);

    const double tol = 1e-6 * (1.0 + max_abs) * 2.0 * R + 0.5 * h * tv;
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = -R + i * h;
      acc += h * (curve.value_at(x + 0.5 * h) - mean);
      CHECK(std::abs(smooth.value(x + h) - acc) <= tol);
    }
  }
}

TEST_CASE("rotation by k sampling steps shifts columns by k") {
  const int n = 16;
  auto k = complex_from_binary_image(small_l_shape(), 1);
  auto dirs = uniform_circle(n);
  for (int T : {9, 25}) {
    auto base = ect_matrix(k, dirs.samples, T, ThresholdMode::Global);
    for (int steps : {1, 3, 7}) {
      auto rotated = testutil::rotated_z(k, steps * 2.0 * std::numbers::pi / n);
      auto m = ect_matrix(rotated, dirs.samples, T, ThresholdMode::Global);
      for (int i = 0; i < T; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(m.at(i, j) == base.at(i, (j + n - steps) % n));
    }
  }
}

TEST_CASE("detect over a constant series repeats one row") {
  auto k = complex_from_binary_image(small_l_shape(), 1);
  auto dirs = uniform_circle(8);
  std::vector<double> heights;
  for (int i = 0; i < 9; ++i) heights.push_back(-2.0 + 0.5 * i);
  auto surface = detect({k, k, k}, dirs.samples, heights);
  REQUIRE(surface.values.size() == 3);
  CHECK(surface.values[0] == surface.values[1]);
  CHECK(surface.values[0] == surface.values[2]);
  CHECK(surface.num_directions == 8);
}

TEST_CASE("detect of empty complexes is zero") {
  auto surface = detect({EmbeddedComplex{}, EmbeddedComplex{}},
                        uniform_circle(4).samples, {-0.5, 0.0, 0.5});
  for (const auto& row : surface.values)
    for (double v : row) CHECK(v == 0.0);
  CHECK_THROWS_AS(detect({}, uniform_circle(4).samples, {0.0}),
                  std::invalid_argument);
}

TEST_CASE("detect is invariant under one-step rotation") {
  const int n = 8;
  auto k = complex_from_binary_image(small_l_shape(), 1);
  auto rotated = testutil::rotated_z(k, 2.0 * std::numbers::pi / n);
  auto dirs = uniform_circle(n);
  std::vector<double> heights;
  for (int i = 0; i <= 16; ++i) heights.push_back(-2.0 + 0.25 * i);

  auto a = detect({k}, dirs.samples, heights);
  auto b = detect({rotated}, dirs.samples, heights);
  for (std::size_t x = 0; x < heights.size(); ++x)
    CHECK(std::abs(a.values[0][x] - b.values[0][x]) <= 1e-9);
}

TEST_CASE("lect and select on a constant field") {
  RasterImage img;
  img.width = 2;
  img.height = 2;
  img.maxval = 9;
  img.values = {5, 5, 5, 5};
  auto field = field_from_grayscale_image(img);
  const auto& k = field.complex;
  const Direction v = Direction::from_angle(0.7);
  const auto curve = ecc(k, v);

  for (double h : {-1.2, -0.4, 0.0, 0.3, 1.1, k.radius()}) {
    CHECK(lect(field, v, h, 5.0) == curve.value_at(h));
    CHECK(lect(field, v, h, 4.0) == 0);
    for (double t : {0.0, 2.5, 5.0})
      CHECK(select(field, v, h, t) == lect(field, v, h, 5.0));
  }
  CHECK(select(field, v, k.radius(), 5.0) == euler_characteristic(k));
}

TEST_CASE("select is monotone in the threshold") {
  RasterImage img;
  img.width = 4;
  img.height = 3;
  img.maxval = 9;
  img.values = {1, 3, 5, 7, 2, 9, 4, 6, 8, 0, 2, 5};
  auto field = field_from_grayscale_image(img);
  const Direction v = Direction::from_angle(1.1);
  const double h = 0.8;

  auto prev = superlevel_restriction(field, v, h, 0.0);
  for (double t : {1.0, 2.0, 3.5, 5.0, 7.5, 9.0}) {
    auto cur = superlevel_restriction(field, v, h, t);
    // Every simplex at the higher threshold survives the lower one.
    CHECK(std::includes(prev.simplices().begin(), prev.simplices().end(),
                        cur.simplices().begin(), cur.simplices().end()));
    CHECK(select(field, v, h, t) == euler_characteristic(cur));
    prev = cur;
  }

  // min vertex value selects everything up to the height cut.
  double vmin = field.values[0];
  for (double val : field.values) vmin = std::min(vmin, val);
  CHECK(select(field, v, field.complex.radius(), vmin) ==
        euler_characteristic(field.complex));
}
