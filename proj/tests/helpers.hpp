#pragma once
#include <random>
#include <vector>

#include "ect/complex.hpp"
#include "ect/filtration.hpp"

// Shared generators and independent oracles for the test suites. Oracles are
// deliberately written against the raw data structures, not the library
// routines they are checking.

namespace testutil {

using ect::EmbeddedComplex;
using ect::Simplex;
using ect::Vec3;

// Euler characteristic recounted dimension by dimension from the simplex list.
inline int chi_by_recount(const EmbeddedComplex& k) {
  long long c[4] = {0, 0, 0, 0};
  for (const Simplex& s : k.simplices()) c[s.dimension()]++;
  return static_cast<int>(c[0] - c[1] + c[2] - c[3]);
}

// Random face-closed complex with at most max_simplices simplices after
// closure; combinatorial validity only (geometry may self-intersect, which
// the filtration machinery never depends on).
inline EmbeddedComplex random_complex(std::mt19937_64& rng, int ambient_dim,
                                      int max_simplices = 200) {
  std::uniform_int_distribution<int> npts(1, 24);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  const int n = npts(rng);

  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    points.push_back({coord(rng), coord(rng), ambient_dim == 3 ? coord(rng) : 0.0});

  std::uniform_int_distribution<int> nseeds(1, 10);
  std::uniform_int_distribution<int> dim(0, ambient_dim == 3 ? 3 : 2);
  std::uniform_int_distribution<int> pick(0, n - 1);

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Simplex> seeds;
    const int want = nseeds(rng);
    for (int i = 0; i < want; ++i) {
      const int d = std::min(dim(rng), n - 1);  // need d+1 distinct vertices
      std::vector<std::int32_t> ids;
      while (static_cast<int>(ids.size()) < d + 1) {
        const std::int32_t v = pick(rng);
        bool dup = false;
        for (std::int32_t u : ids) dup = dup || u == v;
        if (!dup) ids.push_back(v);
      }
      seeds.emplace_back(std::span<const std::int32_t>(ids));
    }
    // Seeds may collide; dedup keeps the builder happy.
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    if (seeds.empty()) continue;
    EmbeddedComplex k = ect::build_complex(ambient_dim, points, seeds);
    if (static_cast<int>(k.simplices().size()) <= max_simplices) return k;
  }
  // Fall back to a single vertex; practically unreachable.
  return ect::build_complex(ambient_dim, points, {Simplex{0}});
}

inline ect::Direction random_direction(std::mt19937_64& rng, int ambient_dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 v{g(rng), g(rng), ambient_dim == 3 ? g(rng) : 0.0};
    if (ect::norm(v) > 1e-3) return ect::Direction(ambient_dim, v);
  }
}

inline EmbeddedComplex rotated_z(const EmbeddedComplex& k, double angle) {
  const ect::Mat3 rot = ect::Mat3::rotation_z(angle);
  std::vector<Vec3> pts;
  pts.reserve(k.points().size());
  for (const Vec3& p : k.points()) {
    Vec3 q = rot.apply(p);
    if (k.ambient_dim() == 2) q.z = 0.0;
    pts.push_back(q);
  }
  return ect::with_coordinates(k, std::move(pts));
}

inline EmbeddedComplex scaled(const EmbeddedComplex& k, double s) {
  std::vector<Vec3> pts;
  pts.reserve(k.points().size());
  for (const Vec3& p : k.points()) pts.push_back(s * p);
  return ect::with_coordinates(k, std::move(pts));
}

// Fixed shapes used across suites.
inline EmbeddedComplex hollow_triangle() {
  return ect::build_complex(2, {{0, 0, 0}, {1, 0, 0}, {0.5, 1, 0}},
                            {Simplex{0, 1}, Simplex{0, 2}, Simplex{1, 2}});
}

inline EmbeddedComplex edge_complex() {
  return ect::build_complex(2, {{0, 0, 0}, {1, 0, 0}}, {Simplex{0, 1}});
}

inline EmbeddedComplex tetrahedron_boundary() {
  return ect::build_complex(
      3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {Simplex{0, 1, 2}, Simplex{0, 1, 3}, Simplex{0, 2, 3}, Simplex{1, 2, 3}});
}

}  // namespace testutil
