#include "ect/complex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ect/exact.hpp"

namespace ect {

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::initializer_list<std::int32_t> ids)
    : Simplex(std::span<const std::int32_t>(ids.begin(), ids.size())) {}

Simplex::Simplex(std::span<const std::int32_t> ids) {
  if (ids.empty() || ids.size() > 4)
    throw std::invalid_argument("simplex must have 1 to 4 vertices, got " +
                                std::to_string(ids.size()));
  count_ = ids.size();
  std::copy(ids.begin(), ids.end(), v_.begin());
  std::sort(v_.begin(), v_.begin() + count_);
  if (v_[0] < 0) throw std::invalid_argument("negative vertex index in simplex");
  for (std::size_t i = 1; i < count_; ++i)
    if (v_[i] == v_[i - 1])
      throw std::invalid_argument("repeated vertex index " + std::to_string(v_[i]) +
                                  " in simplex");
}

bool Simplex::has_vertex(std::int32_t id) const {
  for (std::size_t i = 0; i < count_; ++i)
    if (v_[i] == id) return true;
  return false;
}

Simplex Simplex::face(unsigned mask) const {
  std::array<std::int32_t, 4> sub;
  std::size_t n = 0;
  for (std::size_t i = 0; i < count_; ++i)
    if (mask & (1u << i)) sub[n++] = v_[i];
  Simplex f;
  f.count_ = n;
  std::copy(sub.begin(), sub.begin() + n, f.v_.begin());  // subsequence stays sorted
  return f;
}

std::size_t SimplexHash::operator()(const Simplex& s) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  mix(static_cast<std::uint64_t>(s.vertex_count()));
  for (std::int32_t v : s.vertices()) mix(static_cast<std::uint64_t>(v) + 1);
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// EmbeddedComplex

namespace {

std::string simplex_str(const Simplex& s) {
  std::string out = "{";
  for (int i = 0; i < s.vertex_count(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.vertex(i));
  }
  return out + "}";
}

void check_ambient_dim(int d) {
  if (d != 2 && d != 3)
    throw std::invalid_argument("ambient dimension must be 2 or 3, got " +
                                std::to_string(d));
}

}  // namespace

bool EmbeddedComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s);
}

EmbeddedComplex EmbeddedComplex::from_parts_unchecked(int ambient_dim,
                                                      std::vector<Vec3> points,
                                                      std::vector<Simplex> simplices) {
  check_ambient_dim(ambient_dim);
  EmbeddedComplex k;
  k.ambient_dim_ = ambient_dim;
  k.points_ = std::move(points);
  k.simplices_ = std::move(simplices);
  std::sort(k.simplices_.begin(), k.simplices_.end());

  const auto npoints = static_cast<std::int32_t>(k.points_.size());
  for (const Simplex& s : k.simplices_) {
    k.counts_[static_cast<std::size_t>(s.dimension())]++;
    for (std::int32_t v : s.vertices())
      if (v < npoints) k.referenced_.push_back(v);
  }
  std::sort(k.referenced_.begin(), k.referenced_.end());
  k.referenced_.erase(std::unique(k.referenced_.begin(), k.referenced_.end()),
                      k.referenced_.end());
  for (std::int32_t v : k.referenced_)
    k.radius_ = std::max(k.radius_, norm(k.points_[static_cast<std::size_t>(v)]));
  return k;
}

EmbeddedComplex build_complex(int ambient_dim, std::vector<Vec3> points,
                              const std::vector<Simplex>& simplices) {
  check_ambient_dim(ambient_dim);
  const auto npoints = static_cast<std::int32_t>(points.size());

  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw std::invalid_argument("nonfinite coordinate at point " + std::to_string(i));
    if (ambient_dim == 2 && p.z != 0.0)
      throw std::invalid_argument("planar complex requires z == 0 at point " +
                                  std::to_string(i));
  }

  for (const Simplex& s : simplices) {
    if (s.dimension() > ambient_dim)
      throw std::invalid_argument("simplex " + simplex_str(s) + " has dimension " +
                                  std::to_string(s.dimension()) +
                                  " above ambient dimension " + std::to_string(ambient_dim));
    for (std::int32_t v : s.vertices())
      if (v >= npoints)
        throw std::invalid_argument("vertex index " + std::to_string(v) + " in simplex " +
                                    simplex_str(s) + " out of range (have " +
                                    std::to_string(npoints) + " points)");
  }

  {
    std::vector<Simplex> sorted = simplices;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw std::invalid_argument("duplicate simplex " + simplex_str(*dup) +
                                  " after canonicalization");
  }

  // Face closure: every nonempty vertex subset of an input simplex is a face.
  std::unordered_set<Simplex, SimplexHash> closed;
  closed.reserve(simplices.size() * 16 + 8);
  for (const Simplex& s : simplices) {
    const unsigned full = (1u << s.vertex_count()) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) closed.insert(s.face(mask));
  }

  std::vector<Simplex> all(closed.begin(), closed.end());
  return EmbeddedComplex::from_parts_unchecked(ambient_dim, std::move(points),
                                               std::move(all));
}

int euler_characteristic(const EmbeddedComplex& k) {
  return static_cast<int>(k.count(0) - k.count(1) + k.count(2) - k.count(3));
}

EmbeddedComplex with_coordinates(const EmbeddedComplex& k, std::vector<Vec3> points) {
  if (points.size() != k.points().size())
    throw std::invalid_argument("coordinate list size mismatch");
  return EmbeddedComplex::from_parts_unchecked(k.ambient_dim(), std::move(points),
                                               k.simplices());
}

EmbeddedComplex translated(const EmbeddedComplex& k, Vec3 offset) {
  std::vector<Vec3> pts = k.points();
  for (Vec3& p : pts) p = p + offset;
  return with_coordinates(k, std::move(pts));
}

Vec3 vertex_centroid(const EmbeddedComplex& k) {
  if (k.referenced_vertices().empty())
    throw std::invalid_argument("centroid of empty complex");
  Vec3 sum{};
  for (std::int32_t v : k.referenced_vertices())
    sum = sum + k.points()[static_cast<std::size_t>(v)];
  return (1.0 / static_cast<double>(k.referenced_vertices().size())) * sum;
}

}  // namespace ect
