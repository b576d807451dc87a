#pragma once
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ect/geometry.hpp"

namespace ect {

// A simplex as a canonical (strictly increasing) list of vertex indices.
// Dimensions 0 through 3: vertex, edge, triangle, tetrahedron.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<std::int32_t> ids);
  explicit Simplex(std::span<const std::int32_t> ids);

  int dimension() const { return static_cast<int>(count_) - 1; }
  int vertex_count() const { return count_; }
  std::int32_t vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const std::int32_t> vertices() const { return {v_.data(), count_}; }
  bool has_vertex(std::int32_t id) const;

  // Face selected by a vertex bitmask; mask must be nonzero and < 2^count.
  Simplex face(unsigned mask) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;

 private:
  std::size_t count_ = 0;            // compared first: faces sort before cofaces
  std::array<std::int32_t, 4> v_{-1, -1, -1, -1};
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const;
};

// Finite geometric simplicial complex embedded in R^2 or R^3, face-closed,
// with simplices stored sorted and deduplicated. Immutable after build.
class EmbeddedComplex {
 public:
  EmbeddedComplex() = default;

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  // Indices of points used by at least one simplex, sorted. Points outside
  // this list are inert storage: they contribute nothing to counts, to the
  // bounding radius, or to any downstream computation.
  const std::vector<std::int32_t>& referenced_vertices() const { return referenced_; }
  std::int64_t count(int dim) const { return counts_[static_cast<std::size_t>(dim)]; }
  double radius() const { return radius_; }
  bool empty() const { return simplices_.empty(); }
  bool contains(const Simplex& s) const;

  // Wraps raw parts without closure/duplicate checks; counts, referenced set
  // and radius are still derived. Intended for validate() and for subcomplex
  // construction where the invariants are known to hold.
  static EmbeddedComplex from_parts_unchecked(int ambient_dim, std::vector<Vec3> points,
                                              std::vector<Simplex> simplices);

 private:
  int ambient_dim_ = 2;
  std::vector<Vec3> points_;
  std::vector<Simplex> simplices_;
  std::vector<std::int32_t> referenced_;
  std::array<std::int64_t, 4> counts_{0, 0, 0, 0};
  double radius_ = 0.0;
};

// Validating builder. Missing faces are completed automatically; exact
// duplicates in the input list, out-of-range indices, nonfinite coordinates,
// nonzero z in the plane, and simplex dimension above the ambient dimension
// are all rejected with a diagnostic. The bounding radius is the tight
// max-norm over referenced points (0 for an empty complex).
EmbeddedComplex build_complex(int ambient_dim, std::vector<Vec3> points,
                              const std::vector<Simplex>& simplices);

// Alternating sum of simplex counts by dimension.
int euler_characteristic(const EmbeddedComplex& k);

// Same simplices over new coordinates; radius is recomputed.
EmbeddedComplex with_coordinates(const EmbeddedComplex& k, std::vector<Vec3> points);
EmbeddedComplex translated(const EmbeddedComplex& k, Vec3 offset);

// Mean of the referenced vertex coordinates. Complex must be nonempty.
Vec3 vertex_centroid(const EmbeddedComplex& k);

enum class Severity { Error, Warning };

struct Violation {
  Severity severity;
  std::string message;
};

// Structural checks (face closure, index validity, duplicates, coordinate
// sanity) report errors. Geometric checks (degenerate simplices, improper
// pairwise intersections between maximal simplices) report warnings: exact
// predicates are used in the plane, tolerance-based ones in R^3. Tetrahedron
// interior overlap in R^3 is not examined.
std::vector<Violation> validate(const EmbeddedComplex& k);

inline bool has_errors(const std::vector<Violation>& v) {
  for (const auto& x : v)
    if (x.severity == Severity::Error) return true;
  return false;
}

}  // namespace ect
