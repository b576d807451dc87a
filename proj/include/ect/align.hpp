#pragma once
#include <array>
#include <utility>
#include <vector>

#include "ect/complex.hpp"
#include "ect/transforms.hpp"

namespace ect {

// What an alignment did to the input: output = rotation * (input + translation).
struct AlignmentReport {
  Vec3 translation{};
  Mat3 rotation{};
  std::array<int, 3> axis_signs{1, 1, 1};
  std::vector<int> ambiguous_axes;     // skew too close to zero to pick a sign
  bool degenerate_eigenvalues = false;  // eigenvalue gap under 1e-6
};

// Translates so the referenced-vertex centroid is the origin.
std::pair<EmbeddedComplex, AlignmentReport> center(const EmbeddedComplex& k);

// Centers, then rotates so the principal axes of the vertex covariance align
// with the coordinate axes in decreasing-eigenvalue order. Axis signs follow
// the third central moment along each axis (>= 0 wins; ties within 1e-9
// default to +1 and are flagged); the determinant is forced to +1 by flipping
// the last axis when needed.
std::pair<EmbeddedComplex, AlignmentReport> pca_align(const EmbeddedComplex& k);

enum class MatrixNorm { Rms, Max };

// Entrywise distance between matrices on identical grids: root mean square or
// max absolute difference. Grid mismatches (mode, threshold count, direction
// set, global radius) are rejected with a diagnostic naming the field.
double ect_distance(const EctMatrix& a, const EctMatrix& b, MatrixNorm norm);

// L2 distance between smoothed transforms over matching direction sets:
// sqrt(mean over directions of the exact integral of the squared difference).
double sect_distance(const SectResult& a, const SectResult& b);

namespace detail {
// Eigendecomposition of the leading n x n block (n = 2 or 3) of a symmetric
// matrix by cyclic Jacobi rotations. Eigenvalues descending; eigenvectors are
// the rows of `vectors`, orthonormal.
void symmetric_eigen(const Mat3& m, int n, std::array<double, 3>& values, Mat3& vectors);
}  // namespace detail

}  // namespace ect
