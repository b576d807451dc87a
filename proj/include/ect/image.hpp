#pragma once
#include <vector>

#include "ect/complex.hpp"

namespace ect {

// Grayscale raster, row-major with row 0 at the visual top.
struct RasterImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<int> values;

  int at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Triangulates every pixel with value >= threshold into two triangles split
// along the lower-left to upper-right diagonal. Pixel (col i, row j) occupies
// [i, i+1] x [H-1-j, H-j], so the visual "up" of the image is +y. Vertices are
// shared between adjacent pixels and the result is translated so the vertex
// centroid sits at the origin. No foreground yields an empty complex.
EmbeddedComplex complex_from_binary_image(const RasterImage& image, int threshold);

// Vertex-sampled scalar function over a triangulated complex.
struct ScalarField {
  EmbeddedComplex complex;
  std::vector<double> values;  // one per point
};

// Triangulates the full pixel rectangle; each vertex value is the mean of its
// incident pixels (1 at corners, 2 on borders, 4 inside). Complex is centered.
ScalarField field_from_grayscale_image(const RasterImage& image);

}  // namespace ect
