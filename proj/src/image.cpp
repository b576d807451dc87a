#include "ect/image.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ect {

namespace {

void check_image(const RasterImage& image) {
  if (image.width <= 0 || image.height <= 0)
    throw std::invalid_argument("image must have positive dimensions");
  if (image.values.size() !=
      static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height))
    throw std::invalid_argument("image value count does not match dimensions");
}

// Shared corner-vertex bookkeeping for both triangulations. Lattice corner
// (x, y) with x in [0, W], y in [0, H]; y grows upward.
struct LatticeBuilder {
  int width, height;
  std::unordered_map<std::int64_t, std::int32_t> index;
  std::vector<Vec3> points;
  std::vector<Simplex> triangles;

  std::int32_t corner(int x, int y) {
    const std::int64_t key = static_cast<std::int64_t>(y) * (width + 1) + x;
    auto [it, inserted] = index.try_emplace(key, static_cast<std::int32_t>(points.size()));
    if (inserted) points.push_back({static_cast<double>(x), static_cast<double>(y), 0.0});
    return it->second;
  }

  void add_pixel(int col, int row) {
    const int y0 = height - 1 - row;
    const std::int32_t ll = corner(col, y0);
    const std::int32_t lr = corner(col + 1, y0);
    const std::int32_t ur = corner(col + 1, y0 + 1);
    const std::int32_t ul = corner(col, y0 + 1);
    triangles.push_back({ll, lr, ur});
    triangles.push_back({ll, ur, ul});
  }
};

}  // namespace

EmbeddedComplex complex_from_binary_image(const RasterImage& image, int threshold) {
  check_image(image);
  LatticeBuilder b{image.width, image.height, {}, {}, {}};
  for (int row = 0; row < image.height; ++row)
    for (int col = 0; col < image.width; ++col)
      if (image.at(col, row) >= threshold) b.add_pixel(col, row);
  if (b.triangles.empty()) return {};

  EmbeddedComplex k = build_complex(2, std::move(b.points), b.triangles);
  return translated(k, -vertex_centroid(k));
}

ScalarField field_from_grayscale_image(const RasterImage& image) {
  check_image(image);
  LatticeBuilder b{image.width, image.height, {}, {}, {}};
  for (int row = 0; row < image.height; ++row)
    for (int col = 0; col < image.width; ++col) b.add_pixel(col, row);

  // Average the incident pixel values onto each corner.
  std::vector<double> sum(b.points.size(), 0.0);
  std::vector<int> cnt(b.points.size(), 0);
  for (int row = 0; row < image.height; ++row)
    for (int col = 0; col < image.width; ++col) {
      const int y0 = image.height - 1 - row;
      const double v = image.at(col, row);
      for (std::int32_t id : {b.corner(col, y0), b.corner(col + 1, y0),
                              b.corner(col + 1, y0 + 1), b.corner(col, y0 + 1)}) {
        sum[static_cast<std::size_t>(id)] += v;
        cnt[static_cast<std::size_t>(id)] += 1;
      }
    }
  std::vector<double> values(b.points.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = sum[i] / cnt[i];

  EmbeddedComplex k = build_complex(2, std::move(b.points), b.triangles);
  return {translated(k, -vertex_centroid(k)), std::move(values)};
}

}  // namespace ect
