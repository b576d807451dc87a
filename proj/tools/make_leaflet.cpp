#include <iostream>
#include <string>

#include "ect/image.hpp"
#include "ect/io.hpp"

// Draws the bundled synthetic leaflet: a midrib with slanted pinnae over a
// rounded blade, with a few punched-out pixels so the shape has holes and a
// negative Euler characteristic. Fully deterministic.

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_leaflet <out.pgm>\n";
    return 3;
  }

  const int width = 48, height = 72;
  ect::RasterImage img;
  img.width = width;
  img.height = height;
  img.maxval = 1;
  img.values.assign(static_cast<std::size_t>(width) * height, 0);

  auto put = [&](int x, int y, int v) {
    if (x >= 0 && x < width && y >= 0 && y < height)
      img.values[static_cast<std::size_t>(y) * width + x] = v;
  };

  // Midrib, two pixels wide.
  for (int row = 6; row <= 62; ++row) {
    put(23, row, 1);
    put(24, row, 1);
  }

  // Pinnae slant upward from the midrib, longer toward the base.
  for (int b = 0; b < 10; ++b) {
    const int base_left = 10 + 5 * b;
    const int len_left = 4 + b;
    for (int k = 0; k <= len_left; ++k) {
      put(23 - k, base_left - k, 1);
      put(23 - k, base_left - k + 1, 1);
    }
    const int base_right = 12 + 5 * b;
    const int len_right = 3 + b;
    for (int k = 0; k <= len_right; ++k) {
      put(24 + k, base_right - k, 1);
      put(24 + k, base_right - k + 1, 1);
    }
  }

  // Blade: filled ellipse near the base.
  for (int row = 56; row < height; ++row)
    for (int col = 0; col < width; ++col) {
      const double dx = (col - 23.5) / 12.0;
      const double dy = (row - 64.0) / 6.0;
      if (dx * dx + dy * dy <= 1.0) put(col, row, 1);
    }

  // Punched holes in the blade interior.
  put(17, 63, 0);
  put(23, 66, 0);
  put(29, 62, 0);

  try {
    ect::write_file_atomic(argv[1], ect::write_pgm(img));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
