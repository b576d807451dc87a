#pragma once
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ect/directions.hpp"
#include "ect/image.hpp"
#include "ect/transforms.hpp"

namespace ect {

struct ParseError : std::runtime_error {
  int line;  // 0 when no line applies (whole-file problems)
  ParseError(const std::string& what, int line_number)
      : std::runtime_error(line_number > 0
                               ? "line " + std::to_string(line_number) + ": " + what
                               : what),
        line(line_number) {}
};

// OFF mesh: "OFF / nv nf ne / vertex lines / face lines". Faces with more
// than 3 vertices are fan-triangulated from their first vertex; 2-vertex
// faces become edges. Planar input is nv x 3 with z == 0 throughout, which
// yields an ambient dimension of 2.
EmbeddedComplex read_off(std::string_view text);

// Simplex list, one record per line: "v x y [z]" vertices in order,
// "s i j [k [l]]" simplices by 0-based vertex index, "#" comments.
EmbeddedComplex read_simplex_list(std::string_view text);
std::string write_simplex_list(const EmbeddedComplex& k);

// PGM: P2 (ASCII, maxval up to 65535) and P5 (binary, maxval up to 255) are
// read; output is always P2 with a fixed layout, so rewrites are byte-stable.
RasterImage read_pgm(std::string_view bytes);
std::string write_pgm(const RasterImage& image);

std::string write_ecc_csv(const EulerCurve& curve);

// Matrix CSVs carry one header row (label, then direction angles on the
// circle or direction indices on the sphere) and one leading column
// (thresholds in global mode, threshold indices otherwise).
std::string write_matrix_csv(const EctMatrix& m);
std::string write_grid_csv(const std::string& corner_label,
                           const std::vector<double>& header,
                           const std::vector<double>& col0,
                           const std::vector<std::vector<double>>& rows);

struct GridCsv {
  std::string corner_label;
  std::vector<double> header;
  std::vector<double> col0;
  std::vector<std::vector<double>> rows;
};
GridCsv read_grid_csv(std::string_view text);

// Affine min -> 0, max -> maxval heatmap of a grid; the last grid row becomes
// the top image row so larger thresholds sit visually higher.
RasterImage heatmap(const std::vector<std::vector<double>>& rows, int maxval,
                    double& out_min, double& out_max);

// One unit vector per row, comma separated, two or three components.
std::string write_directions_csv(const DirectionSet& set);

std::string write_metadata(const std::vector<std::pair<std::string, std::string>>& kv);

std::string read_file(const std::filesystem::path& path);
// Writes through a temp file plus rename: interrupted runs leave no torso.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace ect
