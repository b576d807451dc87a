#include <CLI11.hpp>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "ect/align.hpp"
#include "ect/directions.hpp"
#include "ect/io.hpp"
#include "ect/transforms.hpp"

// Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid
// parameters, 4 internal failure. Outputs are written atomically.

namespace {

using namespace ect;

std::string load_bytes(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

bool looks_like_pgm(const std::string& bytes) {
  return bytes.rfind("P2", 0) == 0 || bytes.rfind("P5", 0) == 0;
}

EmbeddedComplex load_complex(const std::string& path, int threshold) {
  const std::string bytes = load_bytes(path);
  if (bytes.rfind("OFF", 0) == 0) return read_off(bytes);
  if (looks_like_pgm(bytes)) return complex_from_binary_image(read_pgm(bytes), threshold);
  return read_simplex_list(bytes);
}

// Radians as a decimal, or in pi-fraction form: "pi", "pi/2", "3pi/4",
// "3/4pi", "-pi" all parse.
double parse_angle(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw std::invalid_argument("empty angle");

  auto to_number = [](const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad angle component '" + text + "'");
    }
    if (used != text.size())
      throw std::invalid_argument("bad angle component '" + text + "'");
    return v;
  };

  const std::size_t pi = s.find("pi");
  if (pi == std::string::npos) return to_number(s);

  std::string prefix = s.substr(0, pi);
  const std::string suffix = s.substr(pi + 2);

  double sign = 1.0;
  if (!prefix.empty() && (prefix[0] == '-' || prefix[0] == '+')) {
    if (prefix[0] == '-') sign = -1.0;
    prefix.erase(0, 1);
  }
  double coef = 1.0;
  if (!prefix.empty()) {
    const std::size_t slash = prefix.find('/');
    if (slash == std::string::npos) {
      coef = to_number(prefix);
    } else {
      const double den = to_number(prefix.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator in angle");
      coef = to_number(prefix.substr(0, slash)) / den;
    }
  }
  double div = 1.0;
  if (!suffix.empty()) {
    if (suffix[0] != '/') throw std::invalid_argument("bad angle '" + s + "'");
    div = to_number(suffix.substr(1));
    if (div == 0.0) throw std::invalid_argument("zero denominator in angle");
  }
  return sign * coef * std::numbers::pi / div;
}

Vec3 parse_vector(const std::string& s) {
  Vec3 v{};
  double* slot[3] = {&v.x, &v.y, &v.z};
  std::size_t start = 0;
  int i = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string part =
        s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (i >= 3) throw std::invalid_argument("vector has more than three components");
    std::size_t used = 0;
    try {
      *slot[i] = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad vector component '" + part + "'");
    }
    if (used != part.size())
      throw std::invalid_argument("bad vector component '" + part + "'");
    ++i;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (i < 2) throw std::invalid_argument("vector needs two or three components");
  return v;
}

Direction pick_direction(const EmbeddedComplex& k, const std::string& angle,
                         const std::string& vector) {
  if (!vector.empty()) return Direction(k.ambient_dim(), parse_vector(vector));
  if (!angle.empty()) {
    const double theta = parse_angle(angle);
    // On a spatial complex an angle selects the equatorial direction.
    return Direction(k.ambient_dim(), {std::cos(theta), std::sin(theta), 0.0});
  }
  return Direction(k.ambient_dim(), k.ambient_dim() == 2 ? Vec3{1, 0, 0} : Vec3{0, 0, 1});
}

DirectionSet pick_directions(const EmbeddedComplex& k, std::string scheme, int n) {
  if (scheme.empty()) scheme = k.ambient_dim() == 2 ? "circle" : "fibonacci";
  if (scheme == "circle") {
    if (k.ambient_dim() != 2)
      throw std::invalid_argument("circle directions need a planar complex");
    return uniform_circle(n);
  }
  if (scheme == "fibonacci") {
    if (k.ambient_dim() != 3)
      throw std::invalid_argument("fibonacci directions need a spatial complex");
    return fibonacci_sphere(n);
  }
  throw std::invalid_argument("unknown direction scheme '" + scheme + "'");
}

double effective_radius(const EmbeddedComplex& k) {
  if (k.radius() == 0.0) {
    std::cerr << "warning: bounding radius is 0, using 1 for the threshold grid\n";
    return 1.0;
  }
  return k.radius();
}

void write_heatmap(const std::string& path,
                   const std::vector<std::vector<double>>& rows,
                   std::vector<std::pair<std::string, std::string>>& meta) {
  double lo = 0.0, hi = 0.0;
  const RasterImage img = heatmap(rows, 255, lo, hi);
  write_file_atomic(path, write_pgm(img));
  meta.emplace_back("heatmap", path);
  meta.emplace_back("heatmap_min", format_double(lo));
  meta.emplace_back("heatmap_max", format_double(hi));
}

// ---------------------------------------------------------------------------

struct CommonShapeArgs {
  std::string input;
  std::string out;
  std::string scheme;
  int directions = 64;
  int thresholds = 64;
  int binarize = 1;
  std::string pgm;
};

void add_shape_options(CLI::App* cmd, CommonShapeArgs& args, bool with_thresholds) {
  cmd->add_option("input", args.input, "OFF, simplex-list, or PGM input")->required();
  cmd->add_option("--out", args.out, "output CSV path")->required();
  cmd->add_option("--scheme", args.scheme, "direction scheme: circle or fibonacci");
  cmd->add_option("-n,--directions", args.directions, "number of directions")
      ->check(CLI::PositiveNumber);
  if (with_thresholds)
    cmd->add_option("-T,--thresholds", args.thresholds, "number of thresholds")
        ->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--threshold", args.binarize,
                  "binarization threshold for raster input (value >= threshold)");
  cmd->add_option("--pgm", args.pgm, "also write a PGM heatmap here");
}

int cmd_ecc(const std::string& input, const std::string& angle, const std::string& vector,
            int binarize, const std::string& out) {
  const EmbeddedComplex k = load_complex(input, binarize);
  const Direction omega = pick_direction(k, angle, vector);
  const EulerCurve curve = ecc(k, omega);
  write_file_atomic(out, write_ecc_csv(curve));
  std::cout << "chi=" << euler_characteristic(k) << " breakpoints=" << curve.steps().size()
            << "\n";
  return 0;
}

int cmd_ect(const CommonShapeArgs& args, const std::string& mode_name) {
  const EmbeddedComplex k = load_complex(args.input, args.binarize);
  const DirectionSet dirs = pick_directions(k, args.scheme, args.directions);
  ThresholdMode mode;
  if (mode_name == "global")
    mode = ThresholdMode::Global;
  else if (mode_name == "per-direction")
    mode = ThresholdMode::PerDirection;
  else
    throw std::invalid_argument("unknown threshold mode '" + mode_name + "'");

  const EctMatrix m = ect_matrix(k, dirs.samples, args.thresholds, mode, effective_radius(k));
  write_file_atomic(args.out, write_matrix_csv(m));

  std::vector<std::pair<std::string, std::string>> meta{
      {"command", "ect"},
      {"input", args.input},
      {"scheme", dirs.scheme == DirectionScheme::UniformCircle ? "circle" : "fibonacci"},
      {"directions", std::to_string(dirs.samples.size())},
      {"thresholds", std::to_string(args.thresholds)},
      {"mode", mode_name},
      {"radius", format_double(m.radius)},
      {"threshold_slack", format_double(1e-9 * (1.0 + m.radius))},
  };
  if (mode == ThresholdMode::PerDirection)
    for (std::size_t j = 0; j < m.ranges.size(); ++j)
      meta.emplace_back("range_" + std::to_string(j),
                        format_double(m.ranges[j].first) + "," +
                            format_double(m.ranges[j].second));
  if (!args.pgm.empty()) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.num_thresholds));
    for (int i = 0; i < m.num_thresholds; ++i)
      for (std::size_t j = 0; j < m.directions.size(); ++j)
        rows[static_cast<std::size_t>(i)].push_back(m.at(i, static_cast<int>(j)));
    write_heatmap(args.pgm, rows, meta);
  }
  write_file_atomic(args.out + ".meta", write_metadata(meta));
  return 0;
}

int cmd_sect(const CommonShapeArgs& args) {
  const EmbeddedComplex k = load_complex(args.input, args.binarize);
  const DirectionSet dirs = pick_directions(k, args.scheme, args.directions);
  const SectResult s = sect(k, dirs.samples, effective_radius(k));
  const auto grid = sample_sect(s, args.thresholds);

  std::vector<double> col0(static_cast<std::size_t>(args.thresholds));
  for (int i = 0; i < args.thresholds; ++i)
    col0[static_cast<std::size_t>(i)] =
        std::lerp(-s.radius, s.radius, static_cast<double>(i) / (args.thresholds - 1));
  std::vector<double> header;
  if (!dirs.angles.empty())
    header = dirs.angles;
  else
    for (std::size_t j = 0; j < dirs.samples.size(); ++j)
      header.push_back(static_cast<double>(j));

  write_file_atomic(args.out, write_grid_csv("threshold", header, col0, grid));
  std::vector<std::pair<std::string, std::string>> meta{
      {"command", "sect"},
      {"input", args.input},
      {"scheme", dirs.scheme == DirectionScheme::UniformCircle ? "circle" : "fibonacci"},
      {"directions", std::to_string(dirs.samples.size())},
      {"thresholds", std::to_string(args.thresholds)},
      {"radius", format_double(s.radius)},
  };
  if (!args.pgm.empty()) write_heatmap(args.pgm, grid, meta);
  write_file_atomic(args.out + ".meta", write_metadata(meta));
  return 0;
}

int cmd_detect(const std::vector<std::string>& inputs, const std::string& scheme, int n,
               int num_heights, int binarize, const std::string& out,
               const std::string& pgm) {
  std::vector<EmbeddedComplex> series;
  series.reserve(inputs.size());
  for (const std::string& path : inputs) series.push_back(load_complex(path, binarize));

  const DirectionSet dirs = pick_directions(series.front(), scheme, n);
  double radius = 0.0;
  for (const EmbeddedComplex& k : series) radius = std::max(radius, k.radius());
  if (radius == 0.0) {
    std::cerr << "warning: bounding radius is 0, using 1 for the height grid\n";
    radius = 1.0;
  }
  std::vector<double> heights(static_cast<std::size_t>(num_heights));
  for (int i = 0; i < num_heights; ++i)
    heights[static_cast<std::size_t>(i)] =
        std::lerp(-radius, radius, static_cast<double>(i) / (num_heights - 1));

  const DetectSurface surface = detect(series, dirs.samples, heights);
  std::vector<double> col0(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) col0[s] = static_cast<double>(s);
  write_file_atomic(out, write_grid_csv("time_index", heights, col0, surface.values));

  std::vector<std::pair<std::string, std::string>> meta{
      {"command", "detect"},
      {"series_length", std::to_string(series.size())},
      {"scheme", dirs.scheme == DirectionScheme::UniformCircle ? "circle" : "fibonacci"},
      {"directions", std::to_string(dirs.samples.size())},
      {"eval_heights", std::to_string(num_heights)},
      {"radius", format_double(surface.radius)},
      {"detect_quadrature", "direction_mean"},
  };
  if (!pgm.empty()) write_heatmap(pgm, surface.values, meta);
  write_file_atomic(out + ".meta", write_metadata(meta));
  return 0;
}

int cmd_lect(const std::string& input, const std::string& angle, const std::string& vector,
             double height, std::optional<double> level, bool enumerate_levels,
             bool superlevel) {
  const std::string bytes = load_bytes(input);
  if (!looks_like_pgm(bytes))
    throw std::invalid_argument("level-set transforms need a grayscale PGM input");
  const ScalarField field = field_from_grayscale_image(read_pgm(bytes));
  const Direction v = pick_direction(field.complex, angle, vector);

  auto value = [&](double t) {
    return superlevel ? select(field, v, height, t) : lect(field, v, height, t);
  };

  if (enumerate_levels) {
    std::vector<double> attained = field.values;
    std::sort(attained.begin(), attained.end());
    std::vector<double> levels;
    for (double t : attained)
      if (levels.empty() || t - levels.back() > 1e-9) levels.push_back(t);
    std::cout << "t,chi\n";
    for (double t : levels) std::cout << format_double(t) << "," << value(t) << "\n";
    return 0;
  }
  if (!level) throw std::invalid_argument("need --level or --enumerate-levels");
  std::cout << value(*level) << "\n";
  return 0;
}

int cmd_dist(const std::string& a_path, const std::string& b_path,
             const std::string& metric) {
  const GridCsv a = read_grid_csv(load_bytes(a_path));
  const GridCsv b = read_grid_csv(load_bytes(b_path));
  if (a.corner_label != b.corner_label)
    throw std::invalid_argument("grid kind mismatch: '" + a.corner_label + "' vs '" +
                                b.corner_label + "'");
  if (a.header.size() != b.header.size())
    throw std::invalid_argument("direction count mismatch");
  if (a.rows.size() != b.rows.size())
    throw std::invalid_argument("row count mismatch");
  for (std::size_t i = 0; i < a.header.size(); ++i)
    if (std::abs(a.header[i] - b.header[i]) > 1e-12)
      throw std::invalid_argument("direction header mismatch at column " +
                                  std::to_string(i));
  for (std::size_t i = 0; i < a.col0.size(); ++i)
    if (std::abs(a.col0[i] - b.col0[i]) > 1e-12)
      throw std::invalid_argument("threshold column mismatch at row " + std::to_string(i));

  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      const double d = std::abs(a.rows[i][j] - b.rows[i][j]);
      acc = metric == "max" ? std::max(acc, d) : acc + d * d;
      ++count;
    }
  const double result =
      metric == "max" ? acc : (count == 0 ? 0.0 : std::sqrt(acc / count));
  std::cout << format_double(result) << "\n";
  return 0;
}

int cmd_align(const std::string& input, int binarize, const std::string& out) {
  const EmbeddedComplex k = load_complex(input, binarize);
  auto [aligned, report] = pca_align(k);
  write_file_atomic(out, write_simplex_list(aligned));

  std::vector<std::pair<std::string, std::string>> meta{
      {"command", "align"},
      {"input", input},
      {"translation", format_double(report.translation.x) + "," +
                          format_double(report.translation.y) + "," +
                          format_double(report.translation.z)},
  };
  for (int i = 0; i < 3; ++i)
    meta.emplace_back("rotation_row_" + std::to_string(i),
                      format_double(report.rotation.m[3 * i]) + "," +
                          format_double(report.rotation.m[3 * i + 1]) + "," +
                          format_double(report.rotation.m[3 * i + 2]));
  meta.emplace_back("axis_signs", std::to_string(report.axis_signs[0]) + "," +
                                      std::to_string(report.axis_signs[1]) + "," +
                                      std::to_string(report.axis_signs[2]));
  std::string ambiguous;
  for (int axis : report.ambiguous_axes)
    ambiguous += (ambiguous.empty() ? "" : ",") + std::to_string(axis);
  meta.emplace_back("ambiguous_axes", ambiguous.empty() ? "none" : ambiguous);
  meta.emplace_back("degenerate_eigenvalues",
                    report.degenerate_eigenvalues ? "true" : "false");
  write_file_atomic(out + ".meta", write_metadata(meta));
  return 0;
}

int cmd_validate(const std::string& input, int binarize) {
  const EmbeddedComplex k = load_complex(input, binarize);
  const auto violations = validate(k);
  bool errors = false;
  for (const Violation& v : violations) {
    std::cout << (v.severity == Severity::Error ? "error: " : "warning: ") << v.message
              << "\n";
    errors = errors || v.severity == Severity::Error;
  }
  if (errors) return 4;
  std::cout << "OK\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler characteristic transform toolkit"};
  app.require_subcommand(1);
  std::function<int()> run;

  // ecc
  {
    auto* cmd = app.add_subcommand("ecc", "Euler characteristic curve for one direction");
    auto args = std::make_shared<CommonShapeArgs>();
    auto angle = std::make_shared<std::string>();
    auto vector = std::make_shared<std::string>();
    cmd->add_option("input", args->input, "OFF, simplex-list, or PGM input")->required();
    cmd->add_option("--out", args->out, "breakpoint CSV path")->required();
    cmd->add_option("--angle", *angle, "direction angle in radians; pi fractions allowed");
    cmd->add_option("--vector", *vector, "direction vector, comma separated");
    cmd->add_option("--threshold", args->binarize, "binarization threshold for raster input");
    cmd->callback([&run, args, angle, vector] {
      run = [=] { return cmd_ecc(args->input, *angle, *vector, args->binarize, args->out); };
    });
  }

  // ect
  {
    auto* cmd = app.add_subcommand("ect", "Euler characteristic transform matrix");
    auto args = std::make_shared<CommonShapeArgs>();
    auto mode = std::make_shared<std::string>("global");
    add_shape_options(cmd, *args, true);
    cmd->add_option("--mode", *mode, "threshold mode: global or per-direction");
    cmd->callback([&run, args, mode] {
      run = [=] { return cmd_ect(*args, *mode); };
    });
  }

  // sect
  {
    auto* cmd = app.add_subcommand("sect", "smooth Euler characteristic transform");
    auto args = std::make_shared<CommonShapeArgs>();
    add_shape_options(cmd, *args, true);
    cmd->callback([&run, args] {
      run = [=] { return cmd_sect(*args); };
    });
  }

  // detect
  {
    auto* cmd = app.add_subcommand("detect", "direction-averaged transform for a series");
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto scheme = std::make_shared<std::string>();
    auto n = std::make_shared<int>(64);
    auto heights = std::make_shared<int>(33);
    auto binarize = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    auto pgm = std::make_shared<std::string>();
    cmd->add_option("inputs", *inputs, "shape inputs, one per time step")->required();
    cmd->add_option("--out", *out, "output CSV path")->required();
    cmd->add_option("--scheme", *scheme, "direction scheme: circle or fibonacci");
    cmd->add_option("-n,--directions", *n, "number of directions")->check(CLI::PositiveNumber);
    cmd->add_option("-H,--num-heights", *heights, "evaluation height count")
        ->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--threshold", *binarize, "binarization threshold for raster input");
    cmd->add_option("--pgm", *pgm, "also write a PGM heatmap here");
    cmd->callback([&run, inputs, scheme, n, heights, binarize, out, pgm] {
      run = [=] {
        return cmd_detect(*inputs, *scheme, *n, *heights, *binarize, *out, *pgm);
      };
    });
  }

  // lect
  {
    auto* cmd = app.add_subcommand("lect", "level-set transform of a grayscale image");
    auto input = std::make_shared<std::string>();
    auto angle = std::make_shared<std::string>();
    auto vector = std::make_shared<std::string>();
    auto height = std::make_shared<double>(0.0);
    auto level = std::make_shared<double>();
    auto enumerate_levels = std::make_shared<bool>(false);
    auto superlevel = std::make_shared<bool>(false);
    cmd->add_option("input", *input, "grayscale PGM input")->required();
    cmd->add_option("--angle", *angle, "direction angle in radians; pi fractions allowed");
    cmd->add_option("--vector", *vector, "direction vector, comma separated");
    cmd->add_option("--height", *height, "height cut h")->required();
    auto* level_opt = cmd->add_option("--level", *level, "function value t");
    cmd->add_flag("--enumerate-levels", *enumerate_levels,
                  "print chi for every attained vertex value");
    cmd->add_flag("--superlevel", *superlevel, "use the superlevel set (f >= t)");
    cmd->callback([&run, input, angle, vector, height, level, level_opt, enumerate_levels,
                   superlevel] {
      const bool has_level = level_opt->count() > 0;
      run = [=] {
        return cmd_lect(*input, *angle, *vector, *height,
                        has_level ? std::optional<double>(*level) : std::nullopt,
                        *enumerate_levels, *superlevel);
      };
    });
  }

  // dist
  {
    auto* cmd = app.add_subcommand("dist", "distance between two matrix CSV files");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("rms");
    cmd->add_option("a", *a, "first matrix CSV")->required();
    cmd->add_option("b", *b, "second matrix CSV")->required();
    cmd->add_option("--metric", *metric, "rms or max")
        ->check(CLI::IsMember({"rms", "max"}));
    cmd->callback([&run, a, b, metric] {
      run = [=] { return cmd_dist(*a, *b, *metric); };
    });
  }

  // align
  {
    auto* cmd = app.add_subcommand("align", "center and PCA-align a shape");
    auto input = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto binarize = std::make_shared<int>(1);
    cmd->add_option("input", *input, "OFF, simplex-list, or PGM input")->required();
    cmd->add_option("--out", *out, "aligned simplex-list output path")->required();
    cmd->add_option("--threshold", *binarize, "binarization threshold for raster input");
    cmd->callback([&run, input, out, binarize] {
      run = [=] { return cmd_align(*input, *binarize, *out); };
    });
  }

  // validate
  {
    auto* cmd = app.add_subcommand("validate", "check complex invariants");
    auto input = std::make_shared<std::string>();
    auto binarize = std::make_shared<int>(1);
    cmd->add_option("input", *input, "OFF, simplex-list, or PGM input")->required();
    cmd->add_option("--threshold", *binarize, "binarization threshold for raster input");
    cmd->callback([&run, input, binarize] {
      run = [=] { return cmd_validate(*input, *binarize); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    return run();
  } catch (const ect::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
