#include "ect/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace ect {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Token scanner with line tracking; '#' starts a comment through end of line.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  void skip_separators() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (is_space(c)) {
        ++pos;
      } else if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_separators();
    return pos == text.size();
  }

  std::string_view token(const char* what) {
    skip_separators();
    if (pos == text.size()) throw ParseError(std::string("expected ") + what, line);
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '#') ++pos;
    return text.substr(start, pos - start);
  }

  double number(const char* what) {
    const std::string_view t = token(what);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
      throw ParseError("bad numeric token '" + std::string(t) + "' for " + what, line);
    return v;
  }

  long long integer(const char* what) {
    const std::string_view t = token(what);
    long long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw ParseError("bad integer token '" + std::string(t) + "' for " + what, line);
    return v;
  }
};

std::int32_t vertex_index(Cursor& c, std::size_t npoints, const char* what) {
  const long long v = c.integer(what);
  const int line = c.line;
  if (v < 0 || v >= static_cast<long long>(npoints))
    throw ParseError("vertex index " + std::to_string(v) + " out of range (have " +
                         std::to_string(npoints) + " vertices)",
                     line);
  return static_cast<std::int32_t>(v);
}

void reject_duplicates(std::vector<std::pair<Simplex, int>> seen) {
  std::sort(seen.begin(), seen.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first)
      throw ParseError("duplicate simplex after canonicalization", seen[i].second);
}

}  // namespace

EmbeddedComplex read_off(std::string_view text) {
  Cursor c{text};
  if (c.token("OFF header") != "OFF") throw ParseError("expected OFF header", c.line);
  const long long nv = c.integer("vertex count");
  const long long nf = c.integer("face count");
  c.integer("edge count");  // ignored, as is conventional
  if (nv < 0 || nf < 0) throw ParseError("negative count in OFF header", c.line);

  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(nv));
  bool flat = true;
  for (long long i = 0; i < nv; ++i) {
    const double x = c.number("x coordinate");
    const double y = c.number("y coordinate");
    const double z = c.number("z coordinate");
    flat = flat && z == 0.0;
    points.push_back({x, y, z});
  }
  const int ambient = flat ? 2 : 3;

  std::vector<std::pair<Simplex, int>> faces;
  for (long long f = 0; f < nf; ++f) {
    const long long cnt = c.integer("face vertex count");
    const int record_line = c.line;
    if (cnt < 1) throw ParseError("face must list at least one vertex", record_line);
    std::vector<std::int32_t> ids;
    ids.reserve(static_cast<std::size_t>(cnt));
    for (long long i = 0; i < cnt; ++i)
      ids.push_back(vertex_index(c, points.size(), "face vertex"));
    try {
      if (cnt <= 3) {
        faces.emplace_back(Simplex(std::span<const std::int32_t>(ids)), record_line);
      } else {
        for (std::size_t i = 1; i + 1 < ids.size(); ++i)  // fan from the first vertex
          faces.emplace_back(Simplex{ids[0], ids[i], ids[i + 1]}, record_line);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), record_line);
    }
  }
  reject_duplicates(faces);

  std::vector<Simplex> simplices;
  simplices.reserve(faces.size());
  for (auto& [s, l] : faces) simplices.push_back(s);
  return build_complex(ambient, std::move(points), simplices);
}

EmbeddedComplex read_simplex_list(std::string_view text) {
  Cursor c{text};
  std::vector<Vec3> points;
  std::vector<std::pair<Simplex, int>> records;
  int ambient = 0;

  while (!c.at_end()) {
    const std::string_view tag = c.token("record tag");
    const int record_line = c.line;
    if (tag == "v") {
      const double x = c.number("x coordinate");
      const double y = c.number("y coordinate");
      // A third coordinate is present exactly when the file is 3-dimensional;
      // the first vertex line fixes the convention.
      if (ambient == 0) {
        c.skip_separators();
        const std::size_t save_pos = c.pos;
        const int save_line = c.line;
        bool has_z = false;
        if (!c.at_end()) {
          const std::string_view peek = c.token("coordinate");
          has_z = peek != "v" && peek != "s";
          c.pos = save_pos;
          c.line = save_line;
        }
        ambient = has_z ? 3 : 2;
      }
      const double z = ambient == 3 ? c.number("z coordinate") : 0.0;
      if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw ParseError("nonfinite coordinate", record_line);
      points.push_back({x, y, z});
    } else if (tag == "s") {
      if (points.empty()) throw ParseError("simplex record before any vertex", record_line);
      std::vector<std::int32_t> ids;
      ids.push_back(vertex_index(c, points.size(), "simplex vertex"));
      ids.push_back(vertex_index(c, points.size(), "simplex vertex"));
      // Up to two optional trailing indices.
      for (int extra = 0; extra < 2; ++extra) {
        c.skip_separators();
        if (c.pos == c.text.size()) break;
        const std::size_t save_pos = c.pos;
        const int save_line = c.line;
        const std::string_view peek = c.token("token");
        if (peek == "v" || peek == "s") {
          c.pos = save_pos;
          c.line = save_line;
          break;
        }
        c.pos = save_pos;
        c.line = save_line;
        ids.push_back(vertex_index(c, points.size(), "simplex vertex"));
      }
      try {
        records.emplace_back(Simplex(std::span<const std::int32_t>(ids)), record_line);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), record_line);
      }
      if (records.back().first.dimension() > (ambient == 0 ? 2 : ambient))
        throw ParseError("simplex dimension above ambient dimension", record_line);
    } else {
      throw ParseError("unknown record tag '" + std::string(tag) + "'", record_line);
    }
  }
  if (points.empty() && records.empty()) return {};
  if (ambient == 0) ambient = 2;

  reject_duplicates(records);
  std::vector<Simplex> simplices;
  simplices.reserve(records.size() + points.size());
  // Every declared vertex takes part as a 0-simplex.
  for (std::size_t i = 0; i < points.size(); ++i)
    simplices.push_back({static_cast<std::int32_t>(i)});
  for (auto& [s, l] : records) simplices.push_back(s);
  return build_complex(ambient, std::move(points), simplices);
}

std::string write_simplex_list(const EmbeddedComplex& k) {
  std::string out;
  for (const Vec3& p : k.points()) {
    out += "v " + format_double(p.x) + " " + format_double(p.y);
    if (k.ambient_dim() == 3) out += " " + format_double(p.z);
    out += "\n";
  }
  for (const Simplex& s : k.simplices()) {
    if (s.dimension() == 0) continue;  // implied by the vertex lines
    out += "s";
    for (std::int32_t v : s.vertices()) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

RasterImage read_pgm(std::string_view bytes) {
  Cursor c{bytes};
  const std::string_view magic = c.token("PGM magic");
  if (magic != "P2" && magic != "P5") throw ParseError("expected P2 or P5 magic", c.line);
  const long long w = c.integer("width");
  const long long h = c.integer("height");
  const long long maxval = c.integer("maxval");
  if (w < 1 || h < 1) throw ParseError("image dimensions must be positive", c.line);
  if (maxval < 1 || maxval > 65535) throw ParseError("maxval out of range", c.line);

  RasterImage img;
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  img.values.reserve(count);

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const long long v = c.integer("pixel value");
      if (v < 0 || v > maxval) throw ParseError("pixel value out of range", c.line);
      img.values.push_back(static_cast<int>(v));
    }
  } else {
    if (maxval > 255) throw ParseError("binary PGM supports maxval up to 255", c.line);
    if (c.pos >= bytes.size() || !is_space(bytes[c.pos]))
      throw ParseError("expected whitespace before binary pixel data", c.line);
    ++c.pos;  // exactly one separator byte, then raw data
    if (bytes.size() - c.pos < count)
      throw ParseError("truncated binary pixel data", c.line);
    for (std::size_t i = 0; i < count; ++i)
      img.values.push_back(static_cast<unsigned char>(bytes[c.pos + i]));
  }
  return img;
}

std::string write_pgm(const RasterImage& image) {
  std::string out = "P2\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n" + std::to_string(image.maxval) +
                    "\n";
  std::size_t line_len = 0;
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    const std::string v = std::to_string(image.values[i]);
    if (line_len != 0 && line_len + 1 + v.size() > 70) {
      out += "\n";
      line_len = 0;
    }
    if (line_len != 0) {
      out += " ";
      ++line_len;
    }
    out += v;
    line_len += v.size();
  }
  if (line_len != 0) out += "\n";
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string write_ecc_csv(const EulerCurve& curve) {
  std::string out = "a,chi\n";
  for (const CurveStep& s : curve.steps())
    out += format_double(s.a) + "," + std::to_string(s.chi) + "\n";
  return out;
}

std::string write_matrix_csv(const EctMatrix& m) {
  const bool planar = !m.direction_angles.empty();
  const bool global = m.mode == ThresholdMode::Global;
  std::string out = global ? "threshold" : "threshold_index";
  for (std::size_t j = 0; j < m.directions.size(); ++j)
    out += "," + (planar ? format_double(m.direction_angles[j]) : std::to_string(j));
  out += "\n";
  for (int i = 0; i < m.num_thresholds; ++i) {
    out += global ? format_double(m.threshold(i, 0)) : std::to_string(i);
    for (std::size_t j = 0; j < m.directions.size(); ++j)
      out += "," + std::to_string(m.at(i, static_cast<int>(j)));
    out += "\n";
  }
  return out;
}

std::string write_grid_csv(const std::string& corner_label,
                           const std::vector<double>& header,
                           const std::vector<double>& col0,
                           const std::vector<std::vector<double>>& rows) {
  std::string out = corner_label;
  for (double h : header) out += "," + format_double(h);
  out += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += format_double(col0[i]);
    for (double v : rows[i]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

GridCsv read_grid_csv(std::string_view text) {
  GridCsv grid;
  int line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string_view::npos
                                             ? std::string_view::npos
                                             : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    auto cell_value = [&](std::string_view cell) {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size())
        throw ParseError("bad numeric cell '" + std::string(cell) + "'", line_no);
      return v;
    };

    if (!have_header) {
      grid.corner_label = std::string(cells[0]);
      for (std::size_t i = 1; i < cells.size(); ++i)
        grid.header.push_back(cell_value(cells[i]));
      have_header = true;
      continue;
    }
    if (cells.size() != grid.header.size() + 1)
      throw ParseError("row has " + std::to_string(cells.size() - 1) +
                           " entries, expected " + std::to_string(grid.header.size()),
                       line_no);
    grid.col0.push_back(cell_value(cells[0]));
    grid.rows.emplace_back();
    for (std::size_t i = 1; i < cells.size(); ++i)
      grid.rows.back().push_back(cell_value(cells[i]));
  }
  if (grid.header.empty() && grid.rows.empty())
    throw ParseError("empty matrix file", 1);
  return grid;
}

RasterImage heatmap(const std::vector<std::vector<double>>& rows, int maxval,
                    double& out_min, double& out_max) {
  RasterImage img;
  img.maxval = maxval;
  img.height = static_cast<int>(rows.size());
  img.width = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  out_min = 0.0;
  out_max = 0.0;
  if (rows.empty()) return img;

  out_min = out_max = rows[0][0];
  for (const auto& row : rows)
    for (double v : row) {
      out_min = std::min(out_min, v);
      out_max = std::max(out_max, v);
    }
  const double span = out_max - out_min;
  img.values.reserve(static_cast<std::size_t>(img.width) * img.height);
  for (std::size_t i = rows.size(); i-- > 0;)  // last row on top
    for (double v : rows[i])
      img.values.push_back(
          span == 0.0 ? 0
                      : static_cast<int>(std::llround((v - out_min) / span * maxval)));
  return img;
}

std::string write_directions_csv(const DirectionSet& set) {
  std::string out;
  for (const Direction& d : set.samples) {
    out += format_double(d.vector().x) + "," + format_double(d.vector().y);
    if (set.ambient_dim == 3) out += "," + format_double(d.vector().z);
    out += "\n";
  }
  return out;
}

std::string write_metadata(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("failed renaming " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace ect
