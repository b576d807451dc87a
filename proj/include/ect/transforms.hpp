#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ect/filtration.hpp"
#include "ect/image.hpp"

namespace ect {

enum class ThresholdMode { Global, PerDirection };

// Direction-by-threshold grid of Euler characteristics. Row i holds threshold
// index i (lowest first); column j holds direction j. Global mode spaces T
// thresholds over [-R, R]; per-direction mode spaces them over the vertex
// height range of each direction, with a degenerate range (flat shape viewed
// edge-on) yielding a constant column. Threshold lookups carry an absolute
// slack of 1e-9 * (1 + R) so heights that coincide with a threshold up to
// roundoff land on it deterministically.
struct EctMatrix {
  std::vector<Direction> directions;
  std::vector<double> direction_angles;  // filled for planar direction sets
  ThresholdMode mode = ThresholdMode::Global;
  int num_thresholds = 0;
  double radius = 0.0;
  std::vector<std::pair<double, double>> ranges;  // per-direction mode only
  std::vector<int> entries;                       // row-major, T x N

  int at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * directions.size() +
                   static_cast<std::size_t>(j)];
  }
  double threshold(int i, int j) const;
};

// radius_override widens the grid domain (it may not shrink below the complex
// radius); it exists so several shapes can be placed on one common grid and
// so a degenerate R = 0 input can be given a usable domain.
EctMatrix ect_matrix(const EmbeddedComplex& k, const std::vector<Direction>& directions, int T,
              ThresholdMode mode, std::optional<double> radius_override = {});

struct Knot {
  double t;
  double value;
};

// Continuous piecewise-linear function on [-R, R] stored as sorted knots.
class SmoothCurve {
 public:
  SmoothCurve() = default;
  explicit SmoothCurve(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const { return knots_; }
  bool empty() const { return knots_.empty(); }
  double value(double t) const;  // clamps outside the knot span

 private:
  std::vector<Knot> knots_;
};

// Integrated mean-centered curve: t -> integral over [-R, t] of
// (ecc(a) - mean) da, with mean = integral of ecc over [-R, R] / (2R).
// Exact on the step structure; vanishes at both endpoints up to roundoff.
SmoothCurve sect_curve(const EulerCurve& curve, double radius);

struct SectResult {
  std::vector<Direction> directions;
  double radius = 0.0;
  std::vector<SmoothCurve> curves;  // one per direction
};

// Per-direction smoothed curves. A zero effective radius (empty complex or
// lone vertex at the origin) is replaced by 1 so the domain is usable.
SectResult sect(const EmbeddedComplex& k, const std::vector<Direction>& directions,
                std::optional<double> radius_override = {});

// Samples every curve at T global thresholds in [-R, R]; rows follow
// thresholds, columns follow directions.
std::vector<std::vector<double>> sample_sect(const SectResult& s, int T);

// Direction-averaged smoothed curves for a shape series, evaluated at fixed
// heights: values[s][x] = mean over directions of SECC for shape s at height
// x. The average (not the sphere-measure integral) keeps the scale
// independent of the direction count. All shapes share one radius, the max
// over the series.
struct DetectSurface {
  int num_directions = 0;
  double radius = 0.0;
  std::vector<double> eval_heights;
  std::vector<std::vector<double>> values;
};

DetectSurface detect(const std::vector<EmbeddedComplex>& series,
                     const std::vector<Direction>& directions,
                     const std::vector<double>& eval_heights);

// Level-set and superlevel-set restrictions of a vertex-sampled field: a
// simplex is kept when every vertex value equals t within 1e-9 (level) or is
// at least t - 1e-9 (superlevel) and its height in direction v is at most h.
// The kept set is face-closed by construction.
EmbeddedComplex level_restriction(const ScalarField& field, const Direction& v, double h,
                                  double t);
EmbeddedComplex superlevel_restriction(const ScalarField& field, const Direction& v,
                                       double h, double t);
int lect(const ScalarField& field, const Direction& v, double h, double t);
int select(const ScalarField& field, const Direction& v, double h, double t);

}  // namespace ect
