#pragma once

#include <string>
#include <vector>

#include "ppt/survey.hpp"

namespace ppt {

/// Rank diagram of a survey: one marker per populated (m, n), mirrored across
/// the diagonal, plus the four guide families computed from the dimensions:
/// the HLVC lines m, n = max(N_A,N_B)+1, the conjectured extremal-bound
/// dashed lines m, n = N_A+N_B-2, the extremity arc m^2+n^2 = N^2+1 and the
/// separability-criterion diagonal m+n = 2N-N_A-N_B+2.
struct RankDiagram {
  enum class Marker { separable_green, extremal_red_dot, nonextremal_red_circle };

  struct Point {
    RankPair mn;
    Marker marker;
  };

  BipartiteDims dims{1, 1};
  std::vector<Point> points;
  int hlvc_line = 0;
  int conjecture_line = 0;
  int arc_radius_sq = 0;
  int criterion_sum = 0;
  bool conjecture_drawn = false;  // hidden when it falls below the HLVC line
};

RankDiagram diagram_from_table(const SurveyResult& table);

/// Static SVG 1.1.
std::string render_svg(const RankDiagram& diagram);

/// Fixed-width character grid (golden-file friendly): rows n = N..1, columns
/// m = 1..N. 'E' extremal (red dot), 'O' non-extremal, 'S' separable family,
/// guide overlays '|', '-', '+' (HLVC), '!', '=' (conjecture), '/'
/// (criterion diagonal), '*' (extremity arc boundary), '.' empty.
std::string render_txt(const RankDiagram& diagram);

}  // namespace ppt
