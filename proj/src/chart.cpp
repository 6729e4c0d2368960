#include "ppt/chart.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace ppt {

namespace {

int marker_strength(RankDiagram::Marker m) {
  switch (m) {
    case RankDiagram::Marker::extremal_red_dot: return 2;
    case RankDiagram::Marker::nonextremal_red_circle: return 1;
    case RankDiagram::Marker::separable_green: return 0;
  }
  return 0;
}

}  // namespace

RankDiagram diagram_from_table(const SurveyResult& table) {
  RankDiagram d;
  d.dims = table.dims;
  const int big = std::max(d.dims.na, d.dims.nb);
  d.hlvc_line = big + 1;
  d.conjecture_line = d.dims.na + d.dims.nb - 2;
  d.arc_radius_sq = d.dims.n() * d.dims.n() + 1;
  d.criterion_sum = 2 * d.dims.n() - d.dims.na - d.dims.nb + 2;
  d.conjecture_drawn = d.conjecture_line >= d.hlvc_line;

  std::map<std::pair<int, int>, RankDiagram::Marker> markers;
  for (const SurveyRow& row : table.rows) {
    RankDiagram::Marker marker;
    if (row.dim_f == 1 && row.rank_a == d.dims.na && row.rank_b == d.dims.nb)
      marker = RankDiagram::Marker::extremal_red_dot;
    else if (row.verdict == "separable_with_decomposition")
      marker = RankDiagram::Marker::separable_green;
    else
      marker = RankDiagram::Marker::nonextremal_red_circle;
    // Searches only run m >= n; the diagram is symmetric under m <-> n.
    for (auto [m, n] : {std::pair{row.ranks.m, row.ranks.n}, std::pair{row.ranks.n, row.ranks.m}}) {
      auto [it, inserted] = markers.try_emplace({m, n}, marker);
      if (!inserted && marker_strength(marker) > marker_strength(it->second)) it->second = marker;
    }
  }
  for (const auto& [mn, marker] : markers) d.points.push_back({{mn.first, mn.second}, marker});
  return d;
}

std::string render_svg(const RankDiagram& d) {
  const int n = d.dims.n();
  const double unit = 40.0, margin = 60.0;
  const double size = margin * 2 + unit * (n + 1);
  auto px = [&](double m) { return margin + m * unit; };
  auto py = [&](double v) { return size - margin - v * unit; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
      << "\" height=\"" << size << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(n + 0.5)
      << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
      << py(n + 0.5) << "\" stroke=\"black\"/>\n";
  for (int i = 1; i <= n; ++i) {
    svg << "  <text x=\"" << px(i) - 4 << "\" y=\"" << py(0) + 18 << "\" font-size=\"12\">" << i
        << "</text>\n";
    svg << "  <text x=\"" << px(0) - 22 << "\" y=\"" << py(i) + 4 << "\" font-size=\"12\">" << i
        << "</text>\n";
  }
  svg << "  <text x=\"" << px(n / 2.0) << "\" y=\"" << size - 12
      << "\" font-size=\"14\">m = rank of rho</text>\n";
  svg << "  <text x=\"12\" y=\"" << py(n / 2.0)
      << "\" font-size=\"14\" transform=\"rotate(-90 12 " << py(n / 2.0)
      << ")\">n = rank of rho^P</text>\n";

  // HLVC lines (solid red)
  svg << "  <line x1=\"" << px(d.hlvc_line) << "\" y1=\"" << py(0.5) << "\" x2=\""
      << px(d.hlvc_line) << "\" y2=\"" << py(n + 0.5) << "\" stroke=\"red\"/>\n";
  svg << "  <line x1=\"" << px(0.5) << "\" y1=\"" << py(d.hlvc_line) << "\" x2=\"" << px(n + 0.5)
      << "\" y2=\"" << py(d.hlvc_line) << "\" stroke=\"red\"/>\n";
  // conjectured extremal bound (dashed red), absent when below the HLVC line
  if (d.conjecture_drawn) {
    svg << "  <line x1=\"" << px(d.conjecture_line) << "\" y1=\"" << py(0.5) << "\" x2=\""
        << px(d.conjecture_line) << "\" y2=\"" << py(n + 0.5)
        << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";
    svg << "  <line x1=\"" << px(0.5) << "\" y1=\"" << py(d.conjecture_line) << "\" x2=\""
        << px(n + 0.5) << "\" y2=\"" << py(d.conjecture_line)
        << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";
  }
  // extremity arc m^2 + n^2 = N^2 + 1
  {
    const double r = std::sqrt(static_cast<double>(d.arc_radius_sq));
    const double m0 = std::sqrt(std::max(0.0, static_cast<double>(d.arc_radius_sq) - n * n));
    svg << "  <path d=\"M " << px(m0) << ' ' << py(n) << " A " << r * unit << ' ' << r * unit
        << " 0 0 1 " << px(n) << ' ' << py(m0) << "\" fill=\"none\" stroke=\"red\"/>\n";
  }
  // separability criterion diagonal (dashed green)
  {
    const double s = d.criterion_sum;
    svg << "  <line x1=\"" << px(std::max(0.5, s - n - 0.5)) << "\" y1=\""
        << py(std::min<double>(n + 0.5, s - 0.5)) << "\" x2=\"" << px(std::min<double>(n + 0.5, s - 0.5))
        << "\" y2=\"" << py(std::max(0.5, s - n - 0.5))
        << "\" stroke=\"green\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (const RankDiagram::Point& pt : d.points) {
    const double cx = px(pt.mn.m), cy = py(pt.mn.n);
    switch (pt.marker) {
      case RankDiagram::Marker::extremal_red_dot:
        svg << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"6\" fill=\"red\"/>\n";
        break;
      case RankDiagram::Marker::nonextremal_red_circle:
        svg << "  <circle cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"6\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
        break;
      case RankDiagram::Marker::separable_green:
        svg << "  <circle cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"6\" fill=\"none\" stroke=\"green\" stroke-width=\"2\"/>\n";
        break;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_txt(const RankDiagram& d) {
  const int n = d.dims.n();
  std::vector<std::string> grid(static_cast<std::size_t>(n), std::string(static_cast<std::size_t>(n), '.'));
  auto at = [&](int m, int v) -> char& {
    return grid[static_cast<std::size_t>(n - v)][static_cast<std::size_t>(m - 1)];
  };

  for (int m = 1; m <= n; ++m)
    for (int v = 1; v <= n; ++v) {
      char& c = at(m, v);
      const bool on_hlvc_m = m == d.hlvc_line, on_hlvc_n = v == d.hlvc_line;
      if (on_hlvc_m && on_hlvc_n)
        c = '+';
      else if (on_hlvc_m)
        c = '|';
      else if (on_hlvc_n)
        c = '-';
      else if (d.conjecture_drawn && m == d.conjecture_line)
        c = '!';
      else if (d.conjecture_drawn && v == d.conjecture_line)
        c = '=';
      else if (m + v == d.criterion_sum)
        c = '/';
      else if (m * m + v * v <= d.arc_radius_sq && (m + 1) * (m + 1) + v * v > d.arc_radius_sq &&
               m * m + (v + 1) * (v + 1) > d.arc_radius_sq)
        c = '*';
    }

  for (const RankDiagram::Point& pt : d.points) {
    char marker = 'O';
    if (pt.marker == RankDiagram::Marker::extremal_red_dot) marker = 'E';
    if (pt.marker == RankDiagram::Marker::separable_green) marker = 'S';
    at(pt.mn.m, pt.mn.n) = marker;
  }

  std::ostringstream out;
  out << "# " << d.dims.na << "x" << d.dims.nb << " rank diagram (m across, n up)\n";
  out << "# E extremal, O non-extremal, S separable; | - + HLVC " << d.hlvc_line;
  if (d.conjecture_drawn) out << ", ! = conjecture " << d.conjecture_line;
  out << ", / criterion m+n=" << d.criterion_sum << ", * arc m^2+n^2<=" << d.arc_radius_sq << "\n";
  for (int v = n; v >= 1; --v) {
    out << (v < 10 ? " " : "") << v << " ";
    for (int m = 1; m <= n; ++m) out << at(m, v) << ' ';
    out << '\n';
  }
  out << "   ";
  for (int m = 1; m <= n; ++m) out << (m % 10) << ' ';
  out << '\n';
  return out.str();
}

}  // namespace ppt
