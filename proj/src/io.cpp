#include "ndstore/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nds {

void export_csv(std::span<const ParetoElement> elems, std::ostream& os) {
  os << "kind,x1,y1,x2,y2\n";
  char buf[160];
  for (const auto& e : elems) {
    std::snprintf(buf, sizeof buf, "%c,%.12g,%.12g,%.12g,%.12g\n",
                  e.is_point() ? 'P' : 'S', e.x1, e.y1, e.x2, e.y2);
    os << buf;
  }
}

std::vector<ParetoElement> import_csv(std::istream& is) {
  std::vector<ParetoElement> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("kind", 0) == 0) continue;
    }
    std::istringstream ss(line);
    std::string kind, f[4];
    if (!std::getline(ss, kind, ',')) continue;
    for (auto& s : f)
      if (!std::getline(ss, s, ','))
        throw std::runtime_error("import_csv: malformed line: " + line);
    double x1 = std::stod(f[0]), y1 = std::stod(f[1]);
    double x2 = std::stod(f[2]), y2 = std::stod(f[3]);
    if (kind == "P")
      out.push_back(ParetoElement::point(x1, y1));
    else if (kind == "S")
      out.push_back(ParetoElement::segment(x1, y1, x2, y2));
    else
      throw std::runtime_error("import_csv: unknown kind: " + kind);
  }
  return out;
}

void write_svg(std::span<const ParetoElement> elems, std::ostream& os) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!elems.empty()) {
    xmin = ymin = 1e300;
    xmax = ymax = -1e300;
    for (const auto& e : elems) {
      xmin = std::min(xmin, e.x1);
      xmax = std::max(xmax, e.x2);
      ymin = std::min(ymin, e.y2);
      ymax = std::max(ymax, e.y1);
    }
  }
  double padx = std::max(1e-6, (xmax - xmin) * 0.05);
  double pady = std::max(1e-6, (ymax - ymin) * 0.05);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;
  const double w = 800, h = 600;
  auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * w; };
  auto sy = [&](double y) { return h - (y - ymin) / (ymax - ymin) * h; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (const auto& e : elems) {
    if (e.is_point()) {
      os << "<circle cx=\"" << sx(e.x1) << "\" cy=\"" << sy(e.y1)
         << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    } else {
      os << "<line x1=\"" << sx(e.x1) << "\" y1=\"" << sy(e.y1) << "\" x2=\""
         << sx(e.x2) << "\" y2=\"" << sy(e.y2)
         << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace nds
