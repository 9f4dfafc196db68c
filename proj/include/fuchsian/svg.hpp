#pragma once
// Deterministic SVG rendering of a Ford domain: the unit circle, the boundary
// arcs, the polygon vertices, and (when cycles have been computed) the fixed
// points of the elliptic cycles with their orders.  Output depends only on
// the domain contents - fixed six-decimal formatting, fixed iteration order -
// so repeated renders are byte-identical.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>

#include "fuchsian/errors.hpp"
#include "fuchsian/ford.hpp"

namespace fuchsian {

namespace detail {

inline std::string svg_num(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;  // avoid "-0.000000"
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace detail

inline std::string render_svg_text(const FordDomain& D) {
  using detail::svg_num;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.08 -1.08 2.16 "
       "2.16\" width=\"640\" height=\"640\">\n";
  s += "<g transform=\"scale(1,-1)\">\n";
  s += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbbbbb\" "
       "stroke-width=\"0.004\"/>\n";

  // Boundary arcs.  Each runs clockwise around its own circle center (the
  // domain lies outside the circle), which is SVG sweep flag 0 in this
  // y-flipped frame... the flag is computed from the actual angular span so
  // the path follows the short way around regardless.
  for (const auto& arc : D.arcs) {
    double a0 = std::arg(arc.z0 - arc.center);
    double a1 = std::arg(arc.z1 - arc.center);
    double span = a0 - a1;
    const double tau = 6.283185307179586476925286766559;
    while (span < 0) span += tau;
    int large = span > tau / 2 ? 1 : 0;
    s += "<path d=\"M " + svg_num(arc.z0.real()) + " " +
         svg_num(arc.z0.imag()) + " A " + svg_num(arc.radius) + " " +
         svg_num(arc.radius) + " 0 " + std::to_string(large) + " 0 " +
         svg_num(arc.z1.real()) + " " + svg_num(arc.z1.imag()) +
         "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.006\"/>\n";
  }

  for (const auto& arc : D.arcs)
    s += "<circle cx=\"" + svg_num(arc.z0.real()) + "\" cy=\"" +
         svg_num(arc.z0.imag()) +
         "\" r=\"0.010\" fill=\"#1f4e9c\" stroke=\"none\"/>\n";

  for (const auto& cyc : D.cycles) {
    if (cyc.order <= 1) continue;
    s += "<circle cx=\"" + svg_num(cyc.vertex.real()) + "\" cy=\"" +
         svg_num(cyc.vertex.imag()) +
         "\" r=\"0.016\" fill=\"#c03020\" stroke=\"none\"/>\n";
    s += "<text x=\"" + svg_num(cyc.vertex.real() + 0.025) + "\" y=\"" +
         svg_num(-(cyc.vertex.imag() + 0.025)) +
         "\" font-size=\"0.06\" fill=\"#c03020\" transform=\"scale(1,-1)\">" +
         std::to_string(cyc.order) + "</text>\n";
  }

  s += "</g>\n</svg>\n";
  return s;
}

inline void render_svg(const FordDomain& D, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  std::string body = render_svg_text(D);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace fuchsian
