#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

/// Formats a double with 17 significant digits ("%.17g").
std::string format_real(double value);

// Polygon CSV: header "x,y", one vertex per line. Trace CSV: header "k,i,x,y".
void write_polygon_csv(const Polygon& p, std::ostream& out);
void write_polygon_csv(const Polygon& p, const std::string& path);
Polygon read_polygon_csv(std::istream& in);
Polygon read_polygon_csv(const std::string& path);

void write_trace_csv(const IterationTrace& trace, std::ostream& out);
void write_trace_csv(const IterationTrace& trace, const std::string& path);

struct SvgScene {
  std::vector<std::size_t> frames;
  std::vector<Polygon> polygons;
  /// k = 0 bounding box grown by 5% on every side.
  BoundingBox viewport;
};

/// Frames {0, 1, 2, 5, 10, 25, 50, 100} that exist in the trace.
SvgScene make_scene(const IterationTrace& trace);
void write_svg(const SvgScene& scene, std::ostream& out);
void write_svg(const SvgScene& scene, const std::string& path);

/// Writes text to path, throwing IoError on failure.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace polygonflow
