#include "polygonflow/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polygonflow {

std::string format_real(double value) {
  std::array<char, 40> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::FormatError,
                "line " + std::to_string(line_no) + ": '" + std::string(field) + "' is not a number");
  }
  return value;
}

std::string svg_number(double v) {
  std::array<char, 40> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.9g", v);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

void write_polygon_csv(const Polygon& p, std::ostream& out) {
  out << "x,y\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << format_real(p.xs()[i]) << ',' << format_real(p.ys()[i]) << '\n';
  }
}

void write_polygon_csv(const Polygon& p, const std::string& path) {
  auto out = open_output(path);
  write_polygon_csv(p, out);
  finish(out, path);
}

Polygon read_polygon_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim_cr(line) != "x,y") {
    throw Error(ErrorCode::FormatError, "line 1: expected header 'x,y'");
  }
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::FormatError,
                  "line " + std::to_string(line_no) + ": expected two comma-separated fields");
    }
    xs.push_back(parse_real(row.substr(0, comma), line_no));
    ys.push_back(parse_real(row.substr(comma + 1), line_no));
  }
  if (xs.size() < 3) {
    throw Error(ErrorCode::FormatError,
                "polygon needs at least 3 vertices, file has " + std::to_string(xs.size()));
  }
  try {
    return Polygon(std::move(xs), std::move(ys));
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
}

Polygon read_polygon_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  return read_polygon_csv(in);
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  out << "k,i,x,y\n";
  for (std::size_t k = 0; k < trace.polygons.size(); ++k) {
    const Polygon& p = trace.polygons[k];
    for (std::size_t i = 0; i < p.size(); ++i) {
      out << k << ',' << i << ',' << format_real(p.xs()[i]) << ',' << format_real(p.ys()[i])
          << '\n';
    }
  }
}

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
  auto out = open_output(path);
  write_trace_csv(trace, out);
  finish(out, path);
}

SvgScene make_scene(const IterationTrace& trace) {
  static constexpr std::array<std::size_t, 8> kFrames{0, 1, 2, 5, 10, 25, 50, 100};
  SvgScene scene;
  for (std::size_t k : kFrames) {
    if (k < trace.polygons.size()) {
      scene.frames.push_back(k);
      scene.polygons.push_back(trace.polygons[k]);
    }
  }
  if (scene.polygons.empty()) throw Error(ErrorCode::ValidationError, "empty trace");
  BoundingBox box = bounding_interval(scene.polygons.front());
  const auto grow = [](Interval& iv) {
    double width = iv.hi - iv.lo;
    if (!(width > 0.0)) width = 1.0;
    iv.lo -= 0.05 * width;
    iv.hi += 0.05 * width;
  };
  grow(box.x);
  grow(box.y);
  scene.viewport = box;
  return scene;
}

void write_svg(const SvgScene& scene, std::ostream& out) {
  const BoundingBox& vp = scene.viewport;
  const double width = vp.x.hi - vp.x.lo;
  const double height = vp.y.hi - vp.y.lo;
  const double stroke = 0.004 * std::max(width, height);
  // y is flipped so the picture has the usual orientation.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
      << "viewBox=\"" << svg_number(vp.x.lo) << ' ' << svg_number(-vp.y.hi) << ' '
      << svg_number(width) << ' ' << svg_number(height) << "\">\n";
  const std::size_t count = scene.polygons.size();
  for (std::size_t f = 0; f < count; ++f) {
    const double opacity =
        count == 1 ? 1.0 : 0.2 + 0.8 * static_cast<double>(f) / static_cast<double>(count - 1);
    const Polygon& p = scene.polygons[f];
    out << "  <polygon data-k=\"" << scene.frames[f] << "\" fill=\"none\" stroke=\"#1f4e9c\" "
        << "stroke-width=\"" << svg_number(stroke) << "\" stroke-opacity=\""
        << svg_number(opacity) << "\" points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << svg_number(p.xs()[i]) << ',' << svg_number(-p.ys()[i]);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_svg(const SvgScene& scene, const std::string& path) {
  auto out = open_output(path);
  write_svg(scene, out);
  finish(out, path);
}

void write_text_file(const std::string& path, std::string_view text) {
  auto out = open_output(path);
  out << text;
  finish(out, path);
}

}  // namespace polygonflow
