#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhg/core.hpp"
#include "rhg/generator.hpp"

namespace rhg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that always reads back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// "# rhg alpha=<a> nu=<v> n=<n> seed=<s>"; values are copied as given.
inline std::string graph_header(const std::string& alpha, const std::string& nu,
                                const std::string& n, const std::string& seed) {
  return "# rhg alpha=" + alpha + " nu=" + nu + " n=" + n + " seed=" + seed;
}

inline void write_edge_list(std::ostream& out, const std::string& header,
                            std::span<const Edge> edges) {
  out << header << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

inline void write_nodes(std::ostream& out, const std::string& header,
                        std::span<const PolarPoint> points) {
  out << header << '\n';
  for (std::size_t i = 0; i < points.size(); ++i)
    out << i << ' ' << format_double(points[i].r) << ' ' << format_double(points[i].theta)
        << '\n';
}

struct EdgeListFile {
  std::string header;
  std::vector<Edge> edges;
};

struct NodeFile {
  std::string header;
  std::vector<PolarPoint> points;
};

inline EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (file.header.empty()) file.header = line;
      continue;
    }
    std::istringstream fields(line);
    Edge e;
    if (!(fields >> e.u >> e.v)) throw IoError("malformed edge line: " + line);
    file.edges.push_back(e);
  }
  return file;
}

inline NodeFile read_nodes(std::istream& in) {
  NodeFile file;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (file.header.empty()) file.header = line;
      continue;
    }
    std::istringstream fields(line);
    std::size_t id = 0;
    PolarPoint p;
    if (!(fields >> id >> p.r >> p.theta) || id != file.points.size())
      throw IoError("malformed node line: " + line);
    file.points.push_back(p);
  }
  return file;
}

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never sees a partially written file.
template <class Fill>
void write_file_atomic(const std::filesystem::path& path, Fill&& fill) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    try {
      fill(out);
      out.flush();
      if (!out) throw IoError("write failed: " + tmp.string());
    } catch (...) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

}  // namespace rhg
