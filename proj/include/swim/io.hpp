// Plain-text artifacts: trajectory CSV, panel-mesh CSV, and the (t, s) CSV
// accepted by the cover analysis. All numeric output is printed with %.17g
// so reruns reproduce files byte for byte.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swim/boundary.hpp"
#include "swim/engine.hpp"

namespace swim {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Write t,alpha,theta,x,y rows; second-order trajectories append
/// omega,vx,vy (world-frame velocities).
inline void write_trajectory_csv(const std::string& path,
                                 const Trajectory& traj,
                                 bool with_velocity) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "t,alpha,theta,x,y";
  if (with_velocity) out << ",omega,vx,vy";
  out << "\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.s[0]) << ','
        << format_double(s.pose.theta) << ',' << format_double(s.pose.r.x())
        << ',' << format_double(s.pose.r.y());
    if (with_velocity)
      out << ',' << format_double(s.qdot[0]) << ','
          << format_double(s.qdot[1]) << ',' << format_double(s.qdot[2]);
    out << "\n";
  }
}

/// Panel mesh rows: x0,y0,x1,y1,nx,ny (normals point into the body).
inline void write_mesh_csv(const std::string& path, const BodyBoundary& b) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "x0,y0,x1,y1,nx,ny\n";
  for (const Panel& p : b.panels)
    out << format_double(p.p0.x()) << ',' << format_double(p.p0.y()) << ','
        << format_double(p.p1.x()) << ',' << format_double(p.p1.y()) << ','
        << format_double(p.normal.x()) << ',' << format_double(p.normal.y())
        << "\n";
}

/// Read a two-column (t, s) CSV; a leading header row is skipped. Extra
/// columns are ignored, so trajectory CSVs (t,alpha,...) load directly.
inline void read_ts_csv(const std::string& path, std::vector<double>& t,
                        std::vector<double>& s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  t.clear();
  s.clear();
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2)
      throw std::runtime_error(path + ": expected at least two columns");
    if (first) {
      first = false;
      try {
        (void)std::stod(cells[0]);
      } catch (const std::exception&) {
        continue;  // header row
      }
    }
    t.push_back(std::stod(cells[0]));
    s.push_back(std::stod(cells[1]));
  }
  if (t.size() < 2) throw std::runtime_error(path + ": too few samples");
}

}  // namespace swim
