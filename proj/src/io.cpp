#include "boxtherm/io.hpp"

#include <cstdio>
#include <fstream>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  return out;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vtk_header(std::ofstream& out, const char* title,
                      const Mesh& mesh) {
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertex_count() << " double\n";
  for (const Vec2& p : mesh.vertices)
    out << g17(p.x) << ' ' << g17(p.y) << " 0\n";
}

} // namespace

void write_vtk_mesh(const std::string& path, const Mesh& mesh,
                    const std::vector<std::pair<std::string, std::vector<double>>>&
                        point_fields) {
  std::ofstream out = open_out(path);
  write_vtk_header(out, "primal triangulation", mesh);
  const int nt = mesh.triangle_count();
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles)
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t) out << "5\n";

  if (!point_fields.empty()) {
    out << "POINT_DATA " << mesh.vertex_count() << '\n';
    for (const auto& [name, values] : point_fields) {
      if (static_cast<int>(values.size()) != mesh.vertex_count())
        throw Error("write_vtk_mesh: field size mismatch for " + name);
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : values) out << g17(v) << '\n';
    }
  }
}

void write_vtk_boxes(const std::string& path, const Mesh& mesh,
                     const DualMesh& dual) {
  std::vector<std::vector<Vec2>> polys;
  polys.reserve(mesh.vertices.size());
  size_t npoints = 0;
  for (int p = 0; p < mesh.vertex_count(); ++p) {
    polys.push_back(box_polygon(mesh, dual, p));
    npoints += polys.back().size();
  }

  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\nbox dual mesh\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << npoints << " double\n";
  for (const auto& poly : polys)
    for (const Vec2& p : poly) out << g17(p.x) << ' ' << g17(p.y) << " 0\n";

  out << "CELLS " << polys.size() << ' ' << npoints + polys.size() << '\n';
  size_t base = 0;
  for (const auto& poly : polys) {
    out << poly.size();
    for (size_t i = 0; i < poly.size(); ++i) out << ' ' << base + i;
    out << '\n';
    base += poly.size();
  }
  out << "CELL_TYPES " << polys.size() << '\n';
  for (size_t i = 0; i < polys.size(); ++i) out << "7\n";

  out << "CELL_DATA " << polys.size() << '\n';
  out << "SCALARS box_area double 1\nLOOKUP_TABLE default\n";
  for (double a : dual.box_area) out << g17(a) << '\n';
}

void write_trajectory_csv(const std::string& path, const Mesh& mesh,
                          const Trajectory& traj) {
  if (traj.mesh_id != mesh.id)
    throw Error("write_trajectory_csv: trajectory is not on this mesh");
  std::ofstream out = open_out(path);
  out << "t,vertex_index,x,y,value\n";
  for (size_t n = 0; n < traj.times.size(); ++n) {
    const std::string t = g17(traj.times[n]);
    for (int p = 0; p < mesh.vertex_count(); ++p) {
      const Vec2 x = mesh.point(p);
      out << t << ',' << p << ',' << g17(x.x) << ',' << g17(x.y) << ','
          << g17(traj.snapshots[n][p]) << '\n';
    }
  }
}

void write_error_report_csv(const std::string& path,
                            const ErrorReport& report) {
  std::ofstream out = open_out(path);
  out << "level,h,tau,err_linf_l2,err_l2_h1,err_linf_h1\n";
  for (const LevelErrors& l : report.levels)
    out << l.level << ',' << g17(l.h) << ',' << g17(l.tau) << ','
        << g17(l.err_linf_l2) << ',' << g17(l.err_l2_h1) << ','
        << g17(l.err_linf_h1) << '\n';
  out << "# rates: linf_l2=" << g17(report.rate_linf_l2)
      << " l2_h1=" << g17(report.rate_l2_h1)
      << " linf_h1=" << g17(report.rate_linf_h1) << '\n';
}

void write_matrix_coo(const std::string& path, const SparseMatrix& m) {
  std::ofstream out = open_out(path);
  for (int r = 0; r < m.rows; ++r)
    for (int k = m.row_offsets[static_cast<size_t>(r)];
         k < m.row_offsets[static_cast<size_t>(r) + 1]; ++k)
      out << r << ' ' << m.col_index[static_cast<size_t>(k)] << ' '
          << g17(m.values[static_cast<size_t>(k)]) << '\n';
}

} // namespace boxtherm
