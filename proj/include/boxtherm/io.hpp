#pragma once

#include <string>
#include <utility>
#include <vector>

#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/solver.hpp"
#include "boxtherm/sparse.hpp"
#include "boxtherm/verification.hpp"

namespace boxtherm {

// Legacy ASCII VTK writers. Numbers use %.17g so outputs round-trip and are
// byte-stable across runs.
void write_vtk_mesh(const std::string& path, const Mesh& mesh,
                    const std::vector<std::pair<std::string, std::vector<double>>>&
                        point_fields = {});
void write_vtk_boxes(const std::string& path, const Mesh& mesh,
                     const DualMesh& dual);

// Long-form trajectory table: "t,vertex_index,x,y,value".
void write_trajectory_csv(const std::string& path, const Mesh& mesh,
                          const Trajectory& traj);

// "level,h,tau,err_linf_l2,err_l2_h1,err_linf_h1" plus a rates footer.
void write_error_report_csv(const std::string& path, const ErrorReport& report);

// Coordinate text dump "row col value", one entry per line.
void write_matrix_coo(const std::string& path, const SparseMatrix& m);

} // namespace boxtherm
