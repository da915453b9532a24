#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "domino/sample.hpp"
#include "domino/tension.hpp"

namespace domino {

/// Continuum domain description on an integer reference grid: the mesh at
/// pitch ell places the polygon vertex (i,j) at (i,j) * ell. Outer polygon
/// counterclockwise; holes as polygons; one cut polyline per hole running
/// from its boundary to the outer boundary along grid segments.
struct MeshSpec {
    std::vector<Vec2i> outer;
    std::vector<std::vector<Vec2i>> holes;
    std::vector<std::vector<Vec2i>> cuts;
    Vec2i center{0, 0};  // grid point fixing the diagonal split pattern
};

struct SeamPair {
    int west = -1;  // node on the side-0 (canonical) sheet of the slit
    int east = -1;  // matching node; value(east) = value(west) + sign * m[hole]
    int hole = 0;   // 1-based hole index
    int sign = 1;
};

struct Mesh {
    double ell = 0;
    int grid = 0;  // polygon scale in grid units per continuum unit... informational
    std::vector<std::array<double, 2>> pos;   // node -> continuum position
    std::vector<Vec2i> gpos;                  // node -> grid coordinates
    std::vector<std::array<int, 3>> tris;     // CCW corners
    std::vector<int> boundary_comp;           // node -> component id, -1 interior
    std::vector<SeamPair> seam_pairs;
    int num_components = 1;

    int num_nodes() const { return int(pos.size()); }
    int num_triangles() const { return int(tris.size()); }
    double tri_area() const { return ell * ell / 2; }
    /// Per-triangle gradient of nodal values.
    Slope gradient(int tri, const std::vector<double>& values) const;
};

/// Conforming triangulation of the cut-open domain. Throws MeshFailure on
/// inputs the structured mesher cannot represent.
Mesh build_mesh(const MeshSpec& spec, double ell);

/// Quasiperiodic piecewise-linear height candidate on a mesh.
struct AsymptoticHeight {
    std::vector<double> values;       // per mesh node
    std::vector<double> height_change;  // r, length = holes
    std::vector<double> monodromy;      // m, length = holes
};

struct SolveReport {
    AsymptoticHeight h_star;
    std::vector<double> r_star;
    double objective = 0;             // functional value normalized by area
    std::vector<char> frozen_mask;    // per triangle: gradient near the boundary of N
    int iterations = 0;
    double residual = 0;              // last relative objective change
    double eps_bnd = 1e-3;
};

struct SolveOptions {
    std::optional<std::vector<double>> fixed_r;
    int max_sweeps = 4000;
    double rel_tol = 1e-8;
    int tol_window = 50;          // sweeps the relative change must stay low
    const SigmaGrid* grid = nullptr;  // optional shared table
    double eps_bnd = 1e-3;
    // warm start from a coarser solve of the same continuum problem
    const Mesh* warm_mesh = nullptr;
    const std::vector<double>* warm_values = nullptr;
};

/// Boundary data: per boundary node, the shape value b (component constants
/// r_i are solver variables added on top; component 0 is pinned to r_0 = 0).
using BoundaryData = std::vector<double>;  // indexed by node; ignored off-boundary

/// Maximizes the surface tension functional over feasible heights.
SolveReport maximize(const Mesh& mesh, const BoundaryData& b, const std::vector<double>& monodromy,
                     const SolveOptions& opts = {});

/// Functional value of a feasible height (normalized by total area); throws
/// InfeasibleHeight naming the first violating triangle.
double functional_value(const Mesh& mesh, const std::vector<double>& values);

/// Interpolates the solved height at a continuum point (nudged west of cut
/// lines so that seam sides resolve deterministically). Returns nullopt
/// outside the mesh.
std::optional<double> mesh_value_at(const Mesh& mesh, const std::vector<double>& values, double x,
                                    double y);

struct CompareReport {
    double sup_distance = 0;      // away from the frozen interface band
    double l2_distance = 0;
    int points_compared = 0;
    std::vector<double> r_gap;    // |mean R/N - r*| per hole
};

/// Compares a sampled mean field on a lattice domain against the solved
/// limit shape; `to_continuum` maps lattice vertices into mesh coordinates,
/// `exclude_band` drops lattice points within that distance of the frozen
/// interface.
CompareReport compare_to_empirical(const Mesh& mesh, const SolveReport& report,
                                   const EmpiricalField& field,
                                   const std::function<std::array<double, 2>(Vec2i)>& to_continuum,
                                   double exclude_band);

}  // namespace domino
