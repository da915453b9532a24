#pragma once

#include <string>

#include "domino/heights.hpp"
#include "domino/sample.hpp"
#include "domino/varsolve.hpp"

namespace domino {

/// Tiling as SVG, dominoes colored by the four orientation types
/// (horizontal/vertical x position of the black square). Deterministic.
std::string render_tiling_svg(const LatticeDomain& d, const Tiling& t, double cell = 12.0);

/// Mean-height color map of an empirical field.
std::string render_field_svg(const EmpiricalField& field, double cell = 12.0);

/// Solved height as a colored triangle mesh; frozen triangles hatched grey.
std::string render_solution_svg(const Mesh& mesh, const SolveReport& report, double scale = 240.0);

/// Empty canvas (valid SVG document with no shapes).
std::string render_empty_svg();

}  // namespace domino
