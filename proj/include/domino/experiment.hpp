#pragma once

#include <string>

#include "domino/domains.hpp"
#include "domino/varsolve.hpp"

namespace domino {

// -- standard continuum domains (grid units; mesh pitch ell maps (i,j) to
//    (i*ell, j*ell)) ---------------------------------------------------------

/// Unit-square-like block [0,g]^2.
MeshSpec square_spec(int g);

/// Diamond |x|+|y| <= g (the normalized Aztec diamond, scaled by g).
MeshSpec diamond_spec(int g);

/// Square annulus [0,g]^2 minus [g/4,3g/4]^2 with a vertical cut below the
/// hole's SW corner; g must be a multiple of 4.
MeshSpec square_annulus_spec(int g);

/// Same annulus with the cut going right from the hole's SE corner
/// (cut-independence experiments).
MeshSpec square_annulus_spec_alt(int g);

/// Diamond annulus |c| <= g minus |c| <= g/4 with a vertical cut below the
/// hole's west corner; g must be a multiple of 4. Continuum limit of the
/// modified Aztec diamond family.
MeshSpec diamond_annulus_spec(int g);

/// Boundary data transferred from a lattice domain: each boundary mesh node
/// maps to grid*scale on the lattice and snaps to the nearest vertex of the
/// matching boundary cycle; values are the lattice boundary heights (height
/// change zero) divided by latN.
BoundaryData boundary_from_lattice(const Mesh& mesh, const LatticeDomain& lat, double latN);

/// All-zero boundary data.
BoundaryData flat_boundary(const Mesh& mesh);

/// Continuum monodromy of a lattice domain normalized by latN.
std::vector<double> continuum_monodromy(const LatticeDomain& lat, double latN);

}  // namespace domino
