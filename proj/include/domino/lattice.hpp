#pragma once

#include <array>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "domino/error.hpp"
#include "domino/geom.hpp"

namespace domino {

/// One connected component of the boundary. Component 0 is the external
/// boundary (stored counterclockwise with the domain inside); components
/// 1..g are hole boundaries, stored counterclockwise around the hole.
struct BoundaryComponent {
    int index = 0;
    std::vector<Vec2i> vertex_cycle;
    Vec2i reference_point;  // lexicographically smallest vertex of the cycle
};

/// Cut system: cuts[i] is a simple lattice path (vertex sequence) from
/// boundary component i+1's reference point to the external boundary.
struct CutSystem {
    std::vector<std::vector<Vec2i>> cuts;
};

/// Point of the universal cover: a domain vertex plus the abelianized deck
/// coordinate (net signed crossings of each cut).
struct CoverPoint {
    Vec2i vertex;
    std::vector<int> deck;
};

CoverPoint cover_shift(CoverPoint point, const std::vector<int>& loop_class);

class LatticeDomain;
using DomainPtr = std::shared_ptr<const LatticeDomain>;

/// Multiply-connected lattice domain with its full topology: boundary
/// components, deterministic cut system, and the cut-open ("slit") complex
/// that realizes the fundamental domain. Immutable after construction.
class LatticeDomain {
  public:
    // -- squares / vertices -------------------------------------------------
    int num_squares() const { return int(squares_.size()); }
    int num_vertices() const { return int(vertices_.size()); }
    const std::vector<Vec2i>& squares() const { return squares_; }
    const std::vector<Vec2i>& vertices() const { return vertices_; }

    int square_index(Vec2i s) const;      // -1 if absent
    int vertex_index(Vec2i v) const;      // -1 if absent
    bool has_square(Vec2i s) const { return square_index(s) >= 0; }
    bool has_vertex(Vec2i v) const { return vertex_index(v) >= 0; }

    /// Edge (v, v+kDir[dir]) belongs to the domain (incident to a square).
    bool has_edge(Vec2i v, int dir) const;
    /// Both adjacent squares belong to the domain.
    bool edge_interior(Vec2i v, int dir) const;
    int num_edges() const { return num_edges_; }

    /// Corner vertex ids of square s, CCW from the SW corner.
    std::array<int, 4> square_corners(int square_id) const;

    // -- topology -----------------------------------------------------------
    int genus() const { return int(holes_.size()); }
    const std::vector<BoundaryComponent>& boundary_components() const { return components_; }
    const CutSystem& cut_system() const { return cuts_; }
    const std::vector<int>& monodromy_vector() const { return monodromy_; }
    /// Squares of the complement enclosed by boundary component i (1..g).
    const std::vector<Vec2i>& hole_squares(int hole) const { return holes_[hole - 1]; }
    Vec2i base_point() const { return components_[0].reference_point; }

    /// Height residue mod 4 at a vertex (shared by all height functions).
    int residue_mod4(int vertex_id) const { return residue_[size_t(canonical_node_[size_t(vertex_id)])]; }

    // -- slit complex (fundamental domain) ----------------------------------
    struct ComplexEdge {
        int node_a, node_b;  // complex node ids
        Vec2i from;          // = vertex(node_a)
        int dir;             // node_b is at vertex from + kDir[dir]
    };
    int num_nodes() const { return int(node_vertex_.size()); }
    int node_vertex(int node) const { return node_vertex_[size_t(node)]; }
    const std::vector<ComplexEdge>& complex_edges() const { return complex_edges_; }
    int canonical_node(int vertex_id) const { return canonical_node_[size_t(vertex_id)]; }
    const std::vector<int>& nodes_of_vertex(int vertex_id) const {
        return vertex_nodes_[size_t(vertex_id)];
    }
    /// Deck offset of a complex node relative to the canonical node of its
    /// vertex: the node represents cover point (vertex, offset).
    const std::vector<int>& node_offset(int node) const { return node_offset_[size_t(node)]; }
    /// Complex node holding the given corner of the given square.
    int face_corner_node(int square_id, int corner) const {
        return face_corner_node_[size_t(square_id)][size_t(corner)];
    }
    /// Euler characteristic of the cut-open complex (1 when simply-connected).
    int cut_open_euler_characteristic() const;

    friend DomainPtr build_domain(std::vector<Vec2i> squares);

  private:
    LatticeDomain() = default;
    void build_boundary();
    void build_cuts_();
    void build_complex();

    std::vector<Vec2i> squares_;
    std::unordered_map<Vec2i, int, Vec2iHash> square_id_;
    std::vector<Vec2i> vertices_;
    std::unordered_map<Vec2i, int, Vec2iHash> vertex_id_;
    int num_edges_ = 0;

    std::vector<BoundaryComponent> components_;
    std::vector<std::vector<Vec2i>> holes_;  // complement squares per hole
    std::vector<int> monodromy_;
    CutSystem cuts_;
    std::vector<std::vector<int>> cut_edge_mark_;  // per cut, per vertex: position, for fast lookup
    std::unordered_map<Vec2i, int, Vec2iHash> on_boundary_;  // vertex -> component (first found)

    // slit complex
    std::vector<int> node_vertex_;
    std::vector<std::vector<int>> vertex_nodes_;
    std::vector<int> canonical_node_;
    std::vector<std::vector<int>> node_offset_;
    std::vector<std::array<int, 4>> face_corner_node_;
    std::vector<ComplexEdge> complex_edges_;
    std::vector<int> residue_;  // per node, height value mod 4
};

/// Builds a domain from unit squares; rejects empty or edge-disconnected sets.
DomainPtr build_domain(std::vector<Vec2i> squares);

/// Boundary components of a domain (component 0 external).
inline const std::vector<BoundaryComponent>& boundary_components(const LatticeDomain& d) {
    return d.boundary_components();
}

/// Deterministic cut system (built with the domain).
inline const CutSystem& build_cuts(const LatticeDomain& d) { return d.cut_system(); }

/// Monodromy vector m, m[i-1] = 4(B_i - W_i) over squares enclosed by
/// boundary component i.
inline const std::vector<int>& monodromy(const LatticeDomain& d) { return d.monodromy_vector(); }

/// Sum of +-1 increments along a closed lattice loop (vertex sequence with
/// first == last, or implicitly closed). Equals winding . monodromy.
int monodromy_by_traversal(const LatticeDomain& d, const std::vector<Vec2i>& loop);

/// Winding numbers of a closed loop around each hole (ray-crossing count,
/// independent of the cut system).
std::vector<int> loop_winding(const LatticeDomain& d, const std::vector<Vec2i>& loop);

/// Winding number of a closed loop around the center of one square.
int square_winding(const std::vector<Vec2i>& loop, Vec2i square);

/// 4 * (winding-weighted black minus white count) over all enclosed squares;
/// monodromy_by_traversal equals this for every closed loop (Stokes), and it
/// reduces to winding . monodromy for loops along hole boundaries.
int enclosed_color_sum(const LatticeDomain& d, const std::vector<Vec2i>& loop);

/// Number of boundary components counted by complement flood fill alone
/// (cross-check for boundary_components).
int flood_fill_component_count(const LatticeDomain& d);

/// Directed lattice distance: length of a shortest path p -> q all of whose
/// edges have a black square on the left. Throws Unreachable if none exists.
int beta_distance(const LatticeDomain& d, Vec2i p, Vec2i q);

/// Closed form of beta on the full lattice (valid for convex domains).
int beta_closed_form(Vec2i x, Vec2i y);

}  // namespace domino
