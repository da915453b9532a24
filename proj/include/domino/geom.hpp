#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace domino {

/// Integer lattice point. Doubles as a square index: square (x,y) is the
/// closed unit square [x,x+1] x [y,y+1] of the plane.
struct Vec2i {
    int x = 0;
    int y = 0;

    friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
    friend bool operator<(Vec2i a, Vec2i b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
};

struct Vec2iHash {
    size_t operator()(Vec2i v) const {
        uint64_t k = (uint64_t(uint32_t(v.x)) << 32) | uint32_t(v.y);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return size_t(k);
    }
};

/// Chessboard coloring. The convention is pinned by the closed form of the
/// beta metric: the unit step (0,0)->(1,0) must have a white square on its
/// left so that beta((0,0),(1,0)) = 3.
inline bool is_black(Vec2i square) { return ((square.x + square.y) & 1) != 0; }

/// Directions in counterclockwise order: E, N, W, S.
inline constexpr std::array<Vec2i, 4> kDir = {Vec2i{1, 0}, Vec2i{0, 1}, Vec2i{-1, 0}, Vec2i{0, -1}};

inline int dir_index(Vec2i d) {
    if (d == kDir[0]) return 0;
    if (d == kDir[1]) return 1;
    if (d == kDir[2]) return 2;
    return 3;
}

/// Square on the left of the directed edge (v, v + kDir[dir]).
inline Vec2i left_square(Vec2i v, int dir) {
    switch (dir) {
        case 0: return {v.x, v.y};          // E: north side
        case 1: return {v.x - 1, v.y};      // N: west side
        case 2: return {v.x - 1, v.y - 1};  // W: south side
        default: return {v.x, v.y - 1};     // S: east side
    }
}

/// Square on the right of the directed edge (v, v + kDir[dir]).
inline Vec2i right_square(Vec2i v, int dir) {
    return left_square(v + kDir[dir], (dir + 2) % 4);
}

/// +1 if the directed step has a black square on its left, else -1.
inline int edge_delta(Vec2i v, int dir) { return is_black(left_square(v, dir)) ? 1 : -1; }

}  // namespace domino

template <>
struct std::hash<domino::Vec2i> {
    size_t operator()(domino::Vec2i v) const { return domino::Vec2iHash{}(v); }
};
