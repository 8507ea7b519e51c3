#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsm/rng.hpp"
#include "qsm/tableau.hpp"

namespace qsm {

// Qudit surface code patch with rough left/right boundaries (dangling
// horizontal half-edges) and smooth top/bottom boundaries. Edge qudits:
//   horizontal h(x, y), x in [0, L], y in [0, L]  (midpoint (x+1/2, y))
//   vertical   v(x, y), x in [1, L], y in [0, L-1] (midpoint (x, y+1/2))
// Vertices sit at (x, y) for x in [1, L], y in [0, L]; faces at column
// c in [0, L], row r in [0, L-1] (columns 0 and L are the 3-edge boundary
// faces). (L+1)^2 + L^2 qudits, L(L+1) vertex and L(L+1) face generators,
// one encoded qudit.
struct SurfaceCodeLattice {
    std::int64_t L = 0;
    std::int64_t d = 0;

    std::int64_t num_h_edges() const { return (L + 1) * (L + 1); }
    std::int64_t num_v_edges() const { return L * L; }
    std::int64_t num_qudits() const { return num_h_edges() + num_v_edges(); }

    int h_edge(std::int64_t x, std::int64_t y) const;
    int v_edge(std::int64_t x, std::int64_t y) const;

    std::int64_t num_vertices() const { return L * (L + 1); }
    std::int64_t num_faces() const { return L * (L + 1); }
};

SurfaceCodeLattice make_lattice(std::int64_t L, std::int64_t d); // L >= 2, d prime

struct CodeOperator {
    enum class Kind { vertex, face, logical_x, logical_z };

    Kind kind;
    std::int64_t a = 0, b = 0; // vertex/face coordinates, or the logical exponent in `a`
    PauliOperator op;

    std::string describe() const;
};

// One A_s per vertex then one B_p per face, boundary generators truncated to
// the existing edges. Bulk A_s carries X exponents (+1, -1, +1, -1) on
// (top, left, right, bottom); B_p carries Z exponents (+1, +1, -1, -1) on
// (a, b, c, d) = (top, left, right, bottom) in the zigzag order.
std::vector<CodeOperator> build_generators(const SurfaceCodeLattice& lat);

// Logical X^j on the horizontal edges crossed by the dual column through
// x = 1 + 1/2, logical Z^k on the horizontal edges of row y = 1. They share
// exactly the edge h(1, 1).
std::pair<CodeOperator, CodeOperator> build_logicals(const SurfaceCodeLattice& lat, std::int64_t j,
                                                     std::int64_t k);

struct CommutationReport {
    std::vector<std::pair<int, int>> violations; // index pairs with nonzero symplectic form
    bool all_commute() const { return violations.empty(); }
};

CommutationReport check_commutation(const std::vector<CodeOperator>& ops);

// Independent noise: per edge qudit and per error family (X, Z), with
// probability p apply a uniformly chosen nonzero power (each specific power
// has probability p/(d-1)).
PauliOperator sample_noise(const SurfaceCodeLattice& lat, double p, Rng& rng);

// Per generator g: the exponent j with g E = omega^j E g.
std::vector<std::int64_t> syndrome(const std::vector<CodeOperator>& generators,
                                   const PauliOperator& error);

} // namespace qsm
