#include "qsm/surface_code.hpp"

#include <stdexcept>

#include "qsm/arith.hpp"
#include "qsm/errors.hpp"

namespace qsm {

int SurfaceCodeLattice::h_edge(std::int64_t x, std::int64_t y) const {
    if (x < 0 || x > L || y < 0 || y > L) throw std::domain_error("h_edge: out of range");
    return static_cast<int>(y * (L + 1) + x);
}

int SurfaceCodeLattice::v_edge(std::int64_t x, std::int64_t y) const {
    if (x < 1 || x > L || y < 0 || y > L - 1) throw std::domain_error("v_edge: out of range");
    return static_cast<int>(num_h_edges() + y * L + (x - 1));
}

SurfaceCodeLattice make_lattice(std::int64_t L, std::int64_t d) {
    if (L < 2) throw config_error("surface code needs L >= 2");
    if (!is_prime(d)) throw config_error("surface code dimension must be prime");
    return {L, d};
}

std::string CodeOperator::describe() const {
    switch (kind) {
        case Kind::vertex: return "A_s(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case Kind::face: return "B_p(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case Kind::logical_x: return "Xbar^" + std::to_string(a);
        case Kind::logical_z: return "Zbar^" + std::to_string(a);
    }
    return "?";
}

std::vector<CodeOperator> build_generators(const SurfaceCodeLattice& lat) {
    const std::int64_t L = lat.L, d = lat.d;
    const int n = static_cast<int>(lat.num_qudits());
    std::vector<CodeOperator> out;
    out.reserve(lat.num_vertices() + lat.num_faces());

    // Vertex operators: X on top/right, X^-1 on left/bottom edges.
    for (std::int64_t y = 0; y <= L; ++y) {
        for (std::int64_t x = 1; x <= L; ++x) {
            CodeOperator g{CodeOperator::Kind::vertex, x, y, PauliOperator(d, n)};
            if (y < L) g.op.x[lat.v_edge(x, y)] = 1;              // top
            g.op.x[lat.h_edge(x - 1, y)] = d - 1;                 // left
            g.op.x[lat.h_edge(x, y)] = 1;                         // right
            if (y > 0) g.op.x[lat.v_edge(x, y - 1)] = d - 1;      // bottom
            out.push_back(std::move(g));
        }
    }
    // Face operators: Z on top/left, Z^-1 on right/bottom edges. Columns 0
    // and L are the rough-boundary faces with three edges.
    for (std::int64_t r = 0; r < L; ++r) {
        for (std::int64_t c = 0; c <= L; ++c) {
            CodeOperator g{CodeOperator::Kind::face, c, r, PauliOperator(d, n)};
            g.op.z[lat.h_edge(c, r + 1)] = 1;                     // top
            if (c > 0) g.op.z[lat.v_edge(c, r)] = 1;              // left
            if (c < L) g.op.z[lat.v_edge(c + 1, r)] = d - 1;      // right
            g.op.z[lat.h_edge(c, r)] = d - 1;                     // bottom
            out.push_back(std::move(g));
        }
    }
    return out;
}

std::pair<CodeOperator, CodeOperator> build_logicals(const SurfaceCodeLattice& lat, std::int64_t j,
                                                     std::int64_t k) {
    const std::int64_t d = lat.d;
    const int n = static_cast<int>(lat.num_qudits());
    const std::int64_t col = 1; // dual column crossing h(1, y) for every row
    const std::int64_t row = 1; // direct row through h(x, 1) for every x

    CodeOperator lx{CodeOperator::Kind::logical_x, mod_reduce(j, d), col, PauliOperator(d, n)};
    for (std::int64_t y = 0; y <= lat.L; ++y) lx.op.x[lat.h_edge(col, y)] = mod_reduce(j, d);

    CodeOperator lz{CodeOperator::Kind::logical_z, mod_reduce(k, d), row, PauliOperator(d, n)};
    for (std::int64_t x = 0; x <= lat.L; ++x) lz.op.z[lat.h_edge(x, row)] = mod_reduce(k, d);

    return {std::move(lx), std::move(lz)};
}

CommutationReport check_commutation(const std::vector<CodeOperator>& ops) {
    CommutationReport report;
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!commutes(ops[i].op, ops[j].op))
                report.violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return report;
}

PauliOperator sample_noise(const SurfaceCodeLattice& lat, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sample_noise: p must lie in [0, 1]");
    const std::int64_t d = lat.d;
    PauliOperator err(d, static_cast<int>(lat.num_qudits()));
    for (int q = 0; q < err.num_qudits(); ++q) {
        if (rng.bernoulli(p))
            err.x[q] = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d - 1)));
        if (rng.bernoulli(p))
            err.z[q] = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d - 1)));
    }
    return err;
}

std::vector<std::int64_t> syndrome(const std::vector<CodeOperator>& generators,
                                   const PauliOperator& error) {
    std::vector<std::int64_t> out;
    out.reserve(generators.size());
    for (const CodeOperator& g : generators) out.push_back(commutation_exponent(g.op, error));
    return out;
}

} // namespace qsm
