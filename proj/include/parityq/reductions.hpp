#pragma once

#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "parityq/f2.hpp"
#include "parityq/graph.hpp"
#include "parityq/problems.hpp"

namespace parityq {

// Index bookkeeping for an RPHP -> HLF reduction: HLF coordinates are the
// source vertices (row-major) followed by the edge-vertices (edge order).
// coords, when present, place every HLF index on the doubled grid: source
// vertex (r,c) at (2r,2c), an edge-vertex at the integer midpoint of its
// endpoints. That realizes the (2n-1) x (2n-1) containment constructively.
struct HlfEmbedding {
    std::size_t vcount = 0;
    std::size_t ecount = 0;
    std::optional<std::vector<std::pair<int, int>>> coords; // per HLF index

    std::size_t dimension() const { return vcount + ecount; }
};

// Per-vertex (row, col) of a width x height grid, row-major.
inline std::vector<std::pair<int, int>> grid_coords(int width, int height) {
    std::vector<std::pair<int, int>> c;
    c.reserve(std::size_t(width) * height);
    for (int r = 0; r < height; ++r)
        for (int col = 0; col < width; ++col) c.push_back({r, col});
    return c;
}

// A = [[0, M], [M^T, 0]] for M the incidence matrix, b = (x, 0). Pass the
// source vertices' grid coordinates to get an embeddable instance.
inline std::pair<HlfInstance, HlfEmbedding>
rphp_to_hlf(const RphpInstance& inst,
            const std::optional<std::vector<std::pair<int, int>>>& vertex_coords = std::nullopt) {
    const Graph& g = inst.graph;
    std::size_t nv = std::size_t(g.vertex_count()), ne = std::size_t(g.edge_count());
    F2Matrix a(nv + ne, nv + ne);
    for (std::size_t e = 0; e < ne; ++e) {
        auto [u, v] = g.edge(int(e));
        a.set(u, nv + e, true);
        a.set(nv + e, u, true);
        a.set(v, nv + e, true);
        a.set(nv + e, v, true);
    }
    Z4Vector b(nv + ne);
    for (std::size_t i = 0; i < nv; ++i) b.set(i, inst.x.get(i) ? 1 : 0);

    HlfEmbedding emb;
    emb.vcount = nv;
    emb.ecount = ne;
    if (vertex_coords) {
        if (vertex_coords->size() != nv)
            throw ShapeError("rphp_to_hlf: coordinate count != |V|");
        std::vector<std::pair<int, int>> coords;
        coords.reserve(nv + ne);
        for (auto [r, c] : *vertex_coords) coords.push_back({2 * r, 2 * c});
        for (std::size_t e = 0; e < ne; ++e) {
            auto [u, v] = g.edge(int(e));
            auto [ru, cu] = (*vertex_coords)[u];
            auto [rv, cv] = (*vertex_coords)[v];
            if (std::abs(ru - rv) + std::abs(cu - cv) != 1)
                throw StructureError("rphp_to_hlf: edge not between grid neighbors");
            coords.push_back({ru + rv, cu + cv});
        }
        emb.coords = std::move(coords);
    }
    return {HlfInstance(std::move(a), std::move(b)), emb};
}

// The identification p = (y, d).
inline std::pair<F2Vector, F2Vector> hlf_solution_to_rphp(const F2Vector& p,
                                                          const HlfEmbedding& emb) {
    if (p.size() != emb.dimension()) throw ShapeError("hlf_solution_to_rphp: |p| != |V|+|E|");
    F2Vector y(emb.vcount), d(emb.ecount);
    for (std::size_t i = 0; i < emb.vcount; ++i) y.set(i, p.get(i));
    for (std::size_t e = 0; e < emb.ecount; ++e) d.set(e, p.get(emb.vcount + e));
    return {std::move(y), std::move(d)};
}

// Polynomial-time reference solver: take a kernel basis of the L_q matrix,
// read off q/2 on the basis, and solve the linear system for p. Throws if any
// basis q-value is odd, which would falsify the L_q characterization.
inline F2Vector solve_hlf_reference(const HlfInstance& inst) {
    auto basis = f2_kernel_basis(lq_matrix(inst));
    F2Matrix rows(basis.size(), inst.n);
    F2Vector rhs(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        int q = eval_q(inst, basis[j]);
        if (q & 1)
            throw std::runtime_error("solve_hlf_reference: odd q on L_q basis");
        rows.set_row(j, basis[j]);
        rhs.set(j, (q >> 1) & 1);
    }
    auto p = f2_solve(rows, rhs);
    if (!p) // full-row-rank system; cannot happen
        throw std::runtime_error("solve_hlf_reference: inconsistent basis system");
    return *p;
}

// True iff the embedded instance is supported on the doubled grid: zero
// diagonal, distinct coordinates, and every off-diagonal entry joining
// grid-adjacent points.
inline bool is_2d_supported(const HlfInstance& inst, const HlfEmbedding& emb) {
    if (!emb.coords) throw std::domain_error("is_2d_supported: embedding has no coordinates");
    if (inst.n != emb.dimension()) throw ShapeError("is_2d_supported: dimension mismatch");
    const auto& coords = *emb.coords;
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i; j < inst.n; ++j) {
            if (!inst.a.get(i, j)) continue;
            if (i == j) return false;
            auto [ri, ci] = coords[i];
            auto [rj, cj] = coords[j];
            if (std::abs(ri - rj) + std::abs(ci - cj) != 1) return false;
        }
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i + 1; j < inst.n; ++j)
            if (coords[i] == coords[j]) return false;
    return true;
}

// Block-diagonal composition; a solution of the sum is valid iff each slice
// is valid for its block.
inline HlfInstance direct_sum_hlf(const std::vector<HlfInstance>& parts) {
    std::size_t n = 0;
    for (const auto& part : parts) n += part.n;
    F2Matrix a(n, n);
    Z4Vector b(n);
    std::size_t off = 0;
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < part.n; ++i) {
            b.set(off + i, part.b.get(i));
            for (std::size_t j = 0; j < part.n; ++j)
                if (part.a.get(i, j)) a.set(off + i, off + j, true);
        }
        off += part.n;
    }
    return HlfInstance(std::move(a), std::move(b));
}

// Stack embedded blocks vertically with a one-row gap, so a direct sum of
// grid-supported instances stays grid-supported.
inline HlfEmbedding direct_sum_embeddings(const std::vector<HlfEmbedding>& parts) {
    HlfEmbedding emb;
    std::vector<std::pair<int, int>> coords;
    int row_offset = 0;
    for (const auto& part : parts) {
        if (!part.coords)
            throw std::domain_error("direct_sum_embeddings: part has no coordinates");
        emb.vcount += part.vcount;
        emb.ecount += part.ecount;
        int max_row = 0;
        for (auto [r, c] : *part.coords) {
            coords.push_back({r + row_offset, c});
            max_row = std::max(max_row, r);
        }
        row_offset += max_row + 2;
    }
    emb.coords = std::move(coords);
    return emb;
}

inline std::vector<F2Vector> split_hlf_solution(const F2Vector& p,
                                                const std::vector<std::size_t>& part_sizes) {
    std::size_t total = 0;
    for (std::size_t s : part_sizes) total += s;
    if (p.size() != total) throw ShapeError("split_hlf_solution: |p| != sum of part sizes");
    std::vector<F2Vector> slices;
    std::size_t off = 0;
    for (std::size_t s : part_sizes) {
        F2Vector slice(s);
        for (std::size_t i = 0; i < s; ++i) slice.set(i, p.get(off + i));
        slices.push_back(std::move(slice));
        off += s;
    }
    return slices;
}

// Turn an RPHP answer on a tree into a PHP answer: append one bit d_j * x_i
// per (vertex i, path edge j in D_i), ordered by vertex then path position.
// The appended block has weight <z,x>, cancelling the relaxation term, so the
// result solves PHP with m = |V| + sum_i |D_i|.
inline F2Vector assemble_php_output(const F2Vector& x, const F2Vector& y, const F2Vector& d,
                                    const RootPathTable& paths) {
    std::size_t nv = paths.path_edges.size();
    if (x.size() != nv || y.size() != nv)
        throw ShapeError("assemble_php_output: |x| or |y| != |V|");
    std::size_t m = nv + paths.total_path_length();
    F2Vector out(m);
    for (std::size_t i = 0; i < nv; ++i) out.set(i, y.get(i));
    std::size_t pos = nv;
    for (std::size_t i = 0; i < nv; ++i)
        for (int j : paths.path_edges[i]) {
            if (std::size_t(j) >= d.size())
                throw StructureError("assemble_php_output: path edge out of range");
            out.set(pos++, d.get(j) && x.get(i));
        }
    return out;
}

} // namespace parityq
