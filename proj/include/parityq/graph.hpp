#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "parityq/common.hpp"
#include "parityq/f2.hpp"

namespace parityq {

// Undirected graph; edges stored as (u, v) with u < v, no self-loops or
// duplicates. Immutable after construction.
class Graph {
  public:
    Graph() = default;
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ < 0) throw StructureError("Graph: negative vertex count");
        std::set<std::pair<int, int>> seen;
        for (auto& [u, v] : edges_) {
            if (u > v) std::swap(u, v);
            if (u == v) throw StructureError("Graph: self-loop");
            if (u < 0 || v >= n_) throw StructureError("Graph: vertex index out of range");
            if (!seen.insert({u, v}).second) throw StructureError("Graph: duplicate edge");
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return int(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::pair<int, int> edge(int e) const { return edges_[e]; }

    std::vector<int> degrees() const {
        std::vector<int> d(n_, 0);
        for (auto [u, v] : edges_) { ++d[u]; ++d[v]; }
        return d;
    }
    int max_degree() const {
        auto d = degrees();
        return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    }

    // Per-vertex list of (neighbor, edge index).
    std::vector<std::vector<std::pair<int, int>>> adjacency() const {
        std::vector<std::vector<std::pair<int, int>>> adj(n_);
        for (int e = 0; e < edge_count(); ++e) {
            auto [u, v] = edges_[e];
            adj[u].push_back({v, e});
            adj[v].push_back({u, e});
        }
        return adj;
    }

    bool is_connected() const {
        if (n_ == 0) return true;
        auto adj = adjacency();
        std::vector<bool> seen(n_, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, e] : adj[u]) {
                (void)e;
                if (!seen[v]) { seen[v] = true; ++count; stack.push_back(v); }
            }
        }
        return count == n_;
    }

    bool is_tree() const { return is_connected() && edge_count() == n_ - 1; }

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

// width x height lattice. Vertices row-major from the top-left; for each
// vertex in scan order, the edge to its right neighbor precedes the edge to
// the neighbor below.
inline Graph grid_graph(int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("grid_graph: zero dimension");
    auto id = [width](int r, int c) { return r * width + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            if (c + 1 < width) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < height) edges.push_back({id(r, c), id(r + 1, c)});
        }
    return Graph(width * height, std::move(edges));
}

// Comb-shaped spanning tree of the grid: the whole first row of horizontal
// edges plus every vertical edge. Edge order: top-row edges left to right,
// then column edges top to bottom, column by column. Max degree 3.
inline Graph grid_spanning_tree(int width, int height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("grid_spanning_tree: zero dimension");
    auto id = [width](int r, int c) { return r * width + c; };
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c + 1 < width; ++c) edges.push_back({id(0, c), id(0, c + 1)});
    for (int c = 0; c < width; ++c)
        for (int r = 0; r + 1 < height; ++r) edges.push_back({id(r, c), id(r + 1, c)});
    return Graph(width * height, std::move(edges));
}

// |V| x |E| matrix over GF(2); column e has ones exactly at e's endpoints.
inline F2Matrix incidence_matrix(const Graph& g) {
    F2Matrix m(g.vertex_count(), g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        m.set(u, e, true);
        m.set(v, e, true);
    }
    return m;
}

// For a tree: the unique root-to-vertex path of every vertex, as edge index
// sets. path_edges[root] is empty.
struct RootPathTable {
    int root = 0;
    std::vector<std::vector<int>> path_edges;

    std::size_t total_path_length() const {
        std::size_t s = 0;
        for (const auto& p : path_edges) s += p.size();
        return s;
    }
};

inline RootPathTable root_paths(const Graph& tree, int root) {
    if (!tree.is_tree()) throw StructureError("root_paths: graph is not a tree");
    if (root < 0 || root >= tree.vertex_count())
        throw StructureError("root_paths: root out of range");
    RootPathTable t;
    t.root = root;
    t.path_edges.assign(tree.vertex_count(), {});
    auto adj = tree.adjacency();
    std::vector<bool> seen(tree.vertex_count(), false);
    std::vector<int> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, e] : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            t.path_edges[v] = t.path_edges[u];
            t.path_edges[v].push_back(e);
            stack.push_back(v);
        }
    }
    return t;
}

// One CNOT of the poor-man's-cat circuit: control on a vertex qubit, target
// on an edge qubit.
struct CnotGate {
    int vertex;
    int edge;
    friend bool operator==(const CnotGate& a, const CnotGate& b) {
        return a.vertex == b.vertex && a.edge == b.edge;
    }
};

// Parallel CNOT layers. Within a layer no vertex qubit or edge qubit appears
// twice; the union over layers holds each of the 2|E| CNOTs exactly once.
struct LayerSchedule {
    std::vector<std::vector<CnotGate>> layers;
};

// Greedy edge coloring of the double graph G' (each edge of G becomes an
// edge qubit wired to its two endpoints). Edge qubits have degree 2 in G',
// so a CNOT conflicts with at most deg(vertex) others and the greedy scan
// never needs more than max_degree(G) + 1 colors.
inline LayerSchedule cnot_layers(const Graph& g) {
    std::vector<uint64_t> vertex_used(g.vertex_count(), 0); // bitmask of colors at a qubit
    std::vector<uint64_t> edge_used(g.edge_count(), 0);
    LayerSchedule sched;
    auto place = [&](int vertex, int edge) {
        uint64_t taken = vertex_used[vertex] | edge_used[edge];
        int color = __builtin_ctzll(~taken);
        vertex_used[vertex] |= 1ULL << color;
        edge_used[edge] |= 1ULL << color;
        if (color == int(sched.layers.size())) sched.layers.emplace_back();
        sched.layers[color].push_back({vertex, edge});
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        place(u, e);
        place(v, e);
    }
    return sched;
}

} // namespace parityq
