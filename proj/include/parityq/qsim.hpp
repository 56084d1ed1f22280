#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "parityq/graph.hpp"
#include "parityq/problems.hpp"
#include "parityq/rng.hpp"
#include "parityq/statevector.hpp"

namespace parityq {

// One shot of a quantum solver. d is present exactly for the RPHP family
// (circuits that measure out a poor man's cat). z is the sampled cat label,
// exposed for tests only; no verifier needs it.
struct QuantumSample {
    F2Vector y;
    std::optional<F2Vector> d;
    std::optional<F2Vector> z;
};

// Uniform over the 2^(m-1) strings of the requested parity.
inline F2Vector sample_uniform_parity(std::size_t m, int parity, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample_uniform_parity: m must be >= 1");
    F2Vector y(m);
    for (std::size_t w = 0; w * 64 < m - 1; ++w) {
        uint64_t bits = rng.u64();
        std::size_t used = std::min<std::size_t>(64, (m - 1) - w * 64);
        if (used < 64) bits &= (1ULL << used) - 1;
        for (std::size_t i = 0; i < used; ++i)
            if ((bits >> i) & 1) y.set(w * 64 + i, true);
    }
    if (y.parity() != (parity & 1)) y.set(m - 1, true);
    return y;
}

// Output law of the cat-state PHP circuit (controlled-S layer, Hadamard
// layer, measure): uniform over {y : |y| = |x|/2 (mod 2)}.
inline F2Vector sample_php_cat(const F2Vector& x, std::size_t m, Rng& rng) {
    if (x.parity() != 0) throw PromiseError("sample_php_cat: x must have even parity");
    return sample_uniform_parity(m, int((x.popcount() / 2) & 1), rng);
}

// Poor man's cat on G: z uniform over {0,1}^V (a representative of the
// unordered pair {z, z-bar}), d_e = z_u ^ z_v. Equivalent to the Born rule of
// the H + CNOT + edge-measurement circuit; the statevector oracle checks the
// joint law.
inline std::pair<F2Vector, F2Vector> sample_poor_mans_cat(const Graph& g, Rng& rng) {
    if (!g.is_connected()) throw StructureError("sample_poor_mans_cat: graph not connected");
    F2Vector z = F2Vector::random(std::size_t(g.vertex_count()), rng);
    F2Vector d(std::size_t(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        d.set(e, z.get(u) ^ z.get(v));
    }
    return {std::move(z), std::move(d)};
}

// Grid-RPHP circuit law: prepare a poor man's cat, then run the PHP circuit
// on it; y is uniform over {y : |y| = |x|/2 + <z,x> (mod 2)}.
inline QuantumSample sample_rphp(const Graph& g, const F2Vector& x, Rng& rng) {
    if (x.size() != std::size_t(g.vertex_count())) throw ShapeError("sample_rphp: |x| != |V|");
    if (x.parity() != 0) throw PromiseError("sample_rphp: x must have even parity");
    auto [z, d] = sample_poor_mans_cat(g, rng);
    int target = int(((x.popcount() / 2) + std::size_t(z.dot(x))) & 1);
    QuantumSample s;
    s.y = sample_uniform_parity(x.size(), target, rng);
    s.d = std::move(d);
    s.z = std::move(z);
    return s;
}

// PBP circuit law: wins with certainty when |x| = 0 (mod 3); otherwise the
// output is uniform odd-parity with probability 3/4 and uniform even-parity
// with probability 1/4.
inline F2Vector sample_pbp(const TritVector& x, Rng& rng) {
    std::size_t n = x.size();
    if (n < 1) throw std::invalid_argument("sample_pbp: empty input");
    if (mod3_weight(x) == 0) return sample_uniform_parity(n, 0, rng);
    bool correct = rng.below(4) < 3;
    return sample_uniform_parity(n, correct ? 1 : 0, rng);
}
inline F2Vector sample_pbp(const F2Vector& x, Rng& rng) {
    return sample_pbp(TritVector::from_bits(x), rng);
}

// ---------------------------------------------------------------------------
// Statevector oracles (literal gate sequences; classically controlled phases
// become unconditional phases on the controlled qubit, so the register never
// exceeds n qubits)

// Exact output distribution of the PHP circuit on |Cat_n>.
inline std::vector<double> statevector_php(const F2Vector& x) {
    std::size_t n = x.size();
    StateVector sv(n);
    sv.set_cat();
    const std::complex<double> i_unit{0.0, 1.0};
    for (std::size_t q = 0; q < n; ++q)
        if (x.get(q)) sv.phase(q, i_unit); // S gate under classical control
    for (std::size_t q = 0; q < n; ++q) sv.h(q);
    return sv.probabilities();
}

// Success probability of the PBP circuit: phases are powers of exp(2*pi*i/3),
// one per unit of the (binary or trit) input symbol.
inline double statevector_pbp(const TritVector& x) {
    std::size_t n = x.size();
    StateVector sv(n);
    sv.set_cat();
    using std::numbers::pi;
    for (std::size_t q = 0; q < n; ++q)
        if (x.get(q) != 0) sv.phase(q, std::polar(1.0, 2.0 * pi * x.get(q) / 3.0));
    for (std::size_t q = 0; q < n; ++q) sv.h(q);
    auto probs = sv.probabilities();
    int want = mod3_weight(x) != 0 ? 1 : 0;
    double p = 0;
    for (std::size_t s = 0; s < probs.size(); ++s)
        if (parity_u64(s) == want) p += probs[s];
    return p;
}
inline double statevector_pbp(const F2Vector& x) {
    return statevector_pbp(TritVector::from_bits(x));
}

// Joint (y,d) distribution of the full Grid-RPHP circuit: vertex qubits are
// index bits 0..|V|-1, edge qubits follow. Edge-qubit measurement commutes
// with everything later (all later gates act on vertex qubits), so it is
// deferred to the end. CNOTs are applied through the layer schedule.
inline std::vector<double> statevector_rphp(const Graph& g, const F2Vector& x) {
    std::size_t nv = std::size_t(g.vertex_count()), ne = std::size_t(g.edge_count());
    if (x.size() != nv) throw ShapeError("statevector_rphp: |x| != |V|");
    StateVector sv(nv + ne);
    for (std::size_t q = 0; q < nv; ++q) sv.h(q);
    for (const auto& layer : cnot_layers(g).layers)
        for (const auto& gate : layer)
            sv.cnot(std::size_t(gate.vertex), nv + std::size_t(gate.edge));
    const std::complex<double> i_unit{0.0, 1.0};
    for (std::size_t q = 0; q < nv; ++q)
        if (x.get(q)) sv.phase(q, i_unit);
    for (std::size_t q = 0; q < nv; ++q) sv.h(q);
    return sv.probabilities();
}

// ---------------------------------------------------------------------------
// Closed-form laws the analytic samplers realize (for TV comparisons)

// Distribution of sample_php_cat over {0,1}^n (m = n).
inline std::vector<double> php_law(const F2Vector& x) {
    std::size_t n = x.size();
    int target = int((x.popcount() / 2) & 1);
    std::vector<double> p(std::size_t(1) << n, 0.0);
    double mass = 1.0 / double(std::size_t(1) << (n - 1));
    for (std::size_t y = 0; y < p.size(); ++y)
        if (parity_u64(y) == target) p[y] = mass;
    return p;
}

// Joint law of sample_rphp over (y,d) pairs, same index layout as
// statevector_rphp.
inline std::vector<double> rphp_joint_law(const Graph& g, const F2Vector& x) {
    std::size_t nv = std::size_t(g.vertex_count()), ne = std::size_t(g.edge_count());
    auto mt = incidence_matrix(g).transpose();
    std::vector<double> p(std::size_t(1) << (nv + ne), 0.0);
    // Each consistent d arises from exactly two z; y is uniform on a coset of
    // size 2^(nv-1): joint mass 2^(2-2nv) per valid pair.
    double mass = std::pow(2.0, 2.0 - 2.0 * double(nv));
    for (std::size_t dbits = 0; dbits < (std::size_t(1) << ne); ++dbits) {
        F2Vector d(ne);
        for (std::size_t e = 0; e < ne; ++e) d.set(e, (dbits >> e) & 1);
        auto z = f2_solve(mt, d);
        if (!z) continue;
        int target = int(((x.popcount() / 2) + std::size_t(z->dot(x))) & 1);
        for (std::size_t y = 0; y < (std::size_t(1) << nv); ++y)
            if (parity_u64(y) == target) p[(dbits << nv) | y] = mass;
    }
    return p;
}

} // namespace parityq
