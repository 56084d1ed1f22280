#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "parityq/f2.hpp"
#include "parityq/graph.hpp"
#include "parityq/rational.hpp"
#include "parityq/rng.hpp"

namespace parityq {

// Vector with entries in {0,1,2}.
class TritVector {
  public:
    TritVector() = default;
    explicit TritVector(std::size_t len) : e_(len, 0) {}
    explicit TritVector(std::vector<uint8_t> entries) : e_(std::move(entries)) {
        for (uint8_t v : e_)
            if (v > 2) throw ShapeError("TritVector: entry out of {0,1,2}");
    }
    static TritVector from_bits(const F2Vector& x) {
        TritVector t(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) t.e_[i] = x.get(i) ? 1 : 0;
        return t;
    }

    std::size_t size() const { return e_.size(); }
    uint8_t get(std::size_t i) const { return e_[i]; }
    void set(std::size_t i, uint8_t v) {
        if (v > 2) throw ShapeError("TritVector: entry out of {0,1,2}");
        e_[i] = v;
    }
    const std::vector<uint8_t>& entries() const { return e_; }

    uint64_t weight() const {
        uint64_t s = 0;
        for (uint8_t v : e_) s += v;
        return s;
    }

    friend bool operator==(const TritVector& a, const TritVector& b) { return a.e_ == b.e_; }

  private:
    std::vector<uint8_t> e_;
};

// ---------------------------------------------------------------------------
// Instances

// Parity halving: given even-parity x of length n, produce y of length m with
// |y| = |x|/2 (mod 2).
struct PhpInstance {
    std::size_t n;
    std::size_t m;
    F2Vector x;

    PhpInstance(std::size_t n_, std::size_t m_, F2Vector x_)
        : n(n_), m(m_), x(std::move(x_)) {
        if (m < 1) throw ShapeError("PhpInstance: m must be >= 1");
        if (x.size() != n) throw ShapeError("PhpInstance: |x| != n");
        if (x.parity() != 0) throw PromiseError("PhpInstance: x must have even parity");
    }
};

// Relaxed parity halving over a connected graph: produce (y over V, d over E)
// such that some z has z_u ^ z_v = d_e on every edge and
// |y| = |x|/2 + <z,x> (mod 2).
struct RphpInstance {
    Graph graph;
    F2Vector x;

    RphpInstance(Graph g, F2Vector x_) : graph(std::move(g)), x(std::move(x_)) {
        if (!graph.is_connected()) throw StructureError("RphpInstance: graph not connected");
        if (x.size() != std::size_t(graph.vertex_count()))
            throw ShapeError("RphpInstance: |x| != |V|");
        if (x.parity() != 0) throw PromiseError("RphpInstance: x must have even parity");
    }
};

// Hidden linear function: q(u) = u^T A u + b^T u (mod 4); find p with
// q(u) = 2 p^T u (mod 4) on the subspace where q is linear.
struct HlfInstance {
    F2Matrix a;
    Z4Vector b;
    std::size_t n;

    HlfInstance(F2Matrix a_, Z4Vector b_) : a(std::move(a_)), b(std::move(b_)), n(a.rows()) {
        if (!a.is_symmetric()) throw std::invalid_argument("HlfInstance: A must be symmetric");
        if (b.size() != n) throw ShapeError("HlfInstance: |b| != n");
    }
};

// Parity bending: output parity must indicate |x| mod 3 != 0. Plain PBP has
// binary inputs; the parallel variant uses trits. Both are stored as trits.
struct PbpInstance {
    TritVector x;

    explicit PbpInstance(TritVector x_) : x(std::move(x_)) {}
    explicit PbpInstance(const F2Vector& bits) : x(TritVector::from_bits(bits)) {}
};

// 3-output mod 3: given x over trits, answer the trit |x| mod 3.
struct Mod3Instance {
    TritVector x;
    explicit Mod3Instance(TritVector x_) : x(std::move(x_)) {}
};

using SubInstance = std::variant<PhpInstance, RphpInstance, HlfInstance, PbpInstance, Mod3Instance>;

// k sub-instances plus the fraction of them that must verify. 1 for parallel
// PHP / grid-RPHP, 2/3 + 0.05 for parallel PBP, 1/3 + 0.01 for parallel
// 3-output mod 3.
struct ParallelInstance {
    std::size_t k;
    Rational win_fraction;
    std::vector<SubInstance> instances;

    ParallelInstance(Rational fraction, std::vector<SubInstance> subs)
        : k(subs.size()), win_fraction(fraction), instances(std::move(subs)) {
        if (win_fraction <= Rational(0) || win_fraction > Rational(1))
            throw std::invalid_argument("ParallelInstance: win fraction out of (0,1]");
    }

    // ceil(win_fraction * k), exactly.
    std::size_t required_wins() const {
        long long num = win_fraction.num * (long long)k;
        return std::size_t((num + win_fraction.den - 1) / win_fraction.den);
    }

    static Rational php_fraction() { return Rational(1); }
    static Rational pbp_fraction() { return Rational(2, 3) + Rational(1, 20); }
    static Rational mod3_fraction() { return Rational(1, 3) + Rational(1, 100); }
};

// ---------------------------------------------------------------------------
// Generators

// Uniform over the 2^(n-1) even-parity strings: n-1 free bits, last bit fixes
// the parity.
inline F2Vector gen_even_parity_input(std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("gen_even_parity_input: n must be >= 1");
    F2Vector x(n);
    for (std::size_t w = 0; w * 64 < n - 1; ++w) {
        uint64_t bits = rng.u64();
        std::size_t used = std::min<std::size_t>(64, (n - 1) - w * 64);
        if (used < 64) bits &= (1ULL << used) - 1;
        for (std::size_t i = 0; i < used; ++i)
            if ((bits >> i) & 1) x.set(w * 64 + i, true);
    }
    if (x.parity() != 0) x.set(n - 1, true);
    return x;
}

inline TritVector gen_trit_input(std::size_t n, Rng& rng) {
    TritVector t(n);
    for (std::size_t i = 0; i < n; ++i) t.set(i, uint8_t(rng.below(3)));
    return t;
}

// ---------------------------------------------------------------------------
// Verifiers (pure functions of instance and proposed output)

inline bool verify_php(const PhpInstance& inst, const F2Vector& y) {
    if (y.size() != inst.m) throw ShapeError("verify_php: |y| != m");
    int target = int((inst.x.popcount() / 2) & 1);
    return y.parity() == target;
}

inline bool verify_rphp(const RphpInstance& inst, const F2Vector& y, const F2Vector& d) {
    const Graph& g = inst.graph;
    if (y.size() != std::size_t(g.vertex_count())) throw ShapeError("verify_rphp: |y| != |V|");
    if (d.size() != std::size_t(g.edge_count())) throw ShapeError("verify_rphp: |d| != |E|");
    // Any z with M^T z = d works: <z,x> = <z-bar,x> (mod 2) for even x.
    auto z = f2_solve(incidence_matrix(g).transpose(), d);
    if (!z) return false;
    int target = int(((inst.x.popcount() / 2) + std::size_t(z->dot(inst.x))) & 1);
    return y.parity() == target;
}

// q(u) = u^T A u + b^T u evaluated in integer arithmetic and reduced mod 4.
inline int eval_q(const HlfInstance& inst, const F2Vector& u) {
    if (u.size() != inst.n) throw ShapeError("eval_q: |u| != n");
    unsigned acc = 0;
    for (std::size_t i = 0; i < inst.n; ++i) {
        if (!u.get(i)) continue;
        acc += unsigned(inst.a.get(i, i)) + inst.b.get(i);
        // off-diagonal pairs i<j contribute 2*A_ij
        for (std::size_t j = i + 1; j < inst.n; ++j)
            if (u.get(j) && inst.a.get(i, j)) acc += 2;
    }
    return int(acc & 3);
}

// GF(2) matrix whose kernel is L_q: A with its diagonal XORed by b mod 2.
// The identity q(u^v) - q(u) - q(v) = 2 u^T Atilde v (mod 4) makes this the
// exact linearity subspace; tests validate it against the definitional
// membership scan before anything relies on it.
inline F2Matrix lq_matrix(const HlfInstance& inst) {
    F2Matrix m = inst.a;
    for (std::size_t i = 0; i < inst.n; ++i)
        m.set(i, i, (unsigned(inst.a.get(i, i)) ^ (inst.b.get(i) & 1)) != 0);
    return m;
}

// Fast mode: check q(u) = 2 p^T u (mod 4) on a kernel basis of L_q. Both
// sides are additive on L_q, so a basis check covers the whole subspace.
inline bool verify_hlf(const HlfInstance& inst, const F2Vector& p) {
    if (p.size() != inst.n) throw ShapeError("verify_hlf: |p| != n");
    if (!inst.a.is_symmetric()) throw std::invalid_argument("verify_hlf: A not symmetric");
    for (const auto& u : f2_kernel_basis(lq_matrix(inst))) {
        int q = eval_q(inst, u);
        if (q & 1) throw std::runtime_error("verify_hlf: odd q on L_q, characterization broken");
        if (((q >> 1) & 1) != u.dot(p)) return false;
    }
    return true;
}

namespace detail {

// Table of q(u) for all u in F_2^n, n <= 20. q(u | e_i) = q(u) + c_i +
// 2 <row_i, u> for u with bit i clear, which fills the table in one pass.
inline std::vector<uint8_t> q_table(const HlfInstance& inst) {
    if (inst.n > 20) throw CapacityError("q_table: n > 20");
    std::size_t n = inst.n;
    std::vector<uint32_t> rows(n, 0);
    std::vector<uint8_t> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = uint8_t((unsigned(inst.a.get(i, i)) + inst.b.get(i)) & 3);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && inst.a.get(i, j)) rows[i] |= 1u << j;
    }
    std::vector<uint8_t> q(std::size_t(1) << n);
    q[0] = 0;
    for (std::size_t u = 1; u < q.size(); ++u) {
        unsigned i = unsigned(__builtin_ctzll(u));
        std::size_t prev = u & (u - 1);
        q[u] = uint8_t((q[prev] + c[i] + 2 * popcount_u64(rows[i] & prev)) & 3);
    }
    return q;
}

// Definitional membership: u is in L_q iff q(u^v) = q(u) + q(v) (mod 4) for
// every v. A violating v settles non-membership immediately; a "member"
// answer always means the full 2^n scan passed. The optional singleton
// pre-pass only reorders the scan so typical non-members exit within n
// steps.
inline bool lq_member_brute(const std::vector<uint8_t>& q, std::size_t n, std::size_t u,
                            bool singleton_prepass = true) {
    auto ok = [&](std::size_t v) { return ((q[u] + q[v]) & 3) == q[u ^ v]; };
    if (singleton_prepass)
        for (std::size_t i = 0; i < n; ++i)
            if (!ok(std::size_t(1) << i)) return false;
    for (std::size_t v = 0; v < q.size(); ++v)
        if (!ok(v)) return false;
    return true;
}

} // namespace detail

// Brute-force mode for n <= 20: enumerate all u, test L_q membership by the
// definition, and check the linear condition on every member.
inline bool verify_hlf_brute(const HlfInstance& inst, const F2Vector& p,
                             bool singleton_prepass = true) {
    if (p.size() != inst.n) throw ShapeError("verify_hlf_brute: |p| != n");
    if (!inst.a.is_symmetric()) throw std::invalid_argument("verify_hlf_brute: A not symmetric");
    auto q = detail::q_table(inst);
    uint32_t pmask = uint32_t(p.low_word());
    for (std::size_t u = 0; u < q.size(); ++u) {
        if (!detail::lq_member_brute(q, inst.n, u, singleton_prepass)) continue;
        int qu = q[u];
        if (qu & 1) throw std::runtime_error("verify_hlf_brute: odd q on L_q");
        if (((qu >> 1) & 1) != parity_u64(pmask & u)) return false;
    }
    return true;
}

inline int mod3_weight(const TritVector& x) { return int(x.weight() % 3); }
inline int mod3_weight(const F2Vector& x) { return int(x.popcount() % 3); }

inline bool verify_pbp(const TritVector& x, const F2Vector& y) {
    return y.parity() == (mod3_weight(x) != 0 ? 1 : 0);
}
inline bool verify_pbp(const F2Vector& x, const F2Vector& y) {
    return y.parity() == (mod3_weight(x) != 0 ? 1 : 0);
}
inline bool verify_pbp(const PbpInstance& inst, const F2Vector& y) {
    return verify_pbp(inst.x, y);
}

inline bool verify_mod3(const Mod3Instance& inst, int y) {
    return y == mod3_weight(inst.x);
}

// True iff at least ceil(win_fraction * k) sub-instances verify. `sub` is
// called as sub(i, outputs[i]) -> bool.
template <class Output, class SubVerifier>
bool verify_parallel(const ParallelInstance& inst, const std::vector<Output>& outputs,
                     SubVerifier&& sub) {
    if (outputs.size() != inst.k) throw ShapeError("verify_parallel: output count != k");
    std::size_t wins = 0;
    for (std::size_t i = 0; i < inst.k; ++i)
        if (sub(i, outputs[i])) ++wins;
    return wins >= inst.required_wins();
}

} // namespace parityq
