#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "parityq/f2.hpp"
#include "parityq/problems.hpp"
#include "parityq/rational.hpp"
#include "parityq/rng.hpp"

namespace parityq {

// ---------------------------------------------------------------------------
// Affine strategies for the parity halving game

// Locality-1 strategy: each player i answers a degree-1 polynomial of x_i, so
// the joint output parity is a ^ <b,x>.
struct AffineStrategy {
    int a = 0;
    F2Vector b;
};

namespace detail {

// Product of factors (1 + i^(1+2*b_j)), tracked exactly as an eighth root of
// unity times a power of sqrt(2). Floating point would blur the
// 2^(-ceil(n/2))-scale gaps this module exists to resolve.
struct PhaseProduct {
    int root8 = 0;    // exponent of exp(i*pi/4)
    int sqrt2_pow = 0;

    void mul_one_plus_i() { root8 = (root8 + 1) & 7; ++sqrt2_pow; }
    void mul_one_minus_i() { root8 = (root8 + 7) & 7; ++sqrt2_pow; }

    // Re(zeta^k * sqrt(2)^s) as +/- 2^e or zero; e is exact because k and s
    // always share parity here.
    std::optional<std::pair<int, int>> real_part() const { // (sign, exponent of 2)
        switch (root8) {
            case 0: return std::pair{+1, sqrt2_pow / 2};
            case 4: return std::pair{-1, sqrt2_pow / 2};
            case 1: case 7: return std::pair{+1, (sqrt2_pow - 1) / 2};
            case 3: case 5: return std::pair{-1, (sqrt2_pow - 1) / 2};
            default: return std::nullopt; // purely imaginary
        }
    }
};

inline Rational affine_success_from_product(std::size_t n, int a, const PhaseProduct& prod) {
    // success = 1/2 + (-1)^a * Re(prod) / 2^n
    auto re = prod.real_part();
    if (!re) return Rational(1, 2);
    auto [sign, e] = *re;
    if (a) sign = -sign;
    return Rational(1, 2) + Rational(sign) * Rational::pow2(e - int(n));
}

} // namespace detail

// Exact success probability of an affine strategy on uniform even-parity
// inputs, via the phase-product identity
//   corr = 2^-(n-1) * Re( prod_j (1 + i^(1+2 b_j)) ).
inline Rational affine_win_prob_exact(const AffineStrategy& strategy, std::size_t n) {
    if (n < 1) throw std::invalid_argument("affine_win_prob_exact: n must be >= 1");
    if (strategy.b.size() != n) throw ShapeError("affine_win_prob_exact: |b| != n");
    detail::PhaseProduct prod;
    for (std::size_t j = 0; j < n; ++j)
        strategy.b.get(j) ? prod.mul_one_minus_i() : prod.mul_one_plus_i();
    return detail::affine_success_from_product(n, strategy.a, prod);
}

// Exhaustive scan of all 2^(n+1) affine strategies; each is scored in O(1)
// from |b|. Returns the first maximizer in (b ascending, a in {0,1}) order.
// The value equals 1/2 + 2^-ceil(n/2) (matching strategies exist).
inline std::pair<AffineStrategy, Rational> best_affine_strategy(std::size_t n) {
    if (n < 1) throw std::invalid_argument("best_affine_strategy: n must be >= 1");
    if (n > 24) throw CapacityError("best_affine_strategy: n > 24");
    auto value_from_weight = [n](std::size_t weight, int a) {
        detail::PhaseProduct prod;
        prod.sqrt2_pow = int(n);
        prod.root8 = int((n + 6 * weight) & 7); // each b_j=1 turns +1 into -1 step
        return detail::affine_success_from_product(n, a, prod);
    };
    AffineStrategy best{0, F2Vector(n)};
    Rational best_val(0);
    for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
        std::size_t w = std::size_t(popcount_u64(bits));
        Rational s0 = value_from_weight(w, 0);
        Rational s1 = value_from_weight(w, 1);
        assert(s0 + s1 == Rational(1)); // complementing one output flips success
        if (s0 > best_val) { best_val = s0; best = {0, F2Vector::from_word(n, bits)}; }
        if (s1 > best_val) { best_val = s1; best = {1, F2Vector::from_word(n, bits)}; }
    }
    return {best, best_val};
}

// ---------------------------------------------------------------------------
// Constrained parity halving game

// d1 fixed input bits plus d2 disjoint parity groups, on top of the global
// even-parity promise.
struct GameConstraints {
    struct ParityGroup {
        std::vector<int> indices;
        int parity = 0;
    };
    std::vector<std::pair<int, int>> fixed_bits; // (index, value)
    std::vector<ParityGroup> groups;

    std::size_t d1() const { return fixed_bits.size(); }
    std::size_t d2() const { return groups.size(); }

    void validate(std::size_t n) const {
        std::set<int> used;
        for (auto [i, v] : fixed_bits) {
            if (i < 0 || std::size_t(i) >= n) throw ShapeError("constraints: index out of range");
            if (v != 0 && v != 1) throw std::invalid_argument("constraints: bad fixed value");
            if (!used.insert(i).second) throw std::invalid_argument("constraints: overlap");
        }
        for (const auto& g : groups) {
            if (g.indices.size() < 2) throw std::invalid_argument("constraints: group size < 2");
            for (int i : g.indices) {
                if (i < 0 || std::size_t(i) >= n) throw ShapeError("constraints: index out of range");
                if (!used.insert(i).second) throw std::invalid_argument("constraints: overlap");
            }
        }
    }
};

namespace detail {

struct ConstraintMasks {
    uint64_t fixed_mask = 0, fixed_vals = 0;
    std::vector<std::pair<uint64_t, int>> group_masks;

    bool admits(uint64_t x) const {
        if ((x & fixed_mask) != fixed_vals) return false;
        if (parity_u64(x)) return false;
        for (auto [m, p] : group_masks)
            if (parity_u64(x & m) != p) return false;
        return true;
    }
};

inline ConstraintMasks compile_constraints(std::size_t n, const GameConstraints& c) {
    c.validate(n);
    ConstraintMasks m;
    for (auto [i, v] : c.fixed_bits) {
        m.fixed_mask |= 1ULL << i;
        if (v) m.fixed_vals |= 1ULL << i;
    }
    for (const auto& g : c.groups) {
        uint64_t mask = 0;
        for (int i : g.indices) mask |= 1ULL << i;
        m.group_masks.push_back({mask, g.parity});
    }
    return m;
}

} // namespace detail

// Exact success probability of one affine strategy on the uniform
// distribution over the constrained promise set, by direct enumeration.
inline Rational constrained_game_value(std::size_t n, const GameConstraints& constraints,
                                       const AffineStrategy& strategy) {
    if (n > 22) throw CapacityError("constrained_game_value: n > 22");
    if (strategy.b.size() != n) throw ShapeError("constrained_game_value: |b| != n");
    auto masks = detail::compile_constraints(n, constraints);
    uint64_t bmask = strategy.b.low_word();
    long long wins = 0, total = 0;
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
        if (!masks.admits(x)) continue;
        ++total;
        int target = (popcount_u64(x) >> 1) & 1;
        if ((strategy.a ^ parity_u64(x & bmask)) == target) ++wins;
    }
    if (total == 0) throw std::domain_error("constrained_game_value: empty promise set");
    return Rational(wins, total);
}

// Exhaustive maximum over all 2^(n+1) affine strategies of the constrained
// game value. One Walsh-Hadamard transform of the promise-masked sign table
// scores every strategy at once, in exact integer arithmetic; unit tests pin
// it to the per-strategy enumeration route.
inline std::pair<AffineStrategy, Rational>
max_constrained_affine(std::size_t n, const GameConstraints& constraints) {
    if (n > 22) throw CapacityError("max_constrained_affine: n > 22");
    auto masks = detail::compile_constraints(n, constraints);
    std::vector<long long> g(std::size_t(1) << n, 0);
    long long total = 0;
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
        if (!masks.admits(x)) continue;
        ++total;
        g[x] = ((popcount_u64(x) >> 1) & 1) ? -1 : +1; // Re(i^|x|) on the promise
    }
    if (total == 0) throw std::domain_error("max_constrained_affine: empty promise set");
    for (std::size_t len = 1; len < g.size(); len <<= 1)
        for (std::size_t blk = 0; blk < g.size(); blk += 2 * len)
            for (std::size_t i = blk; i < blk + len; ++i) {
                long long u = g[i], v = g[i + len];
                g[i] = u + v;
                g[i + len] = u - v;
            }
    uint64_t best_b = 0;
    long long best_abs = -1;
    int best_a = 0;
    for (uint64_t b = 0; b < g.size(); ++b) {
        long long c = g[b];
        long long abs_c = c < 0 ? -c : c;
        if (abs_c > best_abs) { best_abs = abs_c; best_b = b; best_a = c < 0; }
    }
    return {{best_a, F2Vector::from_word(n, best_b)}, Rational(total + best_abs, 2 * total)};
}

// Stated bound of the constrained-game theorem: 1/2 + 2^(-(n-d1)/2 + d2).
inline double constrained_game_bound(std::size_t n, std::size_t d1, std::size_t d2) {
    return 0.5 + std::exp2(-double(n - d1) / 2.0 + double(d2));
}

// ---------------------------------------------------------------------------
// Locality-l table strategies

// Per-output support set and truth table; locality is the largest support.
struct LocalStrategy {
    std::size_t n = 0;
    std::vector<std::vector<int>> supports;
    std::vector<std::vector<uint64_t>> tables; // 2^|S_j| bits, packed

    std::size_t outputs() const { return supports.size(); }
    std::size_t locality() const {
        std::size_t l = 0;
        for (const auto& s : supports) l = std::max(l, s.size());
        return l;
    }

    void validate() const {
        if (supports.size() != tables.size())
            throw ShapeError("LocalStrategy: supports/tables mismatch");
        for (std::size_t j = 0; j < supports.size(); ++j) {
            for (int i : supports[j])
                if (i < 0 || std::size_t(i) >= n)
                    throw ShapeError("LocalStrategy: support index out of range");
            if (tables[j].size() != words_for_bits(std::size_t(1) << supports[j].size()))
                throw ShapeError("LocalStrategy: table size != 2^|S|");
        }
    }

    bool output(std::size_t j, const F2Vector& x) const {
        std::size_t idx = 0;
        for (std::size_t t = 0; t < supports[j].size(); ++t)
            idx |= std::size_t(x.get(supports[j][t])) << t;
        return (tables[j][idx >> 6] >> (idx & 63)) & 1;
    }

    F2Vector eval(const F2Vector& x) const {
        if (x.size() != n) throw ShapeError("LocalStrategy::eval: |x| != n");
        F2Vector y(outputs());
        for (std::size_t j = 0; j < outputs(); ++j) y.set(j, output(j, x));
        return y;
    }

    // Locality-2 strategy answering AND of every pair; weight of the output
    // is C(|x|, 2), which halves the parity.
    static LocalStrategy pairwise_and(std::size_t n) {
        LocalStrategy s;
        s.n = n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                s.supports.push_back({int(i), int(j)});
                s.tables.push_back({0b1000}); // 1 only when both bits set
            }
        return s;
    }

    static LocalStrategy constant_zero(std::size_t n, std::size_t m) {
        LocalStrategy s;
        s.n = n;
        s.supports.assign(m, {});
        s.tables.assign(m, {0});
        return s;
    }
};

struct SuccessEstimate {
    double estimate = 0;
    double stderr_ = 0;
    std::optional<Rational> exact;
};

// Exact success fraction over all even-parity inputs.
template <class Verifier>
SuccessEstimate eval_local_exhaustive(const LocalStrategy& strategy, Verifier&& verify) {
    if (strategy.n > 22) throw CapacityError("eval_local_exhaustive: n > 22");
    if (strategy.n < 1) throw std::invalid_argument("eval_local_exhaustive: empty input");
    strategy.validate();
    long long wins = 0, total = 0;
    std::size_t n = strategy.n;
    for (uint64_t prefix = 0; prefix < (uint64_t(1) << (n - 1)); ++prefix) {
        uint64_t xbits = prefix | (uint64_t(parity_u64(prefix)) << (n - 1));
        F2Vector x = F2Vector::from_word(n, xbits);
        ++total;
        if (verify(x, strategy.eval(x))) ++wins;
    }
    SuccessEstimate e;
    e.exact = Rational(wins, total);
    e.estimate = e.exact->to_double();
    e.stderr_ = 0;
    return e;
}

// Unbiased Monte Carlo estimate with binomial standard error.
template <class Verifier>
SuccessEstimate eval_local_montecarlo(const LocalStrategy& strategy, Verifier&& verify,
                                      std::size_t samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("eval_local_montecarlo: no samples");
    strategy.validate();
    long long wins = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        F2Vector x = gen_even_parity_input(strategy.n, rng);
        if (verify(x, strategy.eval(x))) ++wins;
    }
    SuccessEstimate e;
    e.estimate = double(wins) / double(samples);
    e.stderr_ = std::sqrt(std::max(e.estimate * (1 - e.estimate), 1e-12) / double(samples));
    return e;
}

// ---------------------------------------------------------------------------
// Interaction graphs, light cones, independent inputs

struct InteractionGraph {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<std::vector<int>> output_cones; // per output, sorted input sets

    static InteractionGraph from_strategy(const LocalStrategy& s) {
        InteractionGraph g;
        g.inputs = s.n;
        g.outputs = s.outputs();
        g.output_cones = s.supports;
        for (auto& cone : g.output_cones) std::sort(cone.begin(), cone.end());
        return g;
    }

    std::vector<std::vector<int>> input_cones() const {
        std::vector<std::vector<int>> ic(inputs);
        for (std::size_t j = 0; j < outputs; ++j)
            for (int i : output_cones[j]) ic[i].push_back(int(j));
        return ic;
    }
};

// (per-output input sets, per-input output sets)
inline std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>
light_cones(const InteractionGraph& g) {
    return {g.output_cones, g.input_cones()};
}

// Circuit DAG over fan-in-2 gates; node ids are inputs first, then gates.
struct FanIn2Dag {
    struct Gate {
        int a, b;
    };
    std::size_t n_inputs = 0;
    std::vector<Gate> gates;
    std::vector<int> output_nodes;
};

// Interaction graph by backward reachability; checks the light-cone bound
// |LC(output)| <= 2^depth for every output.
inline InteractionGraph interaction_graph_from_dag(const FanIn2Dag& dag) {
    std::size_t nodes = dag.n_inputs + dag.gates.size();
    std::vector<std::set<int>> cone(nodes);
    std::vector<int> depth(nodes, 0);
    for (std::size_t i = 0; i < dag.n_inputs; ++i) cone[i] = {int(i)};
    for (std::size_t gi = 0; gi < dag.gates.size(); ++gi) {
        std::size_t id = dag.n_inputs + gi;
        auto [a, b] = dag.gates[gi];
        if (a < 0 || b < 0 || std::size_t(a) >= id || std::size_t(b) >= id)
            throw StructureError("interaction_graph_from_dag: bad wiring");
        cone[id] = cone[a];
        cone[id].insert(cone[b].begin(), cone[b].end());
        depth[id] = 1 + std::max(depth[a], depth[b]);
    }
    InteractionGraph g;
    g.inputs = dag.n_inputs;
    g.outputs = dag.output_nodes.size();
    for (int node : dag.output_nodes) {
        if (node < 0 || std::size_t(node) >= nodes)
            throw StructureError("interaction_graph_from_dag: bad output node");
        if (cone[node].size() > (std::size_t(1) << depth[node]))
            throw StructureError("interaction_graph_from_dag: light cone exceeds 2^depth");
        g.output_cones.emplace_back(cone[node].begin(), cone[node].end());
    }
    return g;
}

// Input set S such that every output cone holds at most one member of S.
// Greedy minimum-degree-first on the input intersection graph; meets the
// Turan guarantee |S| >= n/(1+D) for D the average intersection degree.
inline std::vector<int> independent_inputs(const InteractionGraph& g) {
    std::size_t n = g.inputs;
    std::vector<std::set<int>> nbr(n);
    for (const auto& cone : g.output_cones)
        for (std::size_t s = 0; s < cone.size(); ++s)
            for (std::size_t t = s + 1; t < cone.size(); ++t) {
                nbr[cone[s]].insert(cone[t]);
                nbr[cone[t]].insert(cone[s]);
            }
    std::size_t twice_edges = 0;
    for (const auto& s : nbr) twice_edges += s.size();

    std::vector<bool> alive(n, true);
    std::vector<int> degree(n);
    for (std::size_t i = 0; i < n; ++i) degree[i] = int(nbr[i].size());
    std::vector<int> chosen;
    std::size_t remaining = n;
    while (remaining > 0) {
        int pick = -1;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && (pick < 0 || degree[i] < degree[pick])) pick = int(i);
        chosen.push_back(pick);
        std::vector<int> dead{pick};
        for (int j : nbr[pick])
            if (alive[j]) dead.push_back(j);
        for (int j : dead) {
            alive[j] = false;
            --remaining;
            for (int k : nbr[j])
                if (alive[k]) --degree[k];
        }
    }
    std::sort(chosen.begin(), chosen.end());

    // |S| * (n + 2E) >= n^2 is the Turan bound with D = 2E/n, cleared of
    // denominators.
    if (n > 0 && chosen.size() * (n + twice_edges) < n * n)
        throw std::runtime_error("independent_inputs: Turan bound violated");
    for (const auto& cone : g.output_cones) {
        std::size_t hits = 0;
        for (int i : cone)
            if (std::binary_search(chosen.begin(), chosen.end(), i)) ++hits;
        if (hits > 1) throw std::runtime_error("independent_inputs: cone hit twice");
    }
    return chosen;
}

// ---------------------------------------------------------------------------
// p-random restrictions

struct Restriction {
    static constexpr uint8_t kStar = 2;
    std::vector<uint8_t> vals; // 0, 1, or kStar
    double p = 0;

    std::size_t size() const { return vals.size(); }
    bool is_star(std::size_t i) const { return vals[i] == kStar; }
    std::size_t star_count() const {
        std::size_t c = 0;
        for (uint8_t v : vals) c += (v == kStar);
        return c;
    }

    // Fill fixed coordinates from the restriction, stars from x.
    F2Vector complete(const F2Vector& x) const {
        if (x.size() != vals.size()) throw ShapeError("Restriction::complete: length mismatch");
        F2Vector y(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            y.set(i, vals[i] == kStar ? x.get(i) : vals[i] != 0);
        return y;
    }
};

// Each coordinate is * with probability p, else a uniform bit.
inline Restriction sample_restriction(std::size_t n, double p, Rng& rng) {
    if (p < 0 || p > 1) throw std::invalid_argument("sample_restriction: p out of [0,1]");
    Restriction rho;
    rho.p = p;
    rho.vals.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        rho.vals[i] = rng.bernoulli(p) ? Restriction::kStar : uint8_t(rng.bit());
    return rho;
}

// Partially evaluate every truth table under the restriction; supports shrink
// to their alive coordinates and never grow.
inline LocalStrategy apply_restriction(const LocalStrategy& strategy, const Restriction& rho) {
    if (rho.size() != strategy.n) throw ShapeError("apply_restriction: length mismatch");
    LocalStrategy out;
    out.n = strategy.n;
    for (std::size_t j = 0; j < strategy.outputs(); ++j) {
        const auto& support = strategy.supports[j];
        std::vector<int> alive;
        std::size_t fixed_idx = 0;
        std::vector<std::size_t> alive_pos;
        for (std::size_t t = 0; t < support.size(); ++t) {
            if (rho.is_star(support[t])) {
                alive.push_back(support[t]);
                alive_pos.push_back(t);
            } else if (rho.vals[support[t]]) {
                fixed_idx |= std::size_t(1) << t;
            }
        }
        std::vector<uint64_t> table(words_for_bits(std::size_t(1) << alive.size()), 0);
        for (std::size_t sub = 0; sub < (std::size_t(1) << alive.size()); ++sub) {
            std::size_t idx = fixed_idx;
            for (std::size_t t = 0; t < alive_pos.size(); ++t)
                if ((sub >> t) & 1) idx |= std::size_t(1) << alive_pos[t];
            if ((strategy.tables[j][idx >> 6] >> (idx & 63)) & 1)
                table[sub >> 6] |= 1ULL << (sub & 63);
        }
        out.supports.push_back(std::move(alive));
        out.tables.push_back(std::move(table));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mod 3 random self-reduction

// Wrap a 3-output mod 3 solver: sample a in {1,-1} and a uniform b with known
// weight (prefix-difference trick, |b| = -c_1 mod 3), query once on
// a*x + b, and unshift. A solver correct on a gamma fraction of uniform
// inputs becomes gamma-correct on every fixed x, with both wrong answers
// equally likely.
inline int self_reduce_mod3(const std::function<int(const TritVector&)>& inner,
                            const TritVector& x, Rng& rng) {
    std::size_t n = x.size();
    if (n < 1) throw std::invalid_argument("self_reduce_mod3: empty input");
    int a = 1 + int(rng.below(2)); // 2 represents -1 mod 3
    TritVector c = gen_trit_input(n, rng);
    TritVector shifted(n);
    int weight_b = (3 - c.get(0)) % 3;
    for (std::size_t i = 0; i < n; ++i) {
        int b_i = (i + 1 < n) ? (c.get(i + 1) + 3 - c.get(i)) % 3 : (3 - c.get(i)) % 3;
        shifted.set(i, uint8_t((a * x.get(i) + b_i) % 3));
    }
    int r = inner(shifted);
    if (r < 0 || r > 2) throw std::invalid_argument("self_reduce_mod3: inner answer not a trit");
    return ((r + 3 - weight_b) % 3) * a % 3; // 1/a = a mod 3 for a in {1,2}
}

} // namespace parityq
