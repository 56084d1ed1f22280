#pragma once

// Shared test utilities: a chi-square tail probability for the sampling
// tests, and small brute-force oracles kept independent of the library code
// paths they check.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "parityq/classical.hpp"
#include "parityq/f2.hpp"
#include "parityq/graph.hpp"
#include "parityq/rational.hpp"

namespace testutil {

// Upper regularized incomplete gamma Q(a, x) via series / continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) { // series for P(a,x), return 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q(a,x)
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi_square_pvalue(double stat, int dof) {
    return gamma_q(double(dof) / 2.0, stat / 2.0);
}

inline double chi_square_stat(const std::vector<std::size_t>& observed,
                              const std::vector<double>& expected) {
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double diff = double(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

// Success probability of an affine strategy by direct enumeration of all
// even-parity inputs. Oracle for the phase-product formula.
inline parityq::Rational affine_brute(const parityq::AffineStrategy& s, std::size_t n) {
    long long wins = 0, total = 0;
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
        if (parityq::parity_u64(x)) continue;
        ++total;
        int target = (parityq::popcount_u64(x) >> 1) & 1;
        int answer = s.a ^ parityq::parity_u64(x & s.b.low_word());
        if (answer == target) ++wins;
    }
    return parityq::Rational(wins, total);
}

// Connected random graph: a random spanning tree plus extra random edges.
inline parityq::Graph random_connected_graph(int n, int extra_edges, parityq::Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({int(rng.below(uint64_t(v))), v});
    std::set<std::pair<int, int>> have(edges.begin(), edges.end());
    for (int t = 0; t < extra_edges * 4 && int(have.size()) < n - 1 + extra_edges; ++t) {
        int u = int(rng.below(uint64_t(n))), v = int(rng.below(uint64_t(n)));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (have.insert({u, v}).second) edges.push_back({u, v});
    }
    return parityq::Graph(n, std::move(edges));
}

// Count of trit strings of length n with weight = r (mod 3), by dynamic
// programming.
inline long long count_trits_mod3(std::size_t n, int r) {
    long long counts[3] = {1, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        long long next[3];
        for (int c = 0; c < 3; ++c)
            next[c] = counts[c] + counts[(c + 2) % 3] + counts[(c + 1) % 3];
        std::copy(next, next + 3, counts);
    }
    return counts[r];
}

} // namespace testutil
