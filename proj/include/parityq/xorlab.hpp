#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "parityq/common.hpp"
#include "parityq/rng.hpp"

namespace parityq {

// Outcome records of repeated parallel runs: one symbol per sub-instance,
// 0 meaning the sub-instance was won, nonzero encoding the loss type.
// Binary records use symbols {0,1}; ternary records use {0,1,2} (mod-3
// deviations). Counts are kept as an exact histogram so every bias below is
// an integer computation until the final division.
struct IndicatorSamples {
    int alphabet = 2; // 2 or 3
    std::size_t k = 0;
    std::size_t count = 0;
    std::vector<uint64_t> histogram; // alphabet^k cells, record encoded base-alphabet

    static IndicatorSamples binary(std::size_t k) {
        if (k > 20) throw CapacityError("IndicatorSamples: k > 20");
        IndicatorSamples s;
        s.alphabet = 2;
        s.k = k;
        s.histogram.assign(std::size_t(1) << k, 0);
        return s;
    }
    static IndicatorSamples ternary(std::size_t k) {
        if (k > 12) throw CapacityError("IndicatorSamples: ternary k > 12");
        IndicatorSamples s;
        s.alphabet = 3;
        s.k = k;
        std::size_t cells = 1;
        for (std::size_t i = 0; i < k; ++i) cells *= 3;
        s.histogram.assign(cells, 0);
        return s;
    }

    void add(const std::vector<uint8_t>& record) {
        if (record.size() != k) throw ShapeError("IndicatorSamples::add: record length != k");
        std::size_t code = 0;
        for (std::size_t i = k; i-- > 0;) {
            if (record[i] >= uint8_t(alphabet))
                throw ShapeError("IndicatorSamples::add: symbol out of alphabet");
            code = code * std::size_t(alphabet) + record[i];
        }
        ++histogram[code];
        ++count;
    }
};

// Run `play` N times; each call fills one k-symbol outcome record.
inline IndicatorSamples
collect_win_indicators(const std::function<void(Rng&, std::vector<uint8_t>&)>& play,
                       std::size_t k, int alphabet, std::size_t samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("collect_win_indicators: no samples");
    IndicatorSamples out =
        alphabet == 3 ? IndicatorSamples::ternary(k) : IndicatorSamples::binary(k);
    std::vector<uint8_t> record(k);
    for (std::size_t t = 0; t < samples; ++t) {
        play(rng, record);
        out.add(record);
    }
    return out;
}

struct BiasEstimate {
    double bias = 0;
    double stderr_ = 0;
};

// Empirical mean of (-1)^(xor of record bits in S), with binomial standard
// error. S is a nonempty bitmask over [k].
inline BiasEstimate subset_bias(const IndicatorSamples& samples, uint64_t subset) {
    if (samples.alphabet != 2) throw std::invalid_argument("subset_bias: binary samples only");
    if (subset == 0) throw std::invalid_argument("subset_bias: empty subset");
    if (subset >> samples.k) throw ShapeError("subset_bias: subset out of range");
    uint64_t odd = 0;
    for (std::size_t w = 0; w < samples.histogram.size(); ++w)
        if (parity_u64(w & subset)) odd += samples.histogram[w];
    double n = double(samples.count);
    BiasEstimate e;
    e.bias = (n - 2.0 * double(odd)) / n;
    e.stderr_ = std::sqrt(std::max(1.0 - e.bias * e.bias, 1e-12) / n);
    return e;
}

// Signed biases for all 2^k subsets at once: the Walsh-Hadamard transform of
// the histogram, exact in integers. Entry 0 is the empty subset (always 1).
inline std::vector<double> all_subset_biases(const IndicatorSamples& samples) {
    if (samples.alphabet != 2)
        throw std::invalid_argument("all_subset_biases: binary samples only");
    std::vector<long long> h(samples.histogram.begin(), samples.histogram.end());
    for (std::size_t len = 1; len < h.size(); len <<= 1)
        for (std::size_t blk = 0; blk < h.size(); blk += 2 * len)
            for (std::size_t i = blk; i < blk + len; ++i) {
                long long u = h[i], v = h[i + len];
                h[i] = u + v;
                h[i + len] = u - v;
            }
    std::vector<double> biases(h.size());
    for (std::size_t s = 0; s < h.size(); ++s) biases[s] = double(h[s]) / double(samples.count);
    return biases;
}

// epsilon = max over nonempty subsets of |bias|, the two Vazirani-style
// bounds it implies, and the empirical all-win mass for comparison.
struct VaziraniReport {
    double epsilon = 0;       // max_S |bias_S|
    double tv_bound = 0;      // epsilon * 2^(k/2)
    double zero_mass_bound = 0; // 2^-k + epsilon
    double empirical_zero_mass = 0;
};

inline VaziraniReport vazirani_checks(const IndicatorSamples& samples) {
    if (samples.alphabet != 2) throw std::invalid_argument("vazirani_checks: binary samples only");
    auto biases = all_subset_biases(samples);
    VaziraniReport r;
    for (std::size_t s = 1; s < biases.size(); ++s)
        r.epsilon = std::max(r.epsilon, std::abs(biases[s]));
    r.tv_bound = r.epsilon * std::exp2(double(samples.k) / 2.0);
    r.zero_mass_bound = std::exp2(-double(samples.k)) + r.epsilon;
    r.empirical_zero_mass = double(samples.histogram[0]) / double(samples.count);
    return r;
}

struct ComplexBiasEstimate {
    std::complex<double> bias;
    double stderr_ = 0;
};

// Empirical mean of omega^<a, record> over Z_3^k, omega = exp(2*pi*i/3),
// for a nonzero character vector a. The companion closeness bound is
// 3^(k/2) * max_a |bias|.
inline ComplexBiasEstimate z3_character_bias(const IndicatorSamples& samples,
                                             const std::vector<uint8_t>& a) {
    if (samples.alphabet != 3)
        throw std::invalid_argument("z3_character_bias: ternary samples only");
    if (a.size() != samples.k) throw ShapeError("z3_character_bias: |a| != k");
    bool nonzero = false;
    for (uint8_t v : a) {
        if (v > 2) throw ShapeError("z3_character_bias: entry out of {0,1,2}");
        nonzero |= (v != 0);
    }
    if (!nonzero) throw std::invalid_argument("z3_character_bias: zero character");
    uint64_t cls[3] = {0, 0, 0};
    for (std::size_t code = 0; code < samples.histogram.size(); ++code) {
        if (!samples.histogram[code]) continue;
        std::size_t rest = code;
        unsigned dot = 0;
        for (std::size_t i = 0; i < samples.k; ++i) {
            dot += a[i] * unsigned(rest % 3);
            rest /= 3;
        }
        cls[dot % 3] += samples.histogram[code];
    }
    using std::numbers::pi;
    const std::complex<double> omega = std::polar(1.0, 2.0 * pi / 3.0);
    double n = double(samples.count);
    ComplexBiasEstimate e;
    e.bias = (double(cls[0]) + omega * double(cls[1]) + omega * omega * double(cls[2])) / n;
    e.stderr_ = std::sqrt(std::max(1.0 - std::norm(e.bias), 1e-12) / n);
    return e;
}

} // namespace parityq
