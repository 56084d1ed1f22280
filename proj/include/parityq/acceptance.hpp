#pragma once

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "parityq/classical.hpp"
#include "parityq/qsim.hpp"
#include "parityq/reductions.hpp"
#include "parityq/xorlab.hpp"

namespace parityq {

// The repro suite: every desk-scale claim the toolkit is expected to
// reproduce, with tolerances pinned here. Exact statements use rational
// arithmetic; sampled statements use the stated sample counts and sigma
// budgets. Used by both the `parityq repro` command and the acceptance test
// binary.

struct CriterionResult {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace acceptance_detail {

inline std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

inline HlfInstance random_hlf(std::size_t n, Rng& rng) {
    F2Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (rng.bit()) { a.set(i, j, true); a.set(j, i, true); }
    Z4Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, uint8_t(rng.below(4)));
    return HlfInstance(std::move(a), std::move(b));
}

// The definitional L_q as a sorted list of masks, full (u,v) scan.
inline std::vector<uint32_t> lq_members_definitional(const HlfInstance& inst) {
    auto q = detail::q_table(inst);
    std::vector<uint32_t> members;
    for (std::size_t u = 0; u < q.size(); ++u)
        if (detail::lq_member_brute(q, inst.n, u, /*singleton_prepass=*/false))
            members.push_back(uint32_t(u));
    return members;
}

inline std::vector<uint32_t> span_masks(const std::vector<F2Vector>& basis, std::size_t) {
    std::vector<uint32_t> masks{0};
    for (const auto& v : basis) {
        uint32_t bit = uint32_t(v.low_word());
        std::size_t sz = masks.size();
        for (std::size_t i = 0; i < sz; ++i) masks.push_back(masks[i] ^ bit);
    }
    std::sort(masks.begin(), masks.end());
    return masks;
}

// c01: exact affine game optimum 1/2 + 2^-ceil(n/2) for n = 2..10.
inline CriterionResult c01() {
    CriterionResult r{"c01", "affine game optimum equals 1/2 + 2^-ceil(n/2), n=2..10, under 1 min", true, ""};
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t n = 2; n <= 10; ++n) {
        auto [s, v] = best_affine_strategy(n);
        Rational want = Rational(1, 2) + Rational::pow2(-int((n + 1) / 2));
        if (v != want) {
            r.pass = false;
            r.detail = "n=" + std::to_string(n) + " got " + v.str() + " want " + want.str();
            return r;
        }
        if (n == 3 && v != Rational(3, 4)) {
            r.pass = false;
            r.detail = "n=3 value is not 3/4";
            return r;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60) {
        r.pass = false;
        r.detail = fmt("took %.1fs >= 60s", secs);
        return r;
    }
    r.detail = "n=3 gives 3/4; all exact";
    return r;
}

// c02: PHP sampler passes its verifier on every draw and matches the
// statevector law to TV < 1e-10, for all even inputs up to n = 10.
inline CriterionResult c02() {
    CriterionResult r{"c02", "quantum PHP: 10^4 verified samples per even input and TV(statevector) < 1e-10, n<=10", true, ""};
    Rng rng(0xC02);
    double worst_tv = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
            if (parity_u64(bits)) continue;
            F2Vector x = F2Vector::from_word(n, bits);
            PhpInstance inst(n, n, x);
            for (int t = 0; t < 10000; ++t)
                if (!verify_php(inst, sample_php_cat(x, n, rng))) {
                    r.pass = false;
                    r.detail = "verifier rejected a sample at n=" + std::to_string(n);
                    return r;
                }
            double tv = total_variation(php_law(x), statevector_php(x));
            worst_tv = std::max(worst_tv, tv);
            if (tv >= 1e-10) {
                r.pass = false;
                r.detail = fmt("TV %.3e >= 1e-10", tv);
                return r;
            }
        }
    }
    r.detail = fmt("all samples verified; worst TV %.3e", worst_tv);
    return r;
}

// c03: Grid-RPHP sampler always verified on 2x2..5x5 trees; 2x2 joint (y,d)
// law matches the 7-qubit statevector to TV < 1e-10.
inline CriterionResult c03() {
    CriterionResult r{"c03", "grid-RPHP: 10^3 verified samples per input on 2x2..5x5 trees; 2x2 joint TV < 1e-10", true, ""};
    Rng rng(0xC03);
    for (int w = 2; w <= 5; ++w) {
        Graph tree = grid_spanning_tree(w, w);
        std::size_t nv = std::size_t(w) * w;
        std::vector<F2Vector> inputs;
        if (nv <= 9) {
            for (uint64_t bits = 0; bits < (uint64_t(1) << nv); ++bits)
                if (!parity_u64(bits)) inputs.push_back(F2Vector::from_word(nv, bits));
        } else {
            for (int t = 0; t < 50; ++t) inputs.push_back(gen_even_parity_input(nv, rng));
        }
        for (const auto& x : inputs) {
            RphpInstance inst(tree, x);
            for (int t = 0; t < 1000; ++t) {
                auto s = sample_rphp(tree, x, rng);
                if (!verify_rphp(inst, s.y, *s.d)) {
                    r.pass = false;
                    r.detail = "verifier rejected a sample on " + std::to_string(w) + "x" +
                               std::to_string(w);
                    return r;
                }
            }
        }
    }
    Graph tree22 = grid_spanning_tree(2, 2);
    double worst_tv = 0;
    for (uint64_t bits = 0; bits < 16; ++bits) {
        if (parity_u64(bits)) continue;
        F2Vector x = F2Vector::from_word(4, bits);
        worst_tv = std::max(worst_tv,
                            total_variation(rphp_joint_law(tree22, x), statevector_rphp(tree22, x)));
    }
    r.pass = worst_tv < 1e-10;
    r.detail = fmt("all samples verified; worst 2x2 joint TV %.3e", worst_tv);
    return r;
}

// c04: RPHP -> HLF -> reference solve -> split round trip always verifies;
// brute-force HLF verification confirms where dimension <= 20.
inline CriterionResult c04() {
    CriterionResult r{"c04", "HLF pipeline: 3x3 exhaustive (256 inputs, brute-checked) + 500 random on 4x4, under 5 min", true, ""};
    auto t0 = std::chrono::steady_clock::now();
    Graph t3 = grid_spanning_tree(3, 3);
    auto coords3 = grid_coords(3, 3);
    for (uint64_t bits = 0; bits < (uint64_t(1) << 9); ++bits) {
        if (parity_u64(bits)) continue;
        RphpInstance inst(t3, F2Vector::from_word(9, bits));
        auto [hlf, emb] = rphp_to_hlf(inst, coords3);
        F2Vector p = solve_hlf_reference(hlf);
        auto [y, d] = hlf_solution_to_rphp(p, emb);
        if (!verify_rphp(inst, y, d) || !verify_hlf(hlf, p) || !verify_hlf_brute(hlf, p)) {
            r.pass = false;
            r.detail = "3x3 pipeline failed at x=" + std::to_string(bits);
            return r;
        }
    }
    Rng rng(0xC04);
    Graph t4 = grid_spanning_tree(4, 4);
    auto coords4 = grid_coords(4, 4);
    for (int t = 0; t < 500; ++t) {
        RphpInstance inst(t4, gen_even_parity_input(16, rng));
        auto [hlf, emb] = rphp_to_hlf(inst, coords4);
        F2Vector p = solve_hlf_reference(hlf);
        auto [y, d] = hlf_solution_to_rphp(p, emb);
        if (!verify_rphp(inst, y, d) || !verify_hlf(hlf, p)) {
            r.pass = false;
            r.detail = "4x4 pipeline failed at trial " + std::to_string(t);
            return r;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 300) {
        r.pass = false;
        r.detail = fmt("took %.1fs >= 300s", secs);
        return r;
    }
    r.detail = "256 + 500 round trips verified";
    return r;
}

// c05: the kernel characterization of L_q equals the definitional subspace,
// by the full (u,v) scan; q takes values in {0,2} on it.
inline CriterionResult c05() {
    CriterionResult r{"c05", "L_q = ker(A ^ diag(b mod 2)) on 500 random instances, n<=12, definitional (u,v) scan", true, ""};
    Rng rng(0xC05);
    for (int t = 0; t < 500; ++t) {
        std::size_t n = 1 + rng.below(12);
        HlfInstance inst = random_hlf(n, rng);
        auto brute = lq_members_definitional(inst);
        auto kernel = span_masks(f2_kernel_basis(lq_matrix(inst)), n);
        if (brute != kernel) {
            r.pass = false;
            r.detail = "mismatch at trial " + std::to_string(t) + " n=" + std::to_string(n);
            return r;
        }
        for (uint32_t u : brute) {
            F2Vector uv = F2Vector::from_word(n, u);
            if (eval_q(inst, uv) & 1) {
                r.pass = false;
                r.detail = "odd q value on L_q at trial " + std::to_string(t);
                return r;
            }
        }
    }
    r.detail = "500 instances, sets equal, q in {0,2}";
    return r;
}

// c06: block-diagonal composition verifies iff both slices verify.
inline CriterionResult c06() {
    CriterionResult r{"c06", "direct sum: composed solution verifies iff both slices do (200 random pairs, n<=8)", true, ""};
    Rng rng(0xC06);
    for (int t = 0; t < 200; ++t) {
        std::size_t n1 = 1 + rng.below(8), n2 = 1 + rng.below(8);
        HlfInstance p1 = random_hlf(n1, rng), p2 = random_hlf(n2, rng);
        HlfInstance sum = direct_sum_hlf({p1, p2});
        for (int kind = 0; kind < 3; ++kind) {
            F2Vector q1 = kind == 1 ? F2Vector::random(n1, rng) : solve_hlf_reference(p1);
            F2Vector q2 = kind == 2 ? F2Vector::random(n2, rng) : solve_hlf_reference(p2);
            F2Vector joint(n1 + n2);
            for (std::size_t i = 0; i < n1; ++i) joint.set(i, q1.get(i));
            for (std::size_t i = 0; i < n2; ++i) joint.set(n1 + i, q2.get(i));
            bool whole = verify_hlf_brute(sum, joint);
            bool parts = verify_hlf_brute(p1, q1) && verify_hlf_brute(p2, q2);
            auto slices = split_hlf_solution(joint, {n1, n2});
            if (whole != parts || slices[0] != q1 || slices[1] != q2) {
                r.pass = false;
                r.detail = "mismatch at trial " + std::to_string(t);
                return r;
            }
        }
    }
    r.detail = "600 composed checks consistent";
    return r;
}

// c07: PBP success probabilities: exactly 1 or 3/4 from the statevector, and
// 5/6 on uniform inputs by Monte Carlo.
inline CriterionResult c07() {
    CriterionResult r{"c07", "PBP: statevector success is exactly 1 or 3/4 (n<=10); uniform-input MC = 5/6 +- 4 sigma", true, ""};
    double worst = 0;
    for (std::size_t n = 1; n <= 10; ++n)
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
            F2Vector x = F2Vector::from_word(n, bits);
            double want = (x.popcount() % 3 == 0) ? 1.0 : 0.75;
            double got = statevector_pbp(x);
            worst = std::max(worst, std::abs(got - want));
            if (std::abs(got - want) >= 1e-12) {
                r.pass = false;
                r.detail = fmt("|sv - expected| = %.3e at n=%0.0f", std::abs(got - want), double(n));
                return r;
            }
        }
    Rng rng(0xC07);
    const std::size_t N = 100000, n = 12;
    std::size_t wins = 0;
    for (std::size_t t = 0; t < N; ++t) {
        F2Vector x = F2Vector::random(n, rng);
        if (verify_pbp(x, sample_pbp(x, rng))) ++wins;
    }
    double rate = double(wins) / double(N);
    double sigma = std::sqrt((5.0 / 6) * (1.0 / 6) / double(N));
    r.pass = std::abs(rate - 5.0 / 6) <= 4 * sigma;
    r.detail = fmt("worst sv err %.2e; MC rate %.5f vs 5/6 (4 sigma = %.5f)", worst, rate, 4 * sigma);
    return r;
}

// c08: exhaustive affine maximum of the constrained game never exceeds
// 1/2 + 2^(-(n-d1)/2 + d2); compared exactly via squared gaps.
inline CriterionResult c08() {
    CriterionResult r{"c08", "constrained game: exhaustive affine max <= 1/2 + 2^(-(n-d1)/2+d2) on all grids n<=12, d1<=4, d2<=2", true, ""};
    double min_slack = 1e9;
    int checked = 0;
    for (std::size_t n = 4; n <= 12; ++n)
        for (std::size_t d1 = 0; d1 <= 4; ++d1)
            for (std::size_t d2 = 0; d2 <= 2; ++d2) {
                if (d1 + 2 * d2 >= n) continue;
                GameConstraints cons;
                for (std::size_t i = 0; i < d1; ++i)
                    cons.fixed_bits.push_back({int(i), int(i & 1)});
                for (std::size_t gidx = 0; gidx < d2; ++gidx) {
                    GameConstraints::ParityGroup grp;
                    grp.indices = {int(d1 + 2 * gidx), int(d1 + 2 * gidx + 1)};
                    grp.parity = int(gidx & 1);
                    cons.groups.push_back(grp);
                }
                auto [s, maxval] = max_constrained_affine(n, cons);
                // exact comparison: (max - 1/2)^2 <= 2^(2 d2 - (n - d1))
                Rational gap = maxval - Rational(1, 2);
                Rational lhs = gap * gap;
                Rational rhs = Rational::pow2(2 * int(d2) - int(n - d1));
                ++checked;
                if (lhs > rhs) {
                    r.pass = false;
                    r.detail = fmt("bound violated at n=%0.0f d1=%0.0f d2=%0.0f", double(n),
                                   double(d1), double(d2));
                    return r;
                }
                min_slack = std::min(min_slack,
                                     constrained_game_bound(n, d1, d2) - maxval.to_double());
            }
    r.detail = fmt("%0.0f grids checked; min observed slack %.3e", double(checked), min_slack);
    return r;
}

// c09: Vazirani harness on 6 parallel PHP games with per-instance best
// affine strategies: empirical all-win mass within 2^-k + eps + 5 sigma.
inline CriterionResult c09() {
    CriterionResult r{"c09", "XOR harness: k=6 parallel PHP (n=6), 10^6 samples: Pr[all win] <= 2^-k + eps + 5 sigma", true, ""};
    const std::size_t k = 6, n = 6, N = 1000000;
    auto [strat, val] = best_affine_strategy(n);
    Rng rng(0xC09);
    auto play = [&](Rng& rr, std::vector<uint8_t>& record) {
        for (std::size_t i = 0; i < k; ++i) {
            F2Vector x = gen_even_parity_input(n, rr);
            int target = int((x.popcount() / 2) & 1);
            int answer = strat.a ^ strat.b.dot(x);
            record[i] = uint8_t(answer != target);
        }
    };
    auto samples = collect_win_indicators(play, k, 2, N, rng);
    auto report = vazirani_checks(samples);
    double zm = report.empirical_zero_mass;
    double sigma = std::sqrt(std::max(zm * (1 - zm), 1e-12) / double(N));
    r.pass = zm <= report.zero_mass_bound + 5 * sigma;
    r.detail = fmt("Pr[all win] %.5f vs bound %.5f + 5 sigma %.5f", zm, report.zero_mass_bound,
                   5 * sigma);
    return r;
}

// c10: CNOT schedule is conflict-free, covers each CNOT once, and needs at
// most Delta + 1 = 4 layers on every grid spanning tree up to 20x20.
inline CriterionResult c10() {
    CriterionResult r{"c10", "cnot_layers: <= 4 conflict-free covering layers on grid trees up to 20x20", true, ""};
    std::size_t worst_layers = 0;
    for (int w = 2; w <= 20; ++w)
        for (int h : {2, w / 2 + 1, w}) {
            Graph tree = grid_spanning_tree(w, h);
            auto sched = cnot_layers(tree);
            worst_layers = std::max(worst_layers, sched.layers.size());
            std::size_t planned = 0;
            std::set<std::pair<int, int>> all;
            for (const auto& layer : sched.layers) {
                std::set<int> vs, es;
                for (const auto& g : layer) {
                    if (!vs.insert(g.vertex).second || !es.insert(g.edge).second) {
                        r.pass = false;
                        r.detail = "conflicting layer on " + std::to_string(w) + "x" +
                                   std::to_string(h);
                        return r;
                    }
                    all.insert({g.vertex, g.edge});
                    ++planned;
                }
            }
            bool cover = planned == 2 * std::size_t(tree.edge_count()) &&
                         all.size() == planned;
            if (!cover || sched.layers.size() > 4) {
                r.pass = false;
                r.detail = "coverage or layer bound failed on " + std::to_string(w) + "x" +
                           std::to_string(h);
                return r;
            }
        }
    r.detail = fmt("max layers %0.0f <= 4, all conflict-free exact covers", double(worst_layers));
    return r;
}

// c11: the locality-2 pairwise-AND strategy with m = C(n,2) solves PHP
// exactly, for n = 2..10.
inline CriterionResult c11() {
    CriterionResult r{"c11", "pairwise-AND locality-2 strategy scores exactly 1.0, n=2..10", true, ""};
    for (std::size_t n = 2; n <= 10; ++n) {
        auto strat = LocalStrategy::pairwise_and(n);
        auto est = eval_local_exhaustive(strat, [n](const F2Vector& x, const F2Vector& y) {
            return verify_php(PhpInstance(n, (n * (n - 1)) / 2, x), y);
        });
        if (!est.exact || *est.exact != Rational(1)) {
            r.pass = false;
            r.detail = "success != 1 at n=" + std::to_string(n);
            return r;
        }
    }
    r.detail = "exact success 1 for all n";
    return r;
}

// c12: wrapping a constant-0 solver in the mod 3 self-reduction gives
// input-independent success with symmetric wrong answers.
inline CriterionResult c12() {
    CriterionResult r{"c12", "mod3 self-reduction: constant-0 inner gives input-independent rate, symmetric errors (4 sigma)", true, ""};
    const std::size_t n = 6, N = 100000;
    auto inner = [](const TritVector&) { return 0; };
    Rng rng(0xC12);
    TritVector xs[3] = {TritVector(n), TritVector(n), TritVector(n)};
    xs[1].set(0, 1);                  // |x| = 1 (mod 3)
    xs[2].set(0, 1), xs[2].set(1, 1); // |x| = 2 (mod 3)
    double rates[3];
    for (int which = 0; which < 3; ++which) {
        int target = mod3_weight(xs[which]);
        std::size_t ok = 0, err1 = 0, err2 = 0;
        for (std::size_t t = 0; t < N; ++t) {
            int got = self_reduce_mod3(inner, xs[which], rng);
            if (got == target) ++ok;
            else if (got == (target + 1) % 3) ++err1;
            else ++err2;
        }
        rates[which] = double(ok) / double(N);
        double third_sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / double(N));
        if (std::abs(rates[which] - 1.0 / 3) > 4 * third_sigma) {
            r.pass = false;
            r.detail = fmt("success rate %.5f deviates from 1/3", rates[which]);
            return r;
        }
        // Var(err1 - err2) = N(p1 + p2 - (p1-p2)^2) with p1 = p2 = 1/3
        double diff_sigma = std::sqrt(double(N) * 2.0 / 3.0);
        if (std::abs(double(err1) - double(err2)) > 4 * diff_sigma) {
            r.pass = false;
            r.detail = "wrong answers asymmetric";
            return r;
        }
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            double sigma = std::sqrt(2 * (1.0 / 3) * (2.0 / 3) / double(N));
            if (std::abs(rates[a] - rates[b]) > 4 * sigma) {
                r.pass = false;
                r.detail = "success rate depends on input";
                return r;
            }
        }
    r.detail = fmt("rates %.4f / %.4f / %.4f, all within 4 sigma of 1/3", rates[0], rates[1],
                   rates[2]);
    return r;
}

} // namespace acceptance_detail

inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    using namespace acceptance_detail;
    std::vector<CriterionResult (*)()> criteria = {c01, c02, c03, c04, c05, c06,
                                                   c07, c08, c09, c10, c11, c12};
    std::vector<CriterionResult> results;
    for (auto* crit : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult res = crit();
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << (res.pass ? "PASS" : "FAIL") << "  " << res.id << "  " << res.description
            << "  [" << res.detail << "]  (" << acceptance_detail::fmt("%.2f", res.seconds)
            << "s)\n";
        out.flush();
        results.push_back(std::move(res));
    }
    int failed = 0;
    for (const auto& res : results) failed += !res.pass;
    out << (failed ? "RESULT: FAIL (" + std::to_string(failed) + " criteria failed)\n"
                   : "RESULT: PASS (all " + std::to_string(results.size()) + " criteria)\n");
    return results;
}

} // namespace parityq
