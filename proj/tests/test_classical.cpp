#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "parityq/classical.hpp"

using namespace parityq;

TEST_CASE("affine_win_prob_exact against full enumeration, n <= 8") {
    CHECK(affine_win_prob_exact({0, F2Vector(3)}, 3) == Rational(1, 4));
    for (std::size_t n = 1; n <= 8; ++n)
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits)
            for (int a = 0; a < 2; ++a) {
                AffineStrategy s{a, F2Vector::from_word(n, bits)};
                CHECK(affine_win_prob_exact(s, n) == testutil::affine_brute(s, n));
            }
}

TEST_CASE("best_affine_strategy values and capacity") {
    CHECK(best_affine_strategy(2).second == Rational(1));
    CHECK(best_affine_strategy(3).second == Rational(3, 4));
    for (std::size_t n = 4; n <= 12; ++n)
        CHECK(best_affine_strategy(n).second ==
              Rational(1, 2) + Rational::pow2(-int((n + 1) / 2)));
    // the reported maximizer attains the reported value
    auto [s, v] = best_affine_strategy(7);
    CHECK(affine_win_prob_exact(s, 7) == v);
    CHECK_THROWS_AS(best_affine_strategy(25), CapacityError);
}

TEST_CASE("complementing the constant flips the success probability") {
    Rng rng(501);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng.below(12);
        F2Vector b = F2Vector::random(n, rng);
        Rational s0 = affine_win_prob_exact({0, b}, n);
        Rational s1 = affine_win_prob_exact({1, b}, n);
        CHECK(s0 + s1 == Rational(1));
    }
}

TEST_CASE("constrained game with no constraints reduces to the base game") {
    Rng rng(502);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 2 + rng.below(9);
        AffineStrategy s{int(rng.bit()), F2Vector::random(n, rng)};
        CHECK(constrained_game_value(n, {}, s) == affine_win_prob_exact(s, n));
    }
}

TEST_CASE("restricted game optimum equals 1/2 + 2^-ceil((n-d)/2)") {
    for (std::size_t n = 4; n <= 10; ++n)
        for (std::size_t d1 = 0; d1 + 2 <= n && d1 <= 3; ++d1) {
            GameConstraints cons;
            for (std::size_t i = 0; i < d1; ++i) cons.fixed_bits.push_back({int(i), int(i & 1)});
            auto [s, v] = max_constrained_affine(n, cons);
            CHECK(v == Rational(1, 2) + Rational::pow2(-int((n - d1 + 1) / 2)));
        }
}

TEST_CASE("WHT maximizer equals per-strategy enumeration, n <= 7") {
    Rng rng(503);
    for (int t = 0; t < 12; ++t) {
        std::size_t n = 4 + rng.below(4);
        GameConstraints cons;
        std::size_t d1 = rng.below(2), d2 = rng.below(2);
        if (d1 + 2 * d2 >= n) continue;
        for (std::size_t i = 0; i < d1; ++i) cons.fixed_bits.push_back({int(i), int(rng.bit())});
        for (std::size_t g = 0; g < d2; ++g)
            cons.groups.push_back({{int(d1 + 2 * g), int(d1 + 2 * g + 1)}, int(rng.bit())});
        auto [s_fast, v_fast] = max_constrained_affine(n, cons);
        Rational v_slow(0);
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits)
            for (int a = 0; a < 2; ++a) {
                Rational v = constrained_game_value(n, cons, {a, F2Vector::from_word(n, bits)});
                if (v > v_slow) v_slow = v;
            }
        CHECK(v_fast == v_slow);
        CHECK(constrained_game_value(n, cons, s_fast) == v_fast);
    }
}

TEST_CASE("constrained game rejects empty promise sets") {
    // n = 2 with both bits fixed to odd total weight: no even-parity input
    GameConstraints cons;
    cons.fixed_bits = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(constrained_game_value(2, cons, {0, F2Vector(2)}), std::domain_error);
    GameConstraints overlap;
    overlap.fixed_bits = {{0, 1}};
    overlap.groups.push_back({{0, 1}, 0});
    CHECK_THROWS_AS(constrained_game_value(4, overlap, {0, F2Vector(4)}), std::invalid_argument);
}

TEST_CASE("pairwise-AND strategy solves PHP exactly") {
    for (std::size_t n = 2; n <= 8; ++n) {
        auto s = LocalStrategy::pairwise_and(n);
        CHECK(s.locality() == 2);
        auto est = eval_local_exhaustive(s, [n](const F2Vector& x, const F2Vector& y) {
            return verify_php(PhpInstance(n, (n * (n - 1)) / 2, x), y);
        });
        CHECK(*est.exact == Rational(1));
    }
}

TEST_CASE("all-zero strategy scores the |x| = 0 mod 4 mass exactly") {
    for (std::size_t n = 2; n <= 10; ++n) {
        auto s = LocalStrategy::constant_zero(n, 3);
        auto est = eval_local_exhaustive(s, [n](const F2Vector& x, const F2Vector& y) {
            return verify_php(PhpInstance(n, 3, x), y);
        });
        long long hits = 0; // counting oracle: even-parity x with |x| = 0 mod 4
        for (uint64_t xb = 0; xb < (uint64_t(1) << n); ++xb)
            if (!parity_u64(xb) && popcount_u64(xb) % 4 == 0) ++hits;
        CHECK(*est.exact == Rational(hits, 1LL << (n - 1)));
    }
}

TEST_CASE("Monte Carlo agrees with exhaustive evaluation within 4 sigma") {
    Rng rng(504);
    const std::size_t n = 12;
    for (int t = 0; t < 50; ++t) {
        // random locality-3 strategy with 8 outputs
        LocalStrategy s;
        s.n = n;
        for (int j = 0; j < 8; ++j) {
            std::set<int> sup;
            while (sup.size() < 3) sup.insert(int(rng.below(n)));
            s.supports.emplace_back(sup.begin(), sup.end());
            s.tables.push_back({rng.u64() & 0xff});
        }
        auto verifier = [](const F2Vector& x, const F2Vector& y) {
            return verify_php(PhpInstance(x.size(), y.size(), x), y);
        };
        auto exact = eval_local_exhaustive(s, verifier);
        auto mc = eval_local_montecarlo(s, verifier, 2000, rng);
        double sigma = std::max(mc.stderr_, 1e-6);
        CHECK(std::abs(mc.estimate - exact.estimate) < 4 * sigma);
    }
}

TEST_CASE("light cones of simple strategies") {
    LocalStrategy identity;
    identity.n = 5;
    for (int i = 0; i < 5; ++i) {
        identity.supports.push_back({i});
        identity.tables.push_back({0b10}); // y = x_i
    }
    auto [out_cones, in_cones] = light_cones(InteractionGraph::from_strategy(identity));
    for (int i = 0; i < 5; ++i) {
        CHECK(out_cones[i] == std::vector<int>{i});
        CHECK(in_cones[i] == std::vector<int>{i});
    }

    auto pa = InteractionGraph::from_strategy(LocalStrategy::pairwise_and(4));
    for (const auto& cone : pa.output_cones) CHECK(cone.size() == 2);
}

TEST_CASE("DAG import respects the 2^depth light-cone bound") {
    Rng rng(505);
    for (int t = 0; t < 40; ++t) {
        FanIn2Dag dag;
        dag.n_inputs = 10;
        // three layers of random fan-in-2 gates
        std::size_t prev_lo = 0, prev_hi = dag.n_inputs;
        for (int layer = 0; layer < 3; ++layer) {
            std::size_t lo = dag.n_inputs + dag.gates.size();
            for (int g = 0; g < 6; ++g) {
                int a = int(prev_lo + rng.below(prev_hi - prev_lo));
                int b = int(prev_lo + rng.below(prev_hi - prev_lo));
                dag.gates.push_back({a, b});
            }
            prev_lo = lo;
            prev_hi = dag.n_inputs + dag.gates.size();
        }
        for (std::size_t g = prev_lo; g < prev_hi; ++g) dag.output_nodes.push_back(int(g));
        auto ig = interaction_graph_from_dag(dag);
        // reachability oracle: walk predecessor closure per output
        for (std::size_t j = 0; j < ig.outputs; ++j) {
            CHECK(ig.output_cones[j].size() <= 8); // depth 3
            std::set<int> reach;
            std::vector<int> stack{dag.output_nodes[j]};
            while (!stack.empty()) {
                int node = stack.back();
                stack.pop_back();
                if (node < int(dag.n_inputs)) reach.insert(node);
                else {
                    auto gate = dag.gates[node - int(dag.n_inputs)];
                    stack.push_back(gate.a);
                    stack.push_back(gate.b);
                }
            }
            CHECK(std::vector<int>(reach.begin(), reach.end()) == ig.output_cones[j]);
        }
    }
}

TEST_CASE("independent_inputs: structure and Turan bound") {
    // disjoint cones: every input is chosen
    LocalStrategy identity;
    identity.n = 6;
    for (int i = 0; i < 6; ++i) {
        identity.supports.push_back({i});
        identity.tables.push_back({0b10});
    }
    CHECK(independent_inputs(InteractionGraph::from_strategy(identity)).size() == 6);

    // pairwise-AND: the intersection graph is complete, so exactly one input
    for (std::size_t n : {4u, 6u, 8u}) {
        auto s = independent_inputs(InteractionGraph::from_strategy(LocalStrategy::pairwise_and(n)));
        CHECK(s.size() == 1);
    }

    Rng rng(506);
    for (int t = 0; t < 100; ++t) {
        InteractionGraph g;
        g.inputs = 4 + rng.below(14);
        g.outputs = 1 + rng.below(20);
        for (std::size_t j = 0; j < g.outputs; ++j) {
            std::set<int> cone;
            std::size_t sz = rng.below(4);
            while (cone.size() < sz) cone.insert(int(rng.below(g.inputs)));
            g.output_cones.emplace_back(cone.begin(), cone.end());
        }
        auto chosen = independent_inputs(g); // throws if either property fails
        for (const auto& cone : g.output_cones) {
            std::size_t hits = 0;
            for (int i : cone) hits += std::binary_search(chosen.begin(), chosen.end(), i);
            CHECK(hits <= 1);
        }
    }
}

TEST_CASE("restriction sampling laws") {
    Rng rng(507);
    CHECK(sample_restriction(40, 1.0, rng).star_count() == 40);
    CHECK(sample_restriction(40, 0.0, rng).star_count() == 0);
    const std::size_t n = 50, draws = 2000; // 1e5 coordinates
    const double p = 0.3;
    std::size_t stars = 0;
    for (std::size_t t = 0; t < draws; ++t) stars += sample_restriction(n, p, rng).star_count();
    double total = double(n * draws);
    double sigma = std::sqrt(p * (1 - p) * total);
    CHECK(std::abs(double(stars) - p * total) < 4 * sigma);
    CHECK_THROWS_AS(sample_restriction(4, 1.5, rng), std::invalid_argument);
}

TEST_CASE("apply_restriction commutes with completing the input") {
    Rng rng(508);
    const std::size_t n = 10;
    for (int t = 0; t < 30; ++t) {
        LocalStrategy s;
        s.n = n;
        for (int j = 0; j < 6; ++j) {
            std::set<int> sup;
            std::size_t sz = 1 + rng.below(4);
            while (sup.size() < sz) sup.insert(int(rng.below(n)));
            s.supports.emplace_back(sup.begin(), sup.end());
            std::size_t entries = std::size_t(1) << sup.size();
            std::vector<uint64_t> table(words_for_bits(entries), 0);
            for (std::size_t e = 0; e < entries; ++e)
                if (rng.bit()) table[e >> 6] |= 1ULL << (e & 63);
            s.tables.push_back(std::move(table));
        }
        Restriction rho = sample_restriction(n, 0.5, rng);
        LocalStrategy restricted = apply_restriction(s, rho);
        for (std::size_t j = 0; j < s.outputs(); ++j)
            CHECK(restricted.supports[j].size() <= s.supports[j].size());
        for (uint64_t xb = 0; xb < (uint64_t(1) << n); ++xb) {
            F2Vector x = F2Vector::from_word(n, xb);
            CHECK(restricted.eval(x) == s.eval(rho.complete(x)));
        }
    }
}

TEST_CASE("mod3 self-reduction with an exact inner solver is exact") {
    Rng rng(509);
    std::function<int(const TritVector&)> exact = [](const TritVector& v) {
        return mod3_weight(v);
    };
    for (std::size_t n : {1u, 2u, 5u, 8u}) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            TritVector x(n);
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i) { x.set(i, uint8_t(rest % 3)); rest /= 3; }
            CHECK(self_reduce_mod3(exact, x, rng) == mod3_weight(x));
        }
    }
    CHECK_THROWS_AS(self_reduce_mod3(exact, TritVector(0), rng), std::invalid_argument);
}

TEST_CASE("uniform trit weight classes are exactly balanced (oracle)") {
    // Pr_y[|y| = r mod 3] = 1/3 exactly for every r, n >= 1; this is the
    // expected per-input success of a constant inner solver under the wrapper.
    for (std::size_t n = 1; n <= 10; ++n) {
        long long total = testutil::count_trits_mod3(n, 0) + testutil::count_trits_mod3(n, 1) +
                          testutil::count_trits_mod3(n, 2);
        for (int r = 0; r < 3; ++r)
            CHECK(testutil::count_trits_mod3(n, r) * 3 == total);
    }
}

TEST_CASE("constant inner solver: wrapper success is 1/3 per input") {
    Rng rng(510);
    std::function<int(const TritVector&)> zero = [](const TritVector&) { return 0; };
    TritVector x(5);
    x.set(0, 2), x.set(3, 2); // |x| = 1 mod 3
    const std::size_t trials = 30000;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < trials; ++t)
        ok += self_reduce_mod3(zero, x, rng) == mod3_weight(x);
    double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / double(trials));
    CHECK(std::abs(double(ok) / double(trials) - 1.0 / 3) < 4 * sigma);
}
