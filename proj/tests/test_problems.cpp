#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "helpers.hpp"
#include "parityq/problems.hpp"
#include "parityq/qsim.hpp"

using namespace parityq;

TEST_CASE("gen_even_parity_input basics") {
    Rng rng(301);
    for (int t = 0; t < 100; ++t) CHECK(gen_even_parity_input(1, rng).is_zero());
    for (int t = 0; t < 1000; ++t) CHECK(gen_even_parity_input(9, rng).parity() == 0);

    Rng a(77), b(77);
    for (int t = 0; t < 10; ++t) CHECK(gen_even_parity_input(20, a) == gen_even_parity_input(20, b));
}

TEST_CASE("gen_even_parity_input is uniform on the coset (chi-square)") {
    Rng rng(302);
    const std::size_t n = 6, trials = 100000;
    std::vector<std::size_t> counts(1u << (n - 1), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        F2Vector x = gen_even_parity_input(n, rng);
        // index the coset by the first n-1 bits
        ++counts[x.low_word() & ((1u << (n - 1)) - 1)];
    }
    std::vector<double> expected(counts.size(), double(trials) / double(counts.size()));
    double p = testutil::chi_square_pvalue(testutil::chi_square_stat(counts, expected),
                                           int(counts.size()) - 1);
    CHECK(p > 0.001);
}

TEST_CASE("gen_trit_input range, frequencies, determinism") {
    Rng rng(303);
    std::size_t freq[3] = {0, 0, 0};
    const std::size_t trials = 30000;
    for (std::size_t t = 0; t < trials; ++t) {
        TritVector v = gen_trit_input(1, rng);
        REQUIRE(v.get(0) <= 2);
        ++freq[v.get(0)];
    }
    double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) * double(trials));
    for (int c = 0; c < 3; ++c)
        CHECK(std::abs(double(freq[c]) - double(trials) / 3) < 4 * sigma);

    Rng a(5), b(5);
    CHECK(gen_trit_input(50, a) == gen_trit_input(50, b));
}

TEST_CASE("verify_php on the definitional examples") {
    CHECK(verify_php(PhpInstance(4, 2, F2Vector::from_bits({1, 1, 0, 0})),
                     F2Vector::from_bits({1, 0})));
    CHECK(verify_php(PhpInstance(4, 2, F2Vector::from_bits({1, 1, 1, 1})),
                     F2Vector::from_bits({1, 1})));
    CHECK_FALSE(verify_php(PhpInstance(4, 2, F2Vector::from_bits({0, 0, 0, 0})),
                           F2Vector::from_bits({0, 1})));
    CHECK_THROWS_AS(verify_php(PhpInstance(4, 2, F2Vector(4)), F2Vector(3)), ShapeError);
    CHECK_THROWS_AS(PhpInstance(3, 3, F2Vector::from_bits({1, 0, 0})), PromiseError);
}

TEST_CASE("verify_php depends only on the parity of y") {
    Rng rng(304);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 2 + rng.below(8), m = 1 + rng.below(10);
        PhpInstance inst(n, m, gen_even_parity_input(n, rng));
        F2Vector y = F2Vector::random(m, rng);
        bool base = verify_php(inst, y);
        // random transposition of y's bits
        if (m >= 2) {
            std::size_t i = rng.below(m), j = rng.below(m);
            F2Vector perm = y;
            bool bi = perm.get(i), bj = perm.get(j);
            perm.set(i, bj), perm.set(j, bi);
            CHECK(verify_php(inst, perm) == base);
        }
    }
}

TEST_CASE("verify_rphp accepts the 1D-line trivial strategy") {
    // On the path graph, y = 0^n with d_i = x_i is always a valid answer.
    for (std::size_t n = 2; n <= 8; ++n) {
        Graph line = grid_graph(1, int(n));
        for (uint64_t xb = 0; xb < (uint64_t(1) << n); ++xb) {
            if (parity_u64(xb)) continue;
            F2Vector x = F2Vector::from_word(n, xb);
            RphpInstance inst(line, x);
            F2Vector d(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) d.set(i, x.get(i));
            CHECK(verify_rphp(inst, F2Vector(n), d));
        }
    }
}

TEST_CASE("verify_rphp basics and parity flips") {
    Graph tree = grid_spanning_tree(3, 2);
    std::size_t nv = 6, ne = 5;
    RphpInstance zero(tree, F2Vector(nv));
    CHECK(verify_rphp(zero, F2Vector(nv), F2Vector(ne)));
    F2Vector odd_y(nv);
    odd_y.set(2, true);
    CHECK_FALSE(verify_rphp(zero, odd_y, F2Vector(ne)));

    Rng rng(305);
    for (int t = 0; t < 50; ++t) {
        F2Vector x = gen_even_parity_input(nv, rng);
        RphpInstance inst(tree, x);
        F2Vector d = F2Vector::random(ne, rng); // trees: every d is consistent
        F2Vector y = F2Vector::random(nv, rng);
        bool ok = verify_rphp(inst, y, d);
        F2Vector y2 = y;
        y2.flip(rng.below(nv));
        CHECK(verify_rphp(inst, y2, d) == !ok);
    }
}

TEST_CASE("verify_rphp on cyclic graphs enforces cycle parity") {
    Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    RphpInstance inst(square, F2Vector(4));
    // z-existence oracle by enumeration over all z
    Rng rng(306);
    auto mt = incidence_matrix(square).transpose();
    int accepted = 0, rejected = 0;
    for (uint64_t db = 0; db < 16; ++db) {
        F2Vector d = F2Vector::from_word(4, db);
        bool exists = false;
        for (uint64_t zb = 0; zb < 16 && !exists; ++zb)
            exists = mt.mul(F2Vector::from_word(4, zb)) == d;
        // cycle parity: d has a solution iff it has even weight around the cycle
        CHECK(exists == (parity_u64(db) == 0));
        bool verdict = verify_rphp(inst, F2Vector(4), d);
        if (exists) CHECK(verdict == true); // x = 0, y = 0: parity condition is 0 = 0
        else CHECK(verdict == false);
        (exists ? accepted : rejected)++;
    }
    CHECK(accepted == 8);
    CHECK(rejected == 8);
    (void)rng;
}

TEST_CASE("verify_hlf trivial instances") {
    HlfInstance zero(F2Matrix(3, 3), Z4Vector(3));
    CHECK(verify_hlf(zero, F2Vector(3)));
    CHECK(verify_hlf_brute(zero, F2Vector(3)));

    Z4Vector twos(4);
    for (int i = 0; i < 4; ++i) twos.set(i, 2);
    HlfInstance doubling(F2Matrix(4, 4), twos);
    F2Vector ones(4);
    for (int i = 0; i < 4; ++i) ones.set(i, true);
    CHECK(verify_hlf(doubling, ones));
    CHECK(verify_hlf_brute(doubling, ones));
    CHECK_FALSE(verify_hlf(doubling, F2Vector(4)));

    // antidiagonal A, b = 0: L_q = {0}, every p verifies
    F2Matrix anti(2, 2);
    anti.set(0, 1, true), anti.set(1, 0, true);
    HlfInstance inst(anti, Z4Vector(2));
    for (uint64_t pb = 0; pb < 4; ++pb) {
        CHECK(verify_hlf(inst, F2Vector::from_word(2, pb)));
        CHECK(verify_hlf_brute(inst, F2Vector::from_word(2, pb)));
    }
}

TEST_CASE("verify_hlf fast mode equals brute-force mode") {
    Rng rng(307);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng.below(10);
        F2Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (rng.bit()) a.set(i, j, true), a.set(j, i, true);
        Z4Vector b(n);
        for (std::size_t i = 0; i < n; ++i) b.set(i, uint8_t(rng.below(4)));
        HlfInstance inst(std::move(a), std::move(b));
        for (int k = 0; k < 4; ++k) {
            F2Vector p = F2Vector::random(n, rng);
            CHECK(verify_hlf(inst, p) == verify_hlf_brute(inst, p));
        }
    }
}

TEST_CASE("eval_q examples and integer oracle") {
    Rng rng(308);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng.below(10);
        F2Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (rng.bit()) a.set(i, j, true), a.set(j, i, true);
        Z4Vector b(n);
        for (std::size_t i = 0; i < n; ++i) b.set(i, uint8_t(rng.below(4)));
        HlfInstance inst(std::move(a), std::move(b));
        CHECK(eval_q(inst, F2Vector(n)) == 0);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(eval_q(inst, F2Vector::unit(n, i)) ==
                  int((unsigned(inst.a.get(i, i)) + inst.b.get(i)) & 3));
        for (int k = 0; k < 50; ++k) {
            F2Vector u = F2Vector::random(n, rng);
            long long acc = 0; // 64-bit integer oracle, u^T A u + b^T u
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    acc += (long long)(inst.a.get(i, j) && u.get(i) && u.get(j));
            for (std::size_t i = 0; i < n; ++i)
                if (u.get(i)) acc += inst.b.get(i);
            CHECK(eval_q(inst, u) == int(acc % 4));
        }
    }
    CHECK_THROWS_AS(HlfInstance([] {
                        F2Matrix m(2, 2);
                        m.set(0, 1, true);
                        return m;
                    }(),
                                Z4Vector(2)),
                    std::invalid_argument);
}

TEST_CASE("verify_pbp and mod3_weight") {
    CHECK(verify_pbp(F2Vector::from_bits({0, 0, 0}), F2Vector::from_bits({1, 1, 0})));
    CHECK(verify_pbp(F2Vector::from_bits({1, 1, 0}), F2Vector::from_bits({1, 0, 0})));
    CHECK_FALSE(verify_pbp(F2Vector::from_bits({1, 1, 1}), F2Vector::from_bits({1, 0, 0})));

    CHECK(mod3_weight(F2Vector(7)) == 0);
    CHECK(mod3_weight(F2Vector::from_bits({1, 1, 1})) == 0);
    Rng rng(309);
    for (int t = 0; t < 200; ++t) {
        TritVector v = gen_trit_input(1 + rng.below(30), rng);
        long long s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) s += v.get(i);
        CHECK(mod3_weight(v) == int(s % 3));
    }
}

TEST_CASE("verify_parallel thresholds") {
    auto mk = [](std::size_t k, Rational frac) {
        std::vector<SubInstance> subs;
        for (std::size_t i = 0; i < k; ++i) subs.push_back(Mod3Instance(TritVector(2)));
        return ParallelInstance(frac, std::move(subs));
    };
    auto by_flag = [](std::size_t, bool win) { return win; };

    ParallelInstance all_required = mk(4, ParallelInstance::php_fraction());
    CHECK(verify_parallel(all_required, std::vector<bool>{true, true, true, true}, by_flag));
    CHECK_FALSE(verify_parallel(all_required, std::vector<bool>{true, true, false, true}, by_flag));

    ParallelInstance pbp3 = mk(3, ParallelInstance::pbp_fraction());
    CHECK(pbp3.required_wins() == 3); // ceil((2/3 + 0.05) * 3)
    CHECK_FALSE(verify_parallel(pbp3, std::vector<bool>{true, true, false}, by_flag));

    ParallelInstance mod3_9 = mk(9, ParallelInstance::mod3_fraction());
    CHECK(mod3_9.required_wins() == 4); // ceil((1/3 + 0.01) * 9) = ceil(3.09)

    CHECK_THROWS_AS(verify_parallel(pbp3, std::vector<bool>{true}, by_flag), ShapeError);
}

TEST_CASE("parallel verification dispatches sub verifiers") {
    Rng rng(310);
    std::vector<SubInstance> subs;
    std::vector<F2Vector> answers;
    for (int i = 0; i < 3; ++i) {
        F2Vector x = gen_even_parity_input(4, rng);
        subs.push_back(PhpInstance(4, 4, x));
        answers.push_back(sample_uniform_parity(4, int((x.popcount() / 2) & 1), rng));
    }
    ParallelInstance inst(ParallelInstance::php_fraction(), std::move(subs));
    CHECK(verify_parallel(inst, answers, [&](std::size_t i, const F2Vector& y) {
        return verify_php(std::get<PhpInstance>(inst.instances[i]), y);
    }));
    answers[1].flip(0);
    CHECK_FALSE(verify_parallel(inst, answers, [&](std::size_t i, const F2Vector& y) {
        return verify_php(std::get<PhpInstance>(inst.instances[i]), y);
    }));
}
