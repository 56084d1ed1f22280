// Command-line surface over the library: instance generators, solvers,
// verifiers, exact game values, reductions, bias experiments, and the repro
// suite. Every randomized command takes an explicit --seed; identical
// configurations produce identical output bytes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parityq/acceptance.hpp"
#include "parityq/classical.hpp"
#include "parityq/json_io.hpp"
#include "parityq/qsim.hpp"
#include "parityq/reductions.hpp"
#include "parityq/xorlab.hpp"

using namespace parityq;

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    json j;
    f >> j;
    return j;
}

struct GenOptions {
    std::string problem = "php";
    std::size_t n = 8, m = 0, k = 4;
    int width = 3, height = 3;
    std::string graph_file;
    uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenOptions& opt) {
    Rng rng(opt.seed);
    json j;
    auto make_sub = [&](const std::string& type, Rng& r) -> SubInstance {
        if (type == "php") {
            std::size_t m = opt.m ? opt.m : opt.n;
            return PhpInstance(opt.n, m, gen_even_parity_input(opt.n, r));
        }
        if (type == "grid-rphp") {
            Graph g = grid_spanning_tree(opt.width, opt.height);
            return RphpInstance(g, gen_even_parity_input(std::size_t(g.vertex_count()), r));
        }
        if (type == "rphp") {
            Graph g = opt.graph_file.empty() ? grid_spanning_tree(opt.width, opt.height)
                                             : graph_from_json(load_json(opt.graph_file));
            return RphpInstance(g, gen_even_parity_input(std::size_t(g.vertex_count()), r));
        }
        if (type == "hlf") {
            F2Matrix a(opt.n, opt.n);
            for (std::size_t i = 0; i < opt.n; ++i)
                for (std::size_t c = i; c < opt.n; ++c)
                    if (r.bit()) { a.set(i, c, true); a.set(c, i, true); }
            Z4Vector b(opt.n);
            for (std::size_t i = 0; i < opt.n; ++i) b.set(i, uint8_t(r.below(4)));
            return HlfInstance(std::move(a), std::move(b));
        }
        if (type == "pbp") return PbpInstance(gen_trit_input(opt.n, r));
        if (type == "pbp-binary")
            return PbpInstance(TritVector::from_bits(F2Vector::random(opt.n, r)));
        if (type == "mod3") return Mod3Instance(gen_trit_input(opt.n, r));
        throw CLI::ValidationError("gen", "unknown problem type: " + type);
    };

    if (opt.problem.rfind("parallel-", 0) == 0) {
        std::string sub_type = opt.problem.substr(9);
        Rational fraction = ParallelInstance::php_fraction();
        if (sub_type == "pbp") fraction = ParallelInstance::pbp_fraction();
        if (sub_type == "mod3") fraction = ParallelInstance::mod3_fraction();
        std::vector<SubInstance> subs;
        for (std::size_t i = 0; i < opt.k; ++i) {
            Rng sub_rng(Rng::derive(opt.seed, i));
            subs.push_back(make_sub(sub_type, sub_rng));
        }
        j = instance_to_json(ParallelInstance(fraction, std::move(subs)));
    } else if (opt.problem == "grid-rphp" || opt.problem == "rphp") {
        auto sub = make_sub(opt.problem, rng);
        const auto& inst = std::get<RphpInstance>(sub);
        std::optional<std::pair<int, int>> grid;
        if (opt.problem == "grid-rphp" || opt.graph_file.empty())
            grid = std::pair{opt.width, opt.height};
        j = instance_to_json(inst, grid);
    } else {
        j = instance_to_json(make_sub(opt.problem, rng));
    }
    write_output(opt.out, j.dump(2) + "\n");
    return 0;
}

struct SolveOptions {
    std::string in;
    std::string solver = "quantum";
    std::string strategy_file;
    std::string inner = "exact";
    uint64_t seed = 0;
    std::size_t stream = 0;
    std::string out;
};

json solve_sub(const SubInstance& sub, const SolveOptions& opt, Rng& rng);

json solve_php_like(const PhpInstance& inst, const SolveOptions& opt, Rng& rng) {
    if (opt.solver == "quantum") {
        F2Vector y = sample_php_cat(inst.x, inst.m, rng);
        if (!verify_php(inst, y)) throw std::runtime_error("quantum solve failed verification");
        return solution_php(y);
    }
    if (opt.solver == "affine") {
        AffineStrategy s;
        if (!opt.strategy_file.empty()) s = affine_from_json(load_json(opt.strategy_file));
        else s = best_affine_strategy(inst.n).first;
        if (s.b.size() != inst.n) throw ShapeError("affine strategy length != n");
        // Locality-1 play: player i contributes bit a_i(x_i); realized as the
        // parity on output bit 0, zeros elsewhere.
        F2Vector y(inst.m);
        y.set(0, (s.a ^ s.b.dot(inst.x)) != 0);
        return solution_php(y);
    }
    if (opt.solver == "local") {
        if (opt.strategy_file.empty())
            throw CLI::ValidationError("solve", "--strategy required for local solver");
        LocalStrategy s = local_from_json(load_json(opt.strategy_file));
        if (s.n != inst.n || s.outputs() != inst.m)
            throw ShapeError("local strategy shape does not match instance");
        return solution_php(s.eval(inst.x));
    }
    throw CLI::ValidationError("solve", "solver not applicable to php: " + opt.solver);
}

json solve_sub(const SubInstance& sub, const SolveOptions& opt, Rng& rng) {
    if (std::holds_alternative<PhpInstance>(sub))
        return solve_php_like(std::get<PhpInstance>(sub), opt, rng);
    if (std::holds_alternative<RphpInstance>(sub)) {
        const auto& inst = std::get<RphpInstance>(sub);
        if (opt.solver != "quantum")
            throw CLI::ValidationError("solve", "rphp supports --solver quantum");
        auto s = sample_rphp(inst.graph, inst.x, rng);
        if (!verify_rphp(inst, s.y, *s.d))
            throw std::runtime_error("quantum solve failed verification");
        return solution_rphp(s.y, *s.d);
    }
    if (std::holds_alternative<HlfInstance>(sub)) {
        const auto& inst = std::get<HlfInstance>(sub);
        if (opt.solver != "reference-hlf" && opt.solver != "quantum")
            throw CLI::ValidationError("solve", "hlf supports --solver reference-hlf");
        F2Vector p = solve_hlf_reference(inst);
        if (!verify_hlf(inst, p)) throw std::runtime_error("reference solve failed verification");
        return solution_hlf(p);
    }
    if (std::holds_alternative<PbpInstance>(sub)) {
        const auto& inst = std::get<PbpInstance>(sub);
        if (opt.solver != "quantum")
            throw CLI::ValidationError("solve", "pbp supports --solver quantum");
        return solution_pbp(sample_pbp(inst.x, rng));
    }
    const auto& inst = std::get<Mod3Instance>(sub);
    if (opt.solver == "self-reduced-mod3") {
        std::function<int(const TritVector&)> inner;
        if (opt.inner == "exact") inner = [](const TritVector& v) { return mod3_weight(v); };
        else if (opt.inner == "constant0") inner = [](const TritVector&) { return 0; };
        else throw CLI::ValidationError("solve", "--inner must be exact or constant0");
        return solution_mod3(self_reduce_mod3(inner, inst.x, rng));
    }
    if (opt.solver == "exact" || opt.solver == "quantum")
        return solution_mod3(mod3_weight(inst.x));
    throw CLI::ValidationError("solve", "mod3 supports exact or self-reduced-mod3");
}

int cmd_solve(const SolveOptions& opt) {
    json inst_json = load_json(opt.in);
    std::string type = inst_json.at("type").get<std::string>();
    Rng rng(opt.seed);

    if (opt.stream > 0) {
        // Sample stream: one record per line, hex y [and d].
        std::ostringstream out;
        if (type == "php") {
            PhpInstance inst = php_from_json(inst_json);
            for (std::size_t t = 0; t < opt.stream; ++t)
                out << sample_php_cat(inst.x, inst.m, rng).to_hex() << "\n";
        } else if (type == "rphp") {
            RphpInstance inst = rphp_from_json(inst_json);
            for (std::size_t t = 0; t < opt.stream; ++t) {
                auto s = sample_rphp(inst.graph, inst.x, rng);
                out << s.y.to_hex() << " " << s.d->to_hex() << "\n";
            }
        } else if (type == "pbp") {
            PbpInstance inst(trits_from_json(inst_json.at("x")));
            for (std::size_t t = 0; t < opt.stream; ++t)
                out << sample_pbp(inst.x, rng).to_hex() << "\n";
        } else {
            throw CLI::ValidationError("solve", "--stream supports php, rphp, pbp");
        }
        write_output(opt.out, out.str());
        return 0;
    }

    json result;
    if (type == "parallel") {
        ParallelInstance inst = parallel_from_json(inst_json);
        json solutions = json::array();
        for (std::size_t i = 0; i < inst.k; ++i) {
            Rng sub_rng(Rng::derive(opt.seed, i));
            solutions.push_back(solve_sub(inst.instances[i], opt, sub_rng));
        }
        result = json{{"type", "parallel"}, {"solutions", solutions}};
    } else {
        result = solve_sub(sub_instance_from_json(inst_json), opt, rng);
    }
    write_output(opt.out, result.dump(2) + "\n");
    return 0;
}

bool verify_sub(const SubInstance& sub, const json& sol);

bool verify_sub(const SubInstance& sub, const json& sol) {
    if (std::holds_alternative<PhpInstance>(sub)) {
        const auto& inst = std::get<PhpInstance>(sub);
        return verify_php(inst, F2Vector::from_hex(inst.m, sol.at("y").get<std::string>()));
    }
    if (std::holds_alternative<RphpInstance>(sub)) {
        const auto& inst = std::get<RphpInstance>(sub);
        auto y = F2Vector::from_hex(std::size_t(inst.graph.vertex_count()),
                                    sol.at("y").get<std::string>());
        auto d = F2Vector::from_hex(std::size_t(inst.graph.edge_count()),
                                    sol.at("d").get<std::string>());
        return verify_rphp(inst, y, d);
    }
    if (std::holds_alternative<HlfInstance>(sub)) {
        const auto& inst = std::get<HlfInstance>(sub);
        return verify_hlf(inst, F2Vector::from_hex(inst.n, sol.at("p").get<std::string>()));
    }
    if (std::holds_alternative<PbpInstance>(sub)) {
        const auto& inst = std::get<PbpInstance>(sub);
        return verify_pbp(inst, F2Vector::from_hex(inst.x.size(), sol.at("y").get<std::string>()));
    }
    return verify_mod3(std::get<Mod3Instance>(sub), sol.at("y").get<int>());
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
    json inst_json = load_json(inst_path);
    json sol = load_json(sol_path);
    bool ok;
    if (inst_json.at("type").get<std::string>() == "parallel") {
        ParallelInstance inst = parallel_from_json(inst_json);
        const auto& sols = sol.at("solutions");
        if (sols.size() != inst.k) throw ShapeError("verify: solution count != k");
        std::vector<json> outputs(sols.begin(), sols.end());
        ok = verify_parallel(inst, outputs, [&](std::size_t i, const json& s) {
            return verify_sub(inst.instances[i], s);
        });
    } else {
        ok = verify_sub(sub_instance_from_json(inst_json), sol);
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

struct GameOptions {
    std::string mode = "affine-exhaustive";
    std::size_t n = 3;
    std::size_t d1 = 0, d2 = 0;
    std::string strategy_file;
    std::size_t samples = 0;
    uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

GameConstraints canonical_constraints(std::size_t n, std::size_t d1, std::size_t d2) {
    if (d1 + 2 * d2 >= n)
        throw CLI::ValidationError("game", "constraints leave no free bits");
    GameConstraints cons;
    for (std::size_t i = 0; i < d1; ++i) cons.fixed_bits.push_back({int(i), int(i & 1)});
    for (std::size_t g = 0; g < d2; ++g)
        cons.groups.push_back({{int(d1 + 2 * g), int(d1 + 2 * g + 1)}, int(g & 1)});
    return cons;
}

int cmd_game(const GameOptions& opt) {
    std::ostringstream out;
    if (opt.mode == "affine-exhaustive") {
        auto [s, v] = best_affine_strategy(opt.n);
        out << "mode,n,value,value_float,a,b_hex\n";
        out << "affine-exhaustive," << opt.n << "," << v.str() << ","
            << format_double(v.to_double()) << "," << s.a << "," << s.b.to_hex() << "\n";
    } else if (opt.mode == "affine") {
        AffineStrategy s = affine_from_json(load_json(opt.strategy_file));
        Rational v = affine_win_prob_exact(s, opt.n);
        out << "mode,n,value,value_float,a,b_hex\n";
        out << "affine," << opt.n << "," << v.str() << "," << format_double(v.to_double()) << ","
            << s.a << "," << s.b.to_hex() << "\n";
    } else if (opt.mode == "constrained-exhaustive") {
        auto cons = canonical_constraints(opt.n, opt.d1, opt.d2);
        auto [s, v] = max_constrained_affine(opt.n, cons);
        double bound = constrained_game_bound(opt.n, opt.d1, opt.d2);
        out << "mode,n,d1,d2,value,value_float,bound,slack\n";
        out << "constrained-exhaustive," << opt.n << "," << opt.d1 << "," << opt.d2 << ","
            << v.str() << "," << format_double(v.to_double()) << "," << format_double(bound)
            << "," << format_double(bound - v.to_double()) << "\n";
    } else if (opt.mode == "local") {
        LocalStrategy s = local_from_json(load_json(opt.strategy_file));
        auto verifier = [&](const F2Vector& x, const F2Vector& y) {
            return verify_php(PhpInstance(s.n, s.outputs(), x), y);
        };
        out << "mode,n,m,estimate,stderr,exact\n";
        if (opt.samples == 0) {
            auto est = eval_local_exhaustive(s, verifier);
            out << "local-exhaustive," << s.n << "," << s.outputs() << ","
                << format_double(est.estimate) << ",0," << est.exact->str() << "\n";
        } else {
            Rng rng(opt.seed);
            auto est = eval_local_montecarlo(s, verifier, opt.samples, rng);
            out << "local-montecarlo," << s.n << "," << s.outputs() << ","
                << format_double(est.estimate) << "," << format_double(est.stderr_) << ",\n";
        }
    } else {
        throw CLI::ValidationError("game", "unknown mode: " + opt.mode);
    }
    write_output(opt.out, out.str());
    return 0;
}

struct SweepOptions {
    std::string what = "affine-optimum";
    std::size_t n_min = 2, n_max = 10;
    std::size_t d1_max = 4, d2_max = 2;
    int size_max = 20;
    std::string out;
};

int cmd_sweep(const SweepOptions& opt) {
    std::ostringstream out;
    if (opt.what == "affine-optimum") {
        out << "n,value,value_float\n";
        for (std::size_t n = opt.n_min; n <= opt.n_max; ++n) {
            auto [s, v] = best_affine_strategy(n);
            out << n << "," << v.str() << "," << format_double(v.to_double()) << "\n";
        }
    } else if (opt.what == "constrained-max") {
        out << "n,d1,d2,value,value_float,bound,slack\n";
        for (std::size_t n = opt.n_min; n <= opt.n_max; ++n)
            for (std::size_t d1 = 0; d1 <= opt.d1_max; ++d1)
                for (std::size_t d2 = 0; d2 <= opt.d2_max; ++d2) {
                    if (d1 + 2 * d2 >= n) continue;
                    auto cons = canonical_constraints(n, d1, d2);
                    auto [s, v] = max_constrained_affine(n, cons);
                    double bound = constrained_game_bound(n, d1, d2);
                    out << n << "," << d1 << "," << d2 << "," << v.str() << ","
                        << format_double(v.to_double()) << "," << format_double(bound) << ","
                        << format_double(bound - v.to_double()) << "\n";
                }
    } else if (opt.what == "grid-layers") {
        out << "width,height,layers,max_degree_plus_1\n";
        for (int w = 2; w <= opt.size_max; ++w) {
            Graph tree = grid_spanning_tree(w, w);
            out << w << "," << w << "," << cnot_layers(tree).layers.size() << ","
                << tree.max_degree() + 1 << "\n";
        }
    } else {
        throw CLI::ValidationError("sweep", "unknown sweep: " + opt.what);
    }
    write_output(opt.out, out.str());
    return 0;
}

struct ReduceOptions {
    std::vector<std::string> inputs;
    std::string out;
    std::string emb_out;
};

int cmd_reduce(const ReduceOptions& opt) {
    std::vector<HlfInstance> parts;
    std::vector<HlfEmbedding> embeddings;
    bool all_embeddable = true;
    for (const auto& path : opt.inputs) {
        json j = load_json(path);
        if (j.at("type").get<std::string>() != "rphp")
            throw CLI::ValidationError("reduce", "reduce expects rphp instances");
        RphpInstance inst = rphp_from_json(j);
        std::optional<std::vector<std::pair<int, int>>> coords;
        if (auto grid = rphp_grid_from_json(j)) coords = grid_coords(grid->first, grid->second);
        else all_embeddable = false;
        auto [hlf, emb] = rphp_to_hlf(inst, coords);
        parts.push_back(std::move(hlf));
        embeddings.push_back(std::move(emb));
    }
    HlfInstance sum = parts.size() == 1 ? parts[0] : direct_sum_hlf(parts);
    HlfEmbedding emb = parts.size() == 1
                           ? embeddings[0]
                           : (all_embeddable ? direct_sum_embeddings(embeddings) : HlfEmbedding{});
    json result = instance_to_json(sum);
    if (parts.size() > 1) {
        json sizes = json::array();
        for (const auto& p : parts) sizes.push_back(p.n);
        result["part_sizes"] = sizes;
    }
    if (emb.coords) result["supported_2d"] = is_2d_supported(sum, emb);
    write_output(opt.out, result.dump(2) + "\n");
    if (!opt.emb_out.empty()) {
        if (parts.size() == 1) write_output(opt.emb_out, embedding_to_json(emb).dump(2) + "\n");
        else {
            json embs = json::array();
            for (const auto& e : embeddings) embs.push_back(embedding_to_json(e));
            json j{{"parts", embs}};
            if (emb.coords) j["combined"] = embedding_to_json(emb);
            write_output(opt.emb_out, j.dump(2) + "\n");
        }
    }
    return 0;
}

struct XorOptions {
    std::string game = "php-affine";
    std::size_t k = 6, n = 6;
    std::size_t samples = 100000;
    uint64_t seed = 0;
    std::string out;
};

int cmd_xor(const XorOptions& opt) {
    Rng rng(opt.seed);
    std::ostringstream out;
    if (opt.game == "php-affine" || opt.game == "php-quantum") {
        bool quantum = opt.game == "php-quantum";
        auto [strat, val] = best_affine_strategy(opt.n);
        auto play = [&](Rng& rr, std::vector<uint8_t>& record) {
            for (std::size_t i = 0; i < opt.k; ++i) {
                F2Vector x = gen_even_parity_input(opt.n, rr);
                int target = int((x.popcount() / 2) & 1);
                int answer = quantum ? sample_php_cat(x, opt.n, rr).parity()
                                     : (strat.a ^ strat.b.dot(x));
                record[i] = uint8_t(answer != target);
            }
        };
        auto samples = collect_win_indicators(play, opt.k, 2, opt.samples, rng);
        auto biases = all_subset_biases(samples);
        out << "mask,bias,stderr\n";
        for (std::size_t s = 1; s < biases.size(); ++s) {
            double se = std::sqrt(std::max(1.0 - biases[s] * biases[s], 1e-12) /
                                  double(samples.count));
            out << s << "," << format_double(biases[s]) << "," << format_double(se) << "\n";
        }
        auto report = vazirani_checks(samples);
        out << "# epsilon," << format_double(report.epsilon) << "\n";
        out << "# tv_bound," << format_double(report.tv_bound) << "\n";
        out << "# zero_mass_bound," << format_double(report.zero_mass_bound) << "\n";
        out << "# empirical_all_win," << format_double(report.empirical_zero_mass) << "\n";
    } else if (opt.game == "pbp-quantum") {
        // Ternary deviations: 0 on a win; a losing parity is assigned a
        // uniform nonzero deviation, as in the mod 3 reduction.
        auto play = [&](Rng& rr, std::vector<uint8_t>& record) {
            for (std::size_t i = 0; i < opt.k; ++i) {
                TritVector x = gen_trit_input(opt.n, rr);
                F2Vector y = sample_pbp(x, rr);
                record[i] = verify_pbp(x, y) ? 0 : uint8_t(1 + rr.below(2));
            }
        };
        auto samples = collect_win_indicators(play, opt.k, 3, opt.samples, rng);
        out << "character,bias_re,bias_im,bias_abs,stderr\n";
        std::vector<uint8_t> a(opt.k, 0);
        std::size_t total = 1;
        for (std::size_t i = 0; i < opt.k; ++i) total *= 3;
        for (std::size_t code = 1; code < total; ++code) {
            std::size_t rest = code;
            for (std::size_t i = 0; i < opt.k; ++i) { a[i] = uint8_t(rest % 3); rest /= 3; }
            auto est = z3_character_bias(samples, a);
            out << code << "," << format_double(est.bias.real()) << ","
                << format_double(est.bias.imag()) << "," << format_double(std::abs(est.bias))
                << "," << format_double(est.stderr_) << "\n";
        }
    } else {
        throw CLI::ValidationError("xor", "unknown game: " + opt.game);
    }
    write_output(opt.out, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity games, hidden linear functions, and shallow-circuit samplers"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cgen = app.add_subcommand("gen", "generate a problem instance (JSON)");
    cgen->add_option("--problem", gen.problem,
                     "php | rphp | grid-rphp | hlf | pbp | pbp-binary | mod3 | parallel-php | "
                     "parallel-pbp | parallel-mod3");
    cgen->add_option("-n", gen.n, "input length");
    cgen->add_option("-m", gen.m, "output length (php; default n)");
    cgen->add_option("-k", gen.k, "parallel copy count");
    cgen->add_option("--width", gen.width, "grid width");
    cgen->add_option("--height", gen.height, "grid height");
    cgen->add_option("--graph", gen.graph_file, "graph JSON file (rphp)");
    cgen->add_option("--seed", gen.seed, "master seed")->required();
    cgen->add_option("--out", gen.out, "output path (default stdout)");

    SolveOptions solve;
    auto* csolve = app.add_subcommand("solve", "solve an instance (JSON in, JSON out)");
    csolve->add_option("--in", solve.in, "instance JSON")->required();
    csolve->add_option("--solver", solve.solver,
                       "quantum | reference-hlf | affine | local | self-reduced-mod3");
    csolve->add_option("--strategy", solve.strategy_file, "strategy JSON (affine/local)");
    csolve->add_option("--inner", solve.inner, "inner mod3 solver: exact | constant0");
    csolve->add_option("--seed", solve.seed, "master seed")->required();
    csolve->add_option("--stream", solve.stream, "emit N hex sample lines instead of JSON");
    csolve->add_option("--out", solve.out, "output path (default stdout)");

    std::string verify_in, verify_sol;
    auto* cverify = app.add_subcommand("verify", "verify a solution against an instance");
    cverify->add_option("--in", verify_in, "instance JSON")->required();
    cverify->add_option("--solution", verify_sol, "solution JSON")->required();

    GameOptions game;
    auto* cgame = app.add_subcommand("game", "exact or estimated game values");
    cgame->add_option("--mode", game.mode,
                      "affine-exhaustive | affine | constrained-exhaustive | local");
    cgame->add_option("-n", game.n, "players");
    cgame->add_option("--d1", game.d1, "fixed bits (constrained)");
    cgame->add_option("--d2", game.d2, "parity groups (constrained)");
    cgame->add_option("--strategy", game.strategy_file, "strategy JSON");
    cgame->add_option("--samples", game.samples, "Monte Carlo samples (local; 0 = exhaustive)");
    cgame->add_option("--seed", game.seed, "seed (local Monte Carlo)");
    cgame->add_option("--out", game.out, "output path (default stdout)");

    SweepOptions sweep;
    auto* csweep = app.add_subcommand("sweep", "parameter sweeps (CSV)");
    csweep->add_option("--what", sweep.what, "affine-optimum | constrained-max | grid-layers");
    csweep->add_option("--n-min", sweep.n_min, "smallest n");
    csweep->add_option("--n-max", sweep.n_max, "largest n");
    csweep->add_option("--d1-max", sweep.d1_max, "largest d1");
    csweep->add_option("--d2-max", sweep.d2_max, "largest d2");
    csweep->add_option("--size-max", sweep.size_max, "largest grid side");
    csweep->add_option("--out", sweep.out, "output path (default stdout)");

    ReduceOptions reduce;
    auto* creduce = app.add_subcommand("reduce", "RPHP -> HLF (direct sum over several inputs)");
    creduce->add_option("--in", reduce.inputs, "rphp instance JSON files")->required();
    creduce->add_option("--out", reduce.out, "HLF instance output path");
    creduce->add_option("--emb", reduce.emb_out, "embedding output path");

    XorOptions xoropt;
    auto* cxor = app.add_subcommand("xor", "bias suite over parallel runs (CSV)");
    cxor->add_option("--game", xoropt.game, "php-affine | php-quantum | pbp-quantum");
    cxor->add_option("-k", xoropt.k, "parallel copies");
    cxor->add_option("-n", xoropt.n, "input length per copy");
    cxor->add_option("--samples", xoropt.samples, "sample count");
    cxor->add_option("--seed", xoropt.seed, "master seed")->required();
    cxor->add_option("--out", xoropt.out, "output path (default stdout)");

    auto* crepro = app.add_subcommand("repro", "run the full acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) return cmd_gen(gen);
        if (csolve->parsed()) return cmd_solve(solve);
        if (cverify->parsed()) return cmd_verify(verify_in, verify_sol);
        if (cgame->parsed()) return cmd_game(game);
        if (csweep->parsed()) return cmd_sweep(sweep);
        if (creduce->parsed()) return cmd_reduce(reduce);
        if (cxor->parsed()) return cmd_xor(xoropt);
        if (crepro->parsed()) {
            auto results = run_acceptance(std::cout);
            for (const auto& r : results)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
