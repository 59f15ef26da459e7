#include "fmbr/brgraph.hpp"
#include "fmbr/corpus.hpp"
#include "fmbr/fmbr_dp.hpp"
#include "fmbr/hardness.hpp"
#include "fmbr/report.hpp"
#include "fmbr/selftest.hpp"
#include "fmbr/wpds.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fmbr;
using nlohmann::json;

namespace {

constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

Program load_program(const std::string& path) {
    try {
        return parse_program(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

json metrics_json(const Program& p) {
    const auto m = metrics(p);
    return {{"size", m.size},
            {"br_factor", m.br_factor},
            {"depth", m.depth},
            {"instructions", instruction_count(p)},
            {"constructs", construct_count(p)},
            {"reorderings", count_reorderings(p).str()}};
}

json cover_json(const std::optional<Cover>& c) {
    if (!c) return nullptr;
    return c->indices;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merge two abstract programs under all branch reorderings"};
    app.require_subcommand(1);

    std::string file1, file2, scoring = "lcs", algo = "dp";
    std::optional<std::int64_t> threshold;
    bool as_json = false;
    std::uint64_t brute_cap = kDefaultEnumerationCap;

    auto* merge = app.add_subcommand("merge", "optimal merge score and witness");
    merge->add_option("file1", file1, "first program file")->required();
    merge->add_option("file2", file2, "second program file")->required();
    merge->add_option("--scoring", scoring, "lcs or a scoring file")->capture_default_str();
    merge->add_option("--algo", algo, "brute, dp or wpds")
        ->check(CLI::IsMember({"brute", "dp", "wpds"}))
        ->capture_default_str();
    merge->add_option("--threshold", threshold, "exit 0 iff score >= N, else 1");
    merge->add_flag("--json", as_json, "full JSON report instead of the score alone");
    merge->add_option("--brute-cap", brute_cap, "limit on reordering pairs for brute")->capture_default_str();

    auto* emit = app.add_subcommand("emit-merged", "merged listing of the optimal witness");
    emit->add_option("file1", file1)->required();
    emit->add_option("file2", file2)->required();
    emit->add_option("--scoring", scoring, "lcs or a scoring file")->capture_default_str();

    auto* metrics_cmd = app.add_subcommand("metrics", "size, branching factor and depth");
    std::vector<std::string> metric_files;
    metrics_cmd->add_option("files", metric_files, "program files")->required();

    auto* align = app.add_subcommand("align", "align the identity linearizations");
    align->add_option("file1", file1)->required();
    align->add_option("file2", file2)->required();
    align->add_option("--scoring", scoring, "lcs or a scoring file")->capture_default_str();

    auto* dump = app.add_subcommand("dump-wpds", "print the pushdown rules for a pair");
    dump->add_option("file1", file1)->required();
    dump->add_option("file2", file2)->required();
    dump->add_option("--scoring", scoring, "lcs or a scoring file")->capture_default_str();

    auto* x3c = app.add_subcommand("x3c", "exact cover instances");
    x3c->require_subcommand(1);
    std::size_t gen_n = 1, gen_m = 2;
    std::uint64_t seed = 1;
    bool planted = false;
    std::string out_path, instance_path, out_dir;
    auto* x3c_gen = x3c->add_subcommand("gen", "write a random instance");
    x3c_gen->add_option("-n", gen_n, "universe is 1..3n")->required();
    x3c_gen->add_option("-m", gen_m, "number of sets")->required();
    x3c_gen->add_option("--seed", seed)->capture_default_str();
    x3c_gen->add_flag("--planted", planted, "hide an exact cover");
    x3c_gen->add_option("-o,--out", out_path, "output file (stdout if absent)");
    auto* x3c_reduce = x3c->add_subcommand("reduce", "reduced program pair and threshold as JSON");
    x3c_reduce->add_option("instance", instance_path)->required();
    x3c_reduce->add_option("--out-dir", out_dir, "also write p1.fmbr and p2.fmbr here");
    auto* x3c_check = x3c->add_subcommand("check", "cover existence against the merge threshold");
    x3c_check->add_option("instance", instance_path)->required();

    std::string scale = "quick";
    auto* selftest = app.add_subcommand("selftest", "run the cross-checking suites");
    selftest->add_option("--scale", scale)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    selftest->add_option("--seed", seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*merge) {
            const Program p1 = load_program(file1), p2 = load_program(file2);
            const auto delta = scoring_from_arg(scoring);
            const auto report = merge_programs(p1, p2, *delta, parse_algorithm(algo), brute_cap);
            if (as_json)
                std::cout << to_json(report).dump(2) << '\n';
            else
                std::cout << report.score << '\n';
            if (threshold) return report.score >= Score(*threshold) ? 0 : 1;
            return 0;
        }
        if (*emit) {
            const Program p1 = load_program(file1), p2 = load_program(file2);
            const auto delta = scoring_from_arg(scoring);
            const auto w = fmbr_witness(p1, p2, *delta);
            std::cout << render_listing(merged_listing(w.alignment));
            return 0;
        }
        if (*metrics_cmd) {
            json out = json::array();
            for (const auto& f : metric_files) {
                json j = metrics_json(load_program(f));
                j["file"] = f;
                out.push_back(j);
            }
            std::cout << (out.size() == 1 ? out[0] : out).dump(2) << '\n';
            return 0;
        }
        if (*align) {
            const auto s1 = linearize(load_program(file1)), s2 = linearize(load_program(file2));
            const auto r = seq_align(s1, s2, *scoring_from_arg(scoring));
            json cols = json::array();
            for (const auto& c : r.alignment) cols.push_back({c.top, c.bottom});
            std::cout << json{{"score", score_to_json(r.score)}, {"alignment", cols}}.dump(2) << '\n';
            return 0;
        }
        if (*dump) {
            const auto s = build_wpds_s2(load_program(file1), load_program(file2), *scoring_from_arg(scoring));
            std::cout << dump_wpds(s);
            return 0;
        }
        if (*x3c_gen) {
            const auto text = write_x3c(gen_random_x3c(gen_n, gen_m, seed, planted));
            if (out_path.empty())
                std::cout << text;
            else
                write_file(out_path, text);
            return 0;
        }
        if (*x3c_reduce) {
            const auto r = reduce_x3c(parse_x3c(read_file(instance_path)));
            const auto p1 = render_program(r.p1), p2 = render_program(r.p2);
            if (!out_dir.empty()) {
                write_file(out_dir + "/p1.fmbr", p1 + '\n');
                write_file(out_dir + "/p2.fmbr", p2 + '\n');
            }
            std::cout << json{{"p1", p1}, {"p2", p2}, {"scoring", "lcs"}, {"threshold", r.threshold}}.dump(2) << '\n';
            return 0;
        }
        if (*x3c_check) {
            const auto inst = parse_x3c(read_file(instance_path));
            const auto cover = solve_x3c_bruteforce(inst);
            const auto r = reduce_x3c(inst);
            const Score v = fmbr_dp(r.p1, r.p2, *r.delta);
            const Score tau(r.threshold);
            const bool reached = v >= tau;
            const bool agree = cover.has_value() == reached && (!cover || verify_cover(inst, *cover));
            std::cout << (agree ? "agree: " : "disagree: ") << (cover ? "solvable" : "unsolvable") << ", FMBR ";
            if (reached)
                std::cout << "= " << v << " ≥ " << tau << '\n';
            else
                std::cout << "< " << tau << '\n';
            std::cerr << json{{"cover", cover_json(cover)}, {"score", score_to_json(v)}, {"threshold", r.threshold}}.dump()
                      << '\n';
            return agree ? 0 : 1;
        }
        if (*selftest) {
            const auto cfg = scale == "full" ? SelftestConfig::full(seed) : SelftestConfig::quick(seed);
            const auto results = run_selftest(cfg, &std::cout);
            std::size_t failed = 0;
            for (const auto& r : results) failed += r.passed ? 0 : 1;
            std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
            return failed == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
