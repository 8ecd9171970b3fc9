#pragma once

// Command-line front end. Exit codes: 0 success / verdict true,
// 1 verdict false, 2 usage or input error.

#include "lrc/bounds.hpp"
#include "lrc/codec.hpp"
#include "lrc/io.hpp"
#include "lrc/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lrc::cli {

struct Preset {
    std::uint32_t p, t;
    std::size_t r;
    int d;
    std::string design;
};

inline const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table{
        {"cor33", {5, 2, 4, 5, "affine"}},  // q = 25, lines of AG(2, 5): [150, 117, 5]
        {"cor34", {2, 6, 7, 6, "affine"}},  // q = 64, lines of AG(2, 8): [576, 500, 6]
        {"cor35", {2, 4, 4, 5, "greedy"}},  // q = 16, greedy 5-subsets
        {"cor36", {2, 5, 5, 6, "greedy"}},  // q = 32, greedy 6-subsets
    };
    return table;
}

struct CommandConfig {
    std::string subcommand;
    std::optional<std::string> preset;
    std::uint32_t p = 0, t = 0;
    std::size_t r = 0;
    int d = 0;
    std::string design_source;
    std::string design_file;
    std::optional<std::size_t> max_blocks;
    std::string seed_order = "canonical";
    std::string output;
    std::string dump;
    bool stamp = false;

    std::string code_path;
    std::string mode = "structured";
    std::uint64_t budget = 100'000'000;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::optional<std::size_t> position;
    std::string word_path;

    std::uint64_t q = 0;
    std::optional<int> bounds_d;
    bool as_json = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline io::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return io::json::parse(in);
    } catch (const io::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

inline void write_json(const std::string& path, io::json j, bool stamp) {
    if (stamp) {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    write_text(path, j.dump(2) + "\n");
}

inline unsigned threads_from_env(unsigned flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("LRC_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw UsageError(std::string("LRC_THREADS is not a number: ") + env);
        }
    }
    return 0;
}

inline BlockDesign make_design(const CommandConfig& cfg, const Field& field) {
    const std::size_t w = cfg.r + 1;
    if (cfg.design_source == "affine") {
        std::uint32_t s = 0;
        std::uint64_t v = 1;
        while (v < w) {
            v *= cfg.p;
            ++s;
        }
        if (v != w || cfg.t % s != 0)
            throw UsageError("affine design needs r + 1 = " + std::to_string(w) + " to be a power p^s of p = " +
                             std::to_string(cfg.p) + " with s dividing t = " + std::to_string(cfg.t));
        BlockDesign d = affine_lines(cfg.p, s, cfg.t / s);
        if (cfg.max_blocks && *cfg.max_blocks < d.blocks.size()) d.blocks.resize(*cfg.max_blocks);
        return d;
    }
    if (cfg.design_source == "greedy") {
        const SeedOrder order = cfg.seed_order == "reverse" ? SeedOrder::reverse : SeedOrder::canonical;
        return greedy_pack(field, w, 1, order, cfg.max_blocks);
    }
    BlockDesign d = io::design_from_json(read_json(cfg.design_file));
    if (!(d.field == field)) throw UsageError("design file field does not match --p/--t");
    if (d.w != w) throw UsageError("design file block size does not match r + 1");
    if (cfg.max_blocks && *cfg.max_blocks < d.blocks.size()) d.blocks.resize(*cfg.max_blocks);
    return d;
}

inline int do_construct(const CommandConfig& cfg, std::ostream& out) {
    if (cfg.output.empty()) throw UsageError("construct needs --output");
    if (cfg.p == 0 || cfg.t == 0 || cfg.r == 0 || cfg.d == 0)
        throw UsageError("construct needs --p, --t, --r and --d (or --preset)");
    if (cfg.d != 5 && cfg.d != 6) throw UsageError("--d must be 5 or 6");
    if (cfg.design_source.empty()) throw UsageError("construct needs --design affine|greedy|file");
    if (cfg.design_source == "file" && cfg.design_file.empty()) throw UsageError("--design file needs --design-file");
    const Field field = make_field(cfg.p, cfg.t);
    const BlockDesign design = make_design(cfg, field);
    const LrcCode code = make_code(design, cfg.d);
    write_json(cfg.output, io::code_to_json(code), cfg.stamp);
    if (!cfg.dump.empty()) write_text(cfg.dump, io::matrix_dump(code.H.entries));
    out << "field " << field.name() << " (q = " << field.size() << ")\n"
        << "design: " << design.blocks.size() << " blocks of size " << design.w << "\n"
        << "code: [" << code.n << ", " << code.k << ", " << code.d_target << "] locality " << code.locality << "\n"
        << "wrote " << cfg.output << "\n";
    return 0;
}

inline int do_verify(const CommandConfig& cfg, std::ostream& out) {
    const LrcCode code = io::code_from_json(read_json(cfg.code_path));
    VerifyOptions opts;
    opts.threads = threads_from_env(cfg.threads);
    opts.budget = cfg.budget;
    VerificationReport rep;
    if (cfg.sample) {
        rep = verify_distance_sampled(code.H, *cfg.sample, cfg.seed);
    } else if (cfg.mode == "exhaustive") {
        rep = verify_distance_exhaustive(code.H, opts);
    } else {
        rep = verify_distance_structured(code.H, opts);
    }
    if (!cfg.output.empty()) write_json(cfg.output, io::report_to_json(rep), cfg.stamp);
    out << "code: [" << code.n << ", " << code.k << "] locality " << code.locality << ", target d = " << code.d_target
        << "\n";
    out << "method: " << to_string(rep.method) << (rep.certifying ? "" : " (non-certifying)") << "\n";
    for (const auto& [name, count] : rep.patterns) out << "  " << name << ": " << count << "\n";
    out << "verdict: " << (rep.verdict ? "true" : "false") << "\n";
    if (!rep.verdict) {
        out << "dependent columns:";
        for (auto c : rep.certificate) out << ' ' << c;
        out << "\n";
    }
    if (const auto dist = verified_distance(rep)) {
        const auto rhs = singleton_rhs(code.n, code.k, code.locality);
        out << "distance: " << *dist << ", Singleton-type bound " << rhs << ", optimal: "
            << (is_optimal(code, *dist) ? "yes" : "no") << "\n";
    }
    return rep.verdict ? 0 : 1;
}

inline int do_repair_demo(const CommandConfig& cfg, std::ostream& out) {
    const LrcCode code = io::code_from_json(read_json(cfg.code_path));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint32_t> sym(0, code.field.size() - 1);
    std::vector<Element> msg(code.k);
    for (auto& x : msg) x = Element{sym(rng)};
    const Codeword word = encode(code, msg);
    const std::size_t pos = cfg.position.value_or(std::uniform_int_distribution<std::size_t>(0, code.n - 1)(rng));
    if (pos >= code.n) throw UsageError("--position must be below n = " + std::to_string(code.n));
    Codeword damaged = word;
    damaged.erase(pos);
    std::vector<std::size_t> reads;
    const Element value = repair_symbol(code, pos, [&](std::size_t j) {
        reads.push_back(j);
        return damaged.symbols[j];
    });
    out << "erased position " << pos << " (block " << code.H.block_of(pos).block << ")\n";
    out << "read " << reads.size() << " positions:";
    for (auto j : reads) out << ' ' << j;
    out << "\n";
    const bool ok = value == *word.symbols[pos];
    out << "repaired " << value.index() << ", original " << word.symbols[pos]->index() << ", "
        << (ok ? "match" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
}

inline int do_decode(const CommandConfig& cfg, std::ostream& out) {
    const LrcCode code = io::code_from_json(read_json(cfg.code_path));
    const Codeword word = io::word_from_json(code.field, read_json(cfg.word_path));
    const Codeword done = erasure_decode(code, word);
    const std::string text = io::word_to_json(done).dump() + "\n";
    if (cfg.output.empty())
        out << text;
    else
        write_text(cfg.output, text);
    return 0;
}

inline int do_bounds(const CommandConfig& cfg, std::ostream& out) {
    std::vector<int> ds = cfg.bounds_d ? std::vector<int>{*cfg.bounds_d} : std::vector<int>{5, 6};
    std::vector<BoundReport> rows;
    for (int d : ds) rows.push_back(bound_table(cfg.q, cfg.r, d));
    if (cfg.as_json) {
        io::json arr = io::json::array();
        for (const auto& b : rows) arr.push_back(io::bounds_to_json(b));
        out << arr.dump(2) << "\n";
        return 0;
    }
    out << std::left << std::setw(6) << "q" << std::setw(5) << "r" << std::setw(4) << "d" << std::setw(14)
        << "new_lower" << std::setw(9) << "applies" << std::setw(13) << "prior_lower" << std::setw(22)
        << "prior_upper" << "new>prior\n";
    for (const auto& b : rows) {
        const bool exceeds = b.construction_applies && Rational(b.prior_lower) < b.construction_lower;
        out << std::left << std::setw(6) << b.q << std::setw(5) << b.r << std::setw(4) << b.d << std::setw(14)
            << io::rational_string(b.construction_lower) << std::setw(9) << (b.construction_applies ? "yes" : "no")
            << std::setw(13) << b.prior_lower.str() << std::setw(22) << io::rational_string(b.prior_upper)
            << (exceeds ? "yes" : "no") << "\n";
    }
    return 0;
}

} // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Optimal locally repairable codes of distance 5 and 6"};
    app.require_subcommand(1);
    CommandConfig cfg;

    auto* construct = app.add_subcommand("construct", "build a code and write it as JSON");
    construct->add_option("--preset", cfg.preset, "cor33 | cor34 | cor35 | cor36")
        ->check(CLI::IsMember({"cor33", "cor34", "cor35", "cor36"}));
    auto* opt_p = construct->add_option("--p", cfg.p, "field characteristic");
    auto* opt_t = construct->add_option("--t", cfg.t, "extension degree");
    auto* opt_r = construct->add_option("--r", cfg.r, "locality");
    auto* opt_d = construct->add_option("--d", cfg.d, "target distance (5 or 6)");
    auto* opt_design = construct->add_option("--design", cfg.design_source, "affine | greedy | file")
                           ->check(CLI::IsMember({"affine", "greedy", "file"}));
    construct->add_option("--design-file", cfg.design_file, "design JSON for --design file");
    construct->add_option("--max-blocks", cfg.max_blocks, "keep at most this many blocks");
    construct->add_option("--seed-order", cfg.seed_order, "greedy visiting order")
        ->check(CLI::IsMember({"canonical", "reverse"}));
    construct->add_option("-o,--output", cfg.output, "code file to write");
    construct->add_option("--dump", cfg.dump, "also write H as plain text");
    construct->add_flag("--stamp", cfg.stamp, "add a generation timestamp");

    auto* verify = app.add_subcommand("verify", "certify the minimum distance of a code file");
    verify->add_option("code", cfg.code_path, "code file")->required();
    verify->add_option("--mode", cfg.mode, "exhaustive | structured")
        ->check(CLI::IsMember({"exhaustive", "structured"}));
    verify->add_option("--budget", cfg.budget, "maximum subsets for exhaustive mode");
    verify->add_option("--sample", cfg.sample, "check N random subsets instead (non-certifying)");
    verify->add_option("--seed", cfg.seed, "sampling seed");
    verify->add_option("--threads", cfg.threads, "worker threads (default: LRC_THREADS or all cores)");
    verify->add_option("-o,--output", cfg.output, "report file to write");
    verify->add_flag("--stamp", cfg.stamp, "add a generation timestamp");

    auto* repair = app.add_subcommand("repair-demo", "erase one symbol of a random codeword and repair it");
    repair->add_option("code", cfg.code_path, "code file")->required();
    repair->add_option("--position", cfg.position, "position to erase (default: random)");
    repair->add_option("--seed", cfg.seed, "random seed");

    auto* decode = app.add_subcommand("decode", "fill the erasures of a word file");
    decode->add_option("code", cfg.code_path, "code file")->required();
    decode->add_option("--word", cfg.word_path, "word JSON (null marks an erasure)")->required();
    decode->add_option("-o,--output", cfg.output, "where to write the completed word");

    auto* bounds = app.add_subcommand("bounds", "compare length bounds");
    bounds->add_option("--q", cfg.q, "alphabet size")->required();
    bounds->add_option("--r", cfg.r, "locality")->required();
    bounds->add_option("--d", cfg.bounds_d, "distance (default: both 5 and 6)")->check(CLI::IsMember({5, 6}));
    bounds->add_flag("--json", cfg.as_json, "print JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    try {
        if (cfg.subcommand == "construct") {
            if (cfg.preset) {
                const Preset& pr = presets().at(*cfg.preset);
                if (!opt_p->count()) cfg.p = pr.p;
                if (!opt_t->count()) cfg.t = pr.t;
                if (!opt_r->count()) cfg.r = pr.r;
                if (!opt_d->count()) cfg.d = pr.d;
                if (!opt_design->count()) cfg.design_source = pr.design;
            }
            return detail::do_construct(cfg, out);
        }
        if (cfg.subcommand == "verify") return detail::do_verify(cfg, out);
        if (cfg.subcommand == "repair-demo") return detail::do_repair_demo(cfg, out);
        if (cfg.subcommand == "decode") return detail::do_decode(cfg, out);
        return detail::do_bounds(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error in " << cfg.subcommand << ": " << e.what() << "\n";
        return 2;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

} // namespace lrc::cli
