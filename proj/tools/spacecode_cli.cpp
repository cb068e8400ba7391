// Command-line surface for the spacecode library: construct codebooks,
// encode/decode streams, evaluate bounds, run the exact oracle and the
// benchmark table generator.
//
// Exit codes: 0 success, 2 input validation failure, 3 malformed stream,
// 4 search budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spacecode/spacecode.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInput = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitBudget = 4;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    return spacecode::read_file(path);
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw spacecode::InvalidSpec("cannot open output file " + path);
    }
    out << payload;
}

struct DistArgs {
    std::string path;
    int k_override = 0;
    bool drop_zeros = false;

    spacecode::NormalizeResult load() const {
        return spacecode::parse_distribution(read_input(path), k_override,
                                             drop_zeros ? spacecode::ZeroPolicy::drop
                                                        : spacecode::ZeroPolicy::reject);
    }
};

void add_dist_options(CLI::App* cmd, DistArgs& args) {
    cmd->add_option("dist", args.path, "distribution file (JSON or CSV), '-' for stdin")
        ->required();
    cmd->add_option("--k", args.k_override, "override the code alphabet size")
        ->check(CLI::Range(2, spacecode::kMaxAlphabet));
    cmd->add_flag("--drop-zeros", args.drop_zeros, "drop zero weights instead of rejecting");
}

spacecode::SpaceCodebook load_space_codebook(const std::string& path) {
    auto parsed = spacecode::parse_codebook(read_input(path));
    if (!std::holds_alternative<spacecode::SpaceCodebook>(parsed)) {
        throw spacecode::InvalidCodebook("codec commands need a space_prefix codebook");
    }
    return std::get<spacecode::SpaceCodebook>(std::move(parsed));
}

std::vector<std::uint32_t> parse_symbols(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::uint32_t> symbols;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(token, &used);
            if (used != token.size() || v == 0) throw std::invalid_argument(token);
            symbols.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw spacecode::InvalidSpec("bad symbol index '" + token + "'");
        }
    }
    return symbols;
}

int run(int argc, char** argv) {
    CLI::App app{"prefix-free codes with an end-of-word space mark"};
    app.require_subcommand(1);

    DistArgs construct_dist;
    std::string construct_out;
    bool one_to_one = false;
    bool use_epsilon = false;
    auto* construct = app.add_subcommand("construct", "build a codebook for a distribution");
    add_dist_options(construct, construct_dist);
    construct->add_option("-o,--output", construct_out, "output file (default stdout)");
    construct->add_flag("--one-to-one", one_to_one, "emit the optimal one-to-one code instead");
    construct->add_flag("--epsilon", use_epsilon, "let the one-to-one code use the empty word");

    std::string encode_book, encode_in, encode_out;
    auto* encode_cmd = app.add_subcommand("encode", "encode symbol indices into a stream");
    encode_cmd->add_option("codebook", encode_book, "codebook JSON file")->required();
    encode_cmd->add_option("input", encode_in, "symbol indices, whitespace separated (stdin)");
    encode_cmd->add_option("-o,--output", encode_out, "output file (default stdout)");

    std::string decode_book, decode_in, decode_out;
    auto* decode_cmd = app.add_subcommand("decode", "decode a stream into symbol indices");
    decode_cmd->add_option("codebook", decode_book, "codebook JSON file")->required();
    decode_cmd->add_option("input", decode_in, "encoded stream file (stdin)");
    decode_cmd->add_option("-o,--output", decode_out, "output file (default stdout)");

    DistArgs bounds_dist;
    std::string bounds_out;
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate every average-length bound");
    add_dist_options(bounds_cmd, bounds_dist);
    bounds_cmd->add_option("-o,--output", bounds_out, "output file (default stdout)");

    DistArgs oracle_dist;
    std::string oracle_out;
    int oracle_max_len = 0;
    std::uint64_t oracle_budget = spacecode::OracleOptions{}.node_budget;
    bool oracle_closed = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive exact optimum (small n)");
    add_dist_options(oracle_cmd, oracle_dist);
    oracle_cmd->add_option("--max-len", oracle_max_len,
                           "codeword length cap (default: longest constructed + 1)");
    oracle_cmd->add_option("--budget", oracle_budget, "search node budget");
    oracle_cmd->add_flag("--closed", oracle_closed, "restrict to prefix-closed codeword sets");
    oracle_cmd->add_option("-o,--output", oracle_out, "output file (default stdout)");

    spacecode::BenchSpec spec;
    std::string bench_family = "uniform";
    std::string bench_dist_file, bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "emit a CSV of lengths, bounds and gaps");
    bench_cmd->add_option("--family", bench_family, "uniform | zipf | geometric | custom-file");
    bench_cmd->add_option("--n", spec.n, "number of source symbols");
    auto* bench_k_opt = bench_cmd->add_option("--k", spec.k, "code alphabet size");
    bench_cmd->add_option("--param", spec.param, "family parameter");
    bench_cmd->add_option("--seed", spec.seed, "RNG seed for perturbed trials");
    bench_cmd->add_option("--trials", spec.trials, "number of trials");
    bench_cmd->add_option("--perturb", spec.perturb_magnitude,
                          "per-trial multiplicative weight jitter in [0, 1)");
    bench_cmd->add_option("--oracle-max-n", spec.oracle_max_n,
                          "fill oracle columns only for n at or below this");
    bench_cmd->add_option("--dist", bench_dist_file, "distribution file for custom-file");
    bench_cmd->add_option("-o,--output", bench_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (construct->parsed()) {
        const auto loaded = construct_dist.load();
        const auto& dist = loaded.dist;
        if (one_to_one) {
            const auto code = spacecode::assign_one_to_one(dist, use_epsilon);
            write_output(construct_out, spacecode::codebook_to_json(code) + "\n");
            std::cerr << "n=" << dist.n() << " k=" << dist.k()
                      << " L=" << spacecode::fmt_json_double(spacecode::average_length(code, dist))
                      << " spaces=0\n";
        } else {
            const auto book = spacecode::build_space_code(dist);
            write_output(construct_out, spacecode::codebook_to_json(book) + "\n");
            std::cerr << "n=" << dist.n() << " k=" << dist.k() << " L="
                      << spacecode::fmt_json_double(spacecode::average_length_space(book, dist))
                      << " spaces=" << book.space_count() << "\n";
        }
        return kExitOk;
    }
    if (encode_cmd->parsed()) {
        const auto book = load_space_codebook(encode_book);
        const auto symbols = parse_symbols(read_input(encode_in));
        write_output(encode_out, spacecode::encode(book, symbols));
        return kExitOk;
    }
    if (decode_cmd->parsed()) {
        const auto book = load_space_codebook(decode_book);
        const auto symbols = spacecode::decode(book, read_input(decode_in));
        std::string out;
        for (auto s : symbols) {
            out += std::to_string(s);
            out += '\n';
        }
        write_output(decode_out, out);
        return kExitOk;
    }
    if (bounds_cmd->parsed()) {
        const auto loaded = bounds_dist.load();
        const auto report = spacecode::full_report(loaded.dist);
        write_output(bounds_out, spacecode::bounds_report_to_json(report) + "\n");
        return kExitOk;
    }
    if (oracle_cmd->parsed()) {
        const auto loaded = oracle_dist.load();
        spacecode::OracleOptions opts;
        opts.max_len = oracle_max_len;
        opts.node_budget = oracle_budget;
        opts.closed_only = oracle_closed;
        const auto result = spacecode::exact_optimum(loaded.dist, opts);
        write_output(oracle_out, spacecode::oracle_result_to_json(result) + "\n");
        return kExitOk;
    }
    if (bench_cmd->parsed()) {
        if (bench_family == "uniform") {
            spec.family = spacecode::Family::uniform;
        } else if (bench_family == "zipf") {
            spec.family = spacecode::Family::zipf;
        } else if (bench_family == "geometric") {
            spec.family = spacecode::Family::geometric;
        } else if (bench_family == "custom-file") {
            spec.family = spacecode::Family::custom;
            if (bench_dist_file.empty()) {
                throw spacecode::InvalidSpec("custom-file needs --dist");
            }
            const auto loaded = spacecode::parse_distribution(
                read_input(bench_dist_file), bench_k_opt->count() > 0 ? spec.k : 0);
            spec.custom_weights = loaded.dist.probs();
            spec.n = loaded.dist.n();
            spec.k = loaded.dist.k();
        } else {
            throw spacecode::InvalidSpec("unknown family '" + bench_family + "'");
        }
        const auto rows = spacecode::run(spec);
        write_output(bench_out, spacecode::bench_rows_to_csv(rows));
        return kExitOk;
    }
    return kExitOther;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const spacecode::MalformedStream& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const spacecode::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const spacecode::InvalidDistribution& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidAlphabet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidProbability& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidCodebook& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::UnknownSymbol& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidIndex& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spacecode::InvalidPairing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
}
