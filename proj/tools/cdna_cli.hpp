#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification found a
// counterexample, 2 usage or configuration error, 3 decode failure,
// 4 a resource cap was hit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdna/cdna.hpp"

namespace cdna::cli {

enum ExitCode : int { ok = 0, counterexample = 1, usage = 2, decode_failed = 3, cap_hit = 4 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

inline std::string first_line(const std::string& text) {
    const auto pos = text.find('\n');
    return pos == std::string::npos ? text : text.substr(0, pos);
}

inline bool looks_like_vector(const std::string& text) { return first_line(text).find(':') != std::string::npos; }

struct CodeArgs {
    std::string code;
    long long M = -1;
    long long n = -1;
    long long t = 1;
    long long a = 0;

    void attach(CLI::App* app) {
        app->add_option("--code", code, "code kind (L, D, LS) or a full spec line such as \"D 5 4 1 0\"")
            ->required();
        app->add_option("--M", M, "strand count");
        app->add_option("--n", n, "vector length");
        app->add_option("--t", t, "correctable strand losses (L, LS)");
        app->add_option("--a", a, "VT residue (D)");
    }

    CodeSpec spec() const {
        if (code.find(' ') != std::string::npos) return parse_code_spec(code);
        if (M < 1 || n < 1) throw ConfigError("--M and --n are required with a bare --code kind");
        if (t < 0 || a < 0) throw ConfigError("--t and --a must be nonnegative");
        CodeSpec s{parse_code_kind(code), static_cast<Level>(M), static_cast<std::size_t>(n), static_cast<Level>(t),
                   static_cast<std::size_t>(a)};
        if (s.kind == CodeKind::deletion) s.t = 1;
        return s;
    }
};

inline std::vector<BigInt> parse_message(const std::string& text) {
    std::istringstream in(text);
    std::vector<BigInt> out;
    std::string token;
    while (in >> token) {
        if (token.find_first_not_of("0123456789") != std::string::npos)
            throw EncodeError("message tokens must be nonnegative decimal integers");
        out.emplace_back(token);
    }
    if (out.empty()) throw ConfigError("empty message");
    return out;
}

/// Representations drawn for a seed use stream 1; patterns use the seed itself.
inline StrandMatrix expand_vector(const CompositeVector& x, std::uint64_t seed) {
    SplitMix64 rng = SplitMix64(seed).split(1);
    return sample_representation(x, rng);
}

inline ChannelOutput read_matrix_or_vector(const std::string& text, std::uint64_t seed) {
    if (looks_like_vector(text)) return ChannelOutput(expand_vector(parse_vector(first_line(text)), seed));
    return parse_matrix(text);
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composite DNA coding toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    std::uint64_t seed = 0;

    // encode
    auto* encode = app.add_subcommand("encode", "message file -> codeword vector");
    detail::CodeArgs encode_code;
    encode_code.attach(encode);
    encode->add_option("--in", in_path, "message file (digits for L, a rank for D/LS)")->required();
    encode->add_option("--out", out_path, "output vector file (default stdout)");

    // expand
    auto* expand = app.add_subcommand("expand", "vector -> seeded uniform matrix representation");
    expand->add_option("--in", in_path, "vector file")->required();
    expand->add_option("--out", out_path, "output matrix file");
    expand->add_option("--seed", seed, "random seed");

    // channel
    auto* channel = app.add_subcommand("channel", "inject errors into a matrix (or expanded vector)");
    std::string kind_text, pattern_path, apply_path;
    long long t = 0;
    channel->add_option("--in", in_path, "matrix or vector file")->required();
    channel->add_option("--out", out_path, "output matrix file");
    channel->add_option("--kind", kind_text, "error kind: S, L, D, I or ID");
    channel->add_option("--t", t, "number of error events");
    channel->add_option("--seed", seed, "random seed");
    channel->add_option("--pattern", pattern_path, "where to write the applied pattern (default <out>.pattern)");
    channel->add_option("--apply", apply_path, "apply this pattern file instead of sampling one");

    // decode
    auto* decode = app.add_subcommand("decode", "received matrix -> codeword vector");
    detail::CodeArgs decode_code;
    decode_code.attach(decode);
    decode->add_option("--in", in_path, "received matrix file")->required();
    decode->add_option("--out", out_path, "output vector file");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "upper bound and achieved code size");
    long long bM = -1, bn = -1, bt = 1;
    std::size_t cap = 4096;
    bool csv = false;
    bounds->add_option("--kind", kind_text, "error kind: S, L, D, I or ID")->required();
    bounds->add_option("--M", bM, "strand count")->required();
    bounds->add_option("--n", bn, "vector length")->required();
    bounds->add_option("--t", bt, "error count");
    bounds->add_option("--cap", cap, "vertex limit for exact search");
    bounds->add_flag("--csv", csv, "CSV instead of JSON lines");
    bounds->add_option("--out", out_path, "report file");

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive claim sweeps");
    std::string grid_name = "small";
    verify->add_option("--grid", grid_name, "parameter grid: small or empty");
    verify->add_option("--cap", cap, "vertex limit per instance");
    verify->add_flag("--csv", csv, "CSV instead of JSON lines");
    verify->add_option("--out", out_path, "report file");

    // ballsize
    auto* ballsize = app.add_subcommand("ballsize", "single-deletion ball size of a vector");
    std::string x_text;
    bool enumerate = false;
    std::uint64_t ball_cap = 2'000'000;
    ballsize->add_option("--in", in_path, "vector file");
    ballsize->add_option("--x", x_text, "vector literal 'M n : x_1 ... x_n'");
    ballsize->add_flag("--enumerate", enumerate, "also count the ball by enumeration");
    ballsize->add_option("--cap", ball_cap, "cap for enumeration");
    ballsize->add_option("--out", out_path, "report file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        if (encode->parsed()) {
            const CodeSpec spec = encode_code.spec();
            const auto message = detail::parse_message(detail::read_file(in_path));
            detail::emit(out_path, format_vector(encode_message(spec, message)) + '\n', out);
            return ok;
        }
        if (expand->parsed()) {
            const auto x = parse_vector(detail::first_line(detail::read_file(in_path)));
            detail::emit(out_path, format_matrix(detail::expand_vector(x, seed)), out);
            return ok;
        }
        if (channel->parsed()) {
            const StrandMatrix X = to_strand_matrix(detail::read_matrix_or_vector(detail::read_file(in_path), seed));
            ErrorPattern pattern;
            if (!apply_path.empty()) {
                std::istringstream ps(detail::read_file(apply_path));
                pattern = parse_pattern(ps);
            } else {
                if (kind_text.empty()) throw ConfigError("--kind is required unless --apply is given");
                if (t < 0) throw ConfigError("--t must be nonnegative");
                pattern = sample_pattern(X.strand_count(), X.length(),
                                         ChannelConfig{parse_error_kind(kind_text), static_cast<std::size_t>(t), seed});
            }
            detail::emit(out_path, format_matrix(apply_pattern(X, pattern)), out);
            const std::string where = !pattern_path.empty() ? pattern_path
                                      : !out_path.empty()   ? out_path + ".pattern"
                                                            : std::string();
            if (!where.empty()) detail::emit(where, format_pattern(pattern), out);
            return ok;
        }
        if (decode->parsed()) {
            const CodeSpec spec = decode_code.spec();
            const ChannelOutput R = parse_matrix(detail::read_file(in_path));
            detail::emit(out_path, format_vector(decode_output(spec, R)) + '\n', out);
            return ok;
        }
        if (bounds->parsed()) {
            if (bM < 1 || bn < 1 || bt < 0) throw ConfigError("bounds need M, n >= 1 and t >= 0");
            MaxCodeOptions opt;
            opt.exact_vertex_limit = cap;
            const BoundReport r = bound_report(parse_error_kind(kind_text), static_cast<Level>(bM),
                                               static_cast<std::size_t>(bn), static_cast<std::size_t>(bt), opt);
            const std::string text = csv ? bound_csv_header() + to_csv_line(r) : to_json(r).dump() + '\n';
            detail::emit(out_path, text, out);
            return r.complete ? ok : cap_hit;
        }
        if (verify->parsed()) {
            ClaimGrid grid;
            if (grid_name == "small")
                grid = ClaimGrid::small();
            else if (grid_name != "empty")
                throw ConfigError("unknown grid '" + grid_name + "' (expected small or empty)");
            const auto records = verify_claims(grid, BallOptions{}, cap);
            std::string text = csv ? claim_csv_header() : std::string();
            bool clean = true, complete = true;
            for (const auto& r : records) {
                text += csv ? to_csv_line(r) : to_json(r).dump() + '\n';
                clean = clean && r.counterexamples.empty();
                complete = complete && r.complete;
            }
            detail::emit(out_path, text, out);
            if (!clean) return counterexample;
            return complete ? ok : cap_hit;
        }
        if (ballsize->parsed()) {
            if (in_path.empty() == x_text.empty()) throw ConfigError("give exactly one of --in and --x");
            const auto x = parse_vector(x_text.empty() ? detail::first_line(detail::read_file(in_path)) : x_text);
            nlohmann::ordered_json j;
            j["vector"] = format_vector(x);
            j["formula"] = cdna::detail::big_to_json(single_deletion_ball_size(x));
            j["enumerated"] = nullptr;
            if (enumerate) {
                BallOptions opt;
                opt.cap = ball_cap;
                j["enumerated"] = error_ball(x, 1, ErrorKind::deletion, opt).size();
            }
            detail::emit(out_path, j.dump() + '\n', out);
            return ok;
        }
    } catch (const DecodeFailure& e) {
        nlohmann::ordered_json j;
        j["status"] = "decode_failure";
        j["reason"] = std::string(to_string(e.reason()));
        j["detail"] = e.what();
        err << j.dump() << '\n';
        return decode_failed;
    } catch (const OverflowError& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return cap_hit;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace cdna::cli
