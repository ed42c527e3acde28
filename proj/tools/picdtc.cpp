// Command-line front end: DE threshold tables, Monte-Carlo BER sweeps,
// file encode/decode, generator-polynomial ranking, and transfer-function
// dumps. Every run writes plot-ready CSV plus a self-describing record.json.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>

#include <CLI11.hpp>

#include "picdtc/bec.hpp"
#include "picdtc/decoder.hpp"
#include "picdtc/density_evolution.hpp"
#include "picdtc/experiment.hpp"
#include "picdtc/run_record.hpp"
#include "picdtc/stream_io.hpp"

namespace fs = std::filesystem;
using namespace picdtc;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Trellis build_trellis2(const ExperimentConfig& cfg) {
    return Trellis(OctalPoly::parse(cfg.g_f), OctalPoly::parse(cfg.g_f2),
                   OctalPoly::parse(cfg.g_b));
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / name).string(), content);
}

std::vector<uint8_t> unpack_file_bits(const std::string& path, int64_t nbits) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + path + "'");
    std::vector<char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const int64_t need = (nbits + 7) / 8;
    if (int64_t(bytes.size()) != need)
        throw FormatError(path + ": payload must be exactly " + std::to_string(need) +
                          " bytes for " + std::to_string(nbits) + " bits, got " +
                          std::to_string(bytes.size()));
    std::vector<uint8_t> bits(static_cast<size_t>(nbits));
    for (int64_t i = 0; i < nbits; ++i)
        bits[size_t(i)] = uint8_t(bytes[size_t(i / 8)]) >> (7 - i % 8) & 1u;
    for (int64_t i = nbits; i < 8 * need; ++i)
        if (uint8_t(bytes[size_t(i / 8)]) >> (7 - i % 8) & 1u)
            throw FormatError(path + ": nonzero pad bit at byte offset " + std::to_string(i / 8));
    return bits;
}

void pack_file_bits(const std::string& path, const std::vector<uint8_t>& bits) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + path + "' for writing");
    uint8_t byte = 0;
    int fill = 0;
    for (uint8_t b : bits) {
        byte = uint8_t(byte << 1 | (b & 1u));
        if (++fill == 8) {
            f.put(char(byte));
            byte = 0;
            fill = 0;
        }
    }
    if (fill) f.put(char(byte << (8 - fill)));
}

void add_code_flags(CLI::App* app, ExperimentConfig& cfg) {
    app->add_option("--gf", cfg.g_f, "forward polynomial of input 1, octal");
    app->add_option("--gf2", cfg.g_f2, "forward polynomial of input 2, octal");
    app->add_option("--gb", cfg.g_b, "feedback polynomial, octal");
}

// Expand "--config FILE" into the flags stored in FILE as flat key=value
// lines ('#' comments allowed, list values whitespace-separated).
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> out;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg != "--config") {
            out.push_back(arg);
            continue;
        }
        if (i + 1 >= argc) throw FormatError("--config needs a file path");
        const std::string path = argv[++i];
        std::ifstream f(path);
        if (!f) throw FormatError("cannot open config file '" + path + "'");
        std::string line;
        size_t lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw FormatError(path + ":" + std::to_string(lineno) + ": expected key=value");
            std::string key = line.substr(first, eq - first);
            key.erase(key.find_last_not_of(" \t") + 1);
            out.push_back("--" + key);
            std::istringstream values(line.substr(eq + 1));
            std::string v;
            while (values >> v) out.push_back(v);
        }
    }
    return out;
}

void add_coupling_flags(CLI::App* app, ExperimentConfig& cfg) {
    app->add_option("--K", cfg.coupling.K, "information bits per block")->required();
    app->add_option("--Kc", cfg.coupling.Kc, "coupled bits per block")->required();
    app->add_option("--m", cfg.coupling.m, "coupling memory");
    app->add_option("--L", cfg.coupling.L, "chain length")->required();
    app->add_option("--seed", cfg.seed, "master seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partially information coupled duo-binary turbo codes on the BEC"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string out_dir = ".";
    app.footer("any subcommand accepts --config FILE with flat key=value lines naming its flags");
    // threshold
    auto* th = app.add_subcommand("threshold", "BP thresholds over a lambda/m grid");
    std::vector<double> lambdas;
    std::vector<int64_t> ms{1};
    int64_t de_L = 0;
    double precision = 1e-4;
    th->add_option("--lambda", lambdas, "coupling ratios")->required()->expected(-1);
    th->add_option("--m", ms, "coupling memories")->expected(-1);
    th->add_option("--de-L", de_L, "DE chain length, 0 = default policy");
    th->add_option("--precision", precision, "bisection precision");
    add_code_flags(th, cfg);
    th->add_option("--out", out_dir, "output directory");

    // ber
    auto* ber = app.add_subcommand("ber", "Monte-Carlo bit erasure rate sweep");
    add_coupling_flags(ber, cfg);
    add_code_flags(ber, cfg);
    ber->add_option("--eps", cfg.eps_list, "channel erasure probabilities")->required()->expected(-1);
    ber->add_option("--trials", cfg.max_trials, "trial cap per point");
    ber->add_option("--min-events", cfg.min_erasure_events, "residual-erasure stop floor");
    ber->add_option("--max-inner", cfg.budgets.max_inner_iters, "inner iterations per block visit");
    ber->add_option("--max-sweeps", cfg.budgets.max_sweeps, "chain sweeps");
    ber->add_option("--threads", cfg.threads, "worker threads, 0 = hardware");
    ber->add_option("--out", out_dir, "output directory");

    // encode
    auto* enc = app.add_subcommand("encode", "encode a payload file to a chain bit stream");
    std::string in_path, out_path, flags_path;
    double channel_eps = -1;
    add_coupling_flags(enc, cfg);
    add_code_flags(enc, cfg);
    enc->add_option("--in", in_path, "payload file, packed bits MSB-first")->required();
    enc->add_option("--out-stream", out_path, "output stream file")->required();
    enc->add_option("--epsilon", channel_eps,
                    "also pass the stream through a BEC and emit a ternary stream");

    // decode
    auto* dec = app.add_subcommand("decode", "decode a chain stream back to payload + flags");
    add_coupling_flags(dec, cfg);
    add_code_flags(dec, cfg);
    dec->add_option("--in", in_path, "stream file (bit or ternary)")->required();
    dec->add_option("--out", out_path, "recovered payload file")->required();
    dec->add_option("--flags", flags_path, "erasure flag file, 1 bit per payload bit")->required();
    dec->add_option("--max-inner", cfg.budgets.max_inner_iters, "inner iterations per block visit");
    dec->add_option("--max-sweeps", cfg.budgets.max_sweeps, "chain sweeps");

    // ranksearch
    auto* rank = app.add_subcommand("ranksearch", "rank g_f' candidates by BP threshold");
    std::vector<std::string> cand_text;
    int max_degree = -1;
    rank->add_option("--gf", cfg.g_f, "forward polynomial of input 1, octal");
    rank->add_option("--gb", cfg.g_b, "feedback polynomial, octal");
    rank->add_option("--candidates", cand_text, "octal candidates for g_f'")->expected(-1);
    rank->add_option("--max-degree", max_degree, "use all polynomials up to this degree");
    rank->add_option("--precision", precision, "bisection precision");
    rank->add_option("--out", out_dir, "output directory");

    // transfer-dump
    auto* td = app.add_subcommand("transfer-dump", "grid dump of the exact transfer function");
    int grid = 5;
    td->add_option("--grid", grid, "points per axis")->check(CLI::Range(2, 101));
    add_code_flags(td, cfg);
    td->add_option("--out", out_dir, "output directory");

    std::vector<std::string> args;
    try {
        args = expand_config_args(argc, argv);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    }
    std::vector<char*> argp;
    argp.reserve(args.size());
    for (auto& a : args) argp.push_back(a.data());
    try {
        app.parse(int(argp.size()), argp.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const double t0 = now_s();
        if (*th) {
            const Trellis trellis2 = build_trellis2(cfg);
            RunRecord rec;
            rec.kind = "threshold";
            rec.config = cfg;
            rec.thresholds = threshold_sweep(trellis2, lambdas, ms, de_L, precision);
            rec.wall_time_s = now_s() - t0;
            const std::string csv = threshold_csv(rec.thresholds);
            emit(out_dir, "threshold.csv", csv);
            emit(out_dir, "record.json", rec.to_json());
            std::cout << csv;
        } else if (*ber) {
            const Trellis trellis2 = build_trellis2(cfg);
            RunRecord rec;
            rec.kind = "ber";
            rec.config = cfg;
            rec.ber_points = ber_sweep(trellis2, cfg);
            rec.wall_time_s = now_s() - t0;
            const std::string csv = ber_csv(rec.ber_points, cfg.seed);
            emit(out_dir, "ber.csv", csv);
            emit(out_dir, "record.json", rec.to_json());
            std::cout << csv;
        } else if (*enc) {
            const Trellis trellis2 = build_trellis2(cfg);
            cfg.coupling.validate();
            const auto layout = make_layout(cfg.coupling);
            const auto payload = unpack_file_bits(in_path, payload_bits(cfg.coupling));
            Rng rng_il = Rng::stream(cfg.seed, stream_purpose::interleaver, 0);
            const Interleavers il = make_interleavers(cfg.coupling, rng_il);
            const ChainCodeword cw = encode_chain(payload, cfg.coupling, layout, il, trellis2);
            const auto bits = serialize_chain(cw, cfg.coupling, layout);
            if (channel_eps >= 0) {
                Rng rng_ch = Rng::stream(cfg.seed, stream_purpose::channel, 0);
                write_ternary_file(out_path, bec_transmit(bits, channel_eps, rng_ch));
            } else {
                write_bit_file(out_path, bits);
            }
            std::cout << "encoded " << payload.size() << " payload bits into " << bits.size()
                      << " transmitted bits\n";
        } else if (*dec) {
            const Trellis trellis2 = build_trellis2(cfg);
            cfg.coupling.validate();
            const auto layout = make_layout(cfg.coupling);
            TernaryWord flat;
            {
                std::ifstream probe(in_path, std::ios::binary);
                if (!probe) throw FormatError("cannot open '" + in_path + "'");
                char magic[4] = {};
                probe.read(magic, 4);
                if (std::string(magic, 4) == "PDT1") {
                    const auto bits = read_bit_file(in_path);
                    flat.resize(bits.size());
                    for (size_t i = 0; i < bits.size(); ++i) flat[i] = sym_from_bit(bits[i]);
                } else {
                    flat = read_ternary_file(in_path);
                }
            }
            const ChainChannelOutput rx = unflatten_chain(flat, cfg.coupling, layout);
            Rng rng_il = Rng::stream(cfg.seed, stream_purpose::interleaver, 0);
            const Interleavers il = make_interleavers(cfg.coupling, rng_il);
            ChainDecoder decoder(trellis2, cfg.coupling, layout, il);
            const DecodeResult res = decoder.decode(rx, cfg.budgets);
            pack_file_bits(out_path, res.payload);
            pack_file_bits(flags_path, res.payload_erased);
            std::cout << "decoded " << res.payload.size() << " payload bits, "
                      << res.residual_erasures << " residual erasures, " << res.sweeps
                      << " sweeps\n";
        } else if (*rank) {
            std::vector<OctalPoly> candidates;
            for (const auto& s : cand_text) candidates.push_back(OctalPoly::parse(s));
            if (max_degree >= 0)
                for (uint64_t v = 1; v < (uint64_t(1) << (max_degree + 1)); ++v)
                    candidates.push_back(OctalPoly(v));
            RunRecord rec;
            rec.kind = "ranksearch";
            rec.config = cfg;
            rec.ranking = rank_gf2(OctalPoly::parse(cfg.g_f), OctalPoly::parse(cfg.g_b),
                                   candidates, DeConfig{1.0, 1, 0}, precision);
            rec.wall_time_s = now_s() - t0;
            const std::string csv = rank_csv(rec.ranking);
            emit(out_dir, "ranking.csv", csv);
            emit(out_dir, "record.json", rec.to_json());
            std::cout << csv;
        } else if (*td) {
            const Trellis trellis2 = build_trellis2(cfg);
            const ExactTransfer F(trellis2);
            std::string csv = "q1,q2,eps_parity,e1,e2\n";
            char buf[160];
            for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j)
                    for (int k = 0; k < grid; ++k) {
                        const double q1 = double(i) / (grid - 1);
                        const double q2 = double(j) / (grid - 1);
                        const double ep = double(k) / (grid - 1);
                        const auto p = F.eval({q1, q2, ep});
                        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,%.6g\n", q1, q2, ep,
                                      p.e1, p.e2);
                        csv += buf;
                    }
            emit(out_dir, "transfer.csv", csv);
            std::cout << csv;
        }
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
