// Command-line front end: generate symmetric alternant/Goppa instances,
// fold and verify them against the predicted smaller codes, sweep parameter
// grids, and print key-size reduction reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "goppafold/harness.hpp"

using namespace goppafold;

namespace {

std::vector<uint32_t> parse_uint_list(const std::string& s) {
    std::vector<uint32_t> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(static_cast<uint32_t>(std::stoul(cur)));
    }
    return out;
}

const FieldCtx& parse_field(const std::string& s) {
    // p:m[:modulus] with the modulus packed as a little-endian base-p integer
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("--field expects p:m[:modulus]");
    int p = std::stoi(parts[0]);
    int m = std::stoi(parts[1]);
    std::vector<int> modulus;
    if (parts.size() == 3) {
        uint64_t packed = std::stoull(parts[2]);
        while (packed > 0) {
            modulus.push_back(static_cast<int>(packed % p));
            packed /= p;
        }
    }
    return FieldCtx::get(p, m, modulus);
}

SubfieldView parse_view(const FieldCtx& f, const std::string& s) {
    if (s.empty()) return prime_view(f);
    std::istringstream in(s);
    std::string qs, ms;
    std::getline(in, qs, ':');
    std::getline(in, ms, ':');
    uint64_t q = std::stoull(qs);
    int deg = 0;
    uint64_t acc = 1;
    while (acc < q) {
        acc *= f.p;
        ++deg;
    }
    if (acc != q || deg == 0) throw CLI::ValidationError("--view q must be a power of p");
    SubfieldView v = subfield(f, deg);
    if (!ms.empty() && v.m != std::stoi(ms)) throw CLI::ValidationError("--view m does not match p^m_abs = q^m");
    return v;
}

void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Family parse_family(const std::string& s) {
    if (s == "qc-alternant") return Family::QcAlternant;
    if (s == "qc-goppa") return Family::QcGoppa;
    if (s == "qm-alternant" || s == "qd-alternant") return Family::QmAlternant;
    if (s == "qm-goppa" || s == "qd-goppa") return Family::QmGoppa;
    throw CLI::ValidationError("unknown family: " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alternant/Goppa codes with affine-induced automorphisms: build, fold, verify"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    std::string g_field, g_view, g_group, g_kind = "alternant", g_polyq, g_out;
    int g_n0 = 2, g_degree = 2, g_d = 0;
    uint64_t g_seed = 1;
    bool g_strict = false;
    auto* gen = app.add_subcommand("gen", "generate a symmetric instance");
    gen->add_option("--field", g_field, "p:m[:modulus] (modulus packed base-p)")->required();
    gen->add_option("--view", g_view, "q:m base field of the subfield subcode (default q=p)");
    gen->add_option("--group", g_group, "qc:a,b or qm:a0,a1,... (element integers)")->required();
    gen->add_option("--kind", g_kind, "alternant | goppa");
    gen->add_option("--n0", g_n0, "number of orbits / cosets in the support");
    gen->add_option("--degree", g_degree, "alternant degree t");
    gen->add_option("--d", g_d, "multiplier exponent d (qc; alpha = a^d)");
    gen->add_option("--polyq", g_polyq, "Q coefficients c0,c1,... (goppa; element integers)");
    gen->add_option("--seed", g_seed, "generation seed");
    gen->add_flag("--strict-iff", g_strict, "sample pairwise-distinct per-coset multiplier values");
    gen->add_option("--out", g_out, "output path (default stdout)");

    // ---- fold / verify -------------------------------------------------
    std::string f_in, f_out, f_folded;
    bool f_timing = false;
    auto* fold = app.add_subcommand("fold", "fold an instance and emit report + folded description");
    fold->add_option("instance", f_in, "instance file")->required();
    fold->add_option("--out", f_out, "report path (default stdout)");
    fold->add_option("--folded-out", f_folded, "folded code description path");
    fold->add_flag("--timing", f_timing, "include wall time in the report");

    std::string v_in, v_out;
    bool v_timing = false;
    auto* verify = app.add_subcommand("verify", "verify an instance, emit report only");
    verify->add_option("instance", v_in, "instance file")->required();
    verify->add_option("--out", v_out, "report path (default stdout)");
    verify->add_flag("--timing", v_timing, "include wall time in the report");

    // ---- sweep ----------------------------------------------------------
    std::string s_fields = "2:4,2:5,2:6,3:3,3:4", s_families = "qc-alternant,qc-goppa,qm-alternant,qm-goppa";
    std::string s_ells = "2,3,5,7", s_degqs = "1,2", s_out, s_csv;
    int s_lambda = 2, s_trials = 1, s_jobs = 1, s_nmax = 256;
    uint64_t s_seed = 1;
    double s_corrupt = 0.0;
    bool s_timing = false;
    auto* sweep = app.add_subcommand("sweep", "run a verification campaign over a parameter grid");
    sweep->add_option("--fields", s_fields, "comma list of p:m");
    sweep->add_option("--families", s_families, "comma list of qc-alternant,qc-goppa,qm-alternant,qm-goppa");
    sweep->add_option("--ells", s_ells, "qc group orders to try");
    sweep->add_option("--degqs", s_degqs, "goppa Q degrees to try");
    sweep->add_option("--lambda-max", s_lambda, "largest shift-group rank");
    sweep->add_option("--trials", s_trials, "instances per grid cell");
    sweep->add_option("--n-max", s_nmax, "support length cap");
    sweep->add_option("--seed", s_seed, "base seed of the campaign");
    sweep->add_option("--corrupt", s_corrupt, "fraction of instances to corrupt (negative-control campaign)");
    sweep->add_option("--jobs", s_jobs, "worker threads");
    sweep->add_option("--out", s_out, "report path (default stdout)");
    sweep->add_option("--csv", s_csv, "also write the rows as a CSV table");
    sweep->add_flag("--timing", s_timing, "include wall time columns");

    // ---- keysize ---------------------------------------------------------
    long long k_n = 0, k_k = 0, k_q = 2, k_order = 1;
    auto* keysize = app.add_subcommand("keysize", "key-size reduction arithmetic");
    keysize->add_option("n", k_n, "code length")->required();
    keysize->add_option("k", k_k, "code dimension")->required();
    keysize->add_option("q", k_q, "base field size")->required();
    keysize->add_option("group_order", k_order, "automorphism group order")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const FieldCtx& f = parse_field(g_field);
            SubfieldView view = parse_view(f, g_view);
            auto colon = g_group.find(':');
            if (colon == std::string::npos) throw CLI::ValidationError("--group expects qc:... or qm:...");
            std::string tag = g_group.substr(0, colon);
            auto vals = parse_uint_list(g_group.substr(colon + 1));
            Instance inst = [&] {
                if (tag == "qc") {
                    if (vals.size() != 2) throw CLI::ValidationError("--group qc:a,b needs two elements");
                    AffineMap phi(Fe(f, vals[0]), Fe(f, vals[1]));
                    if (g_kind == "goppa") {
                        if (g_polyq.empty()) throw CLI::ValidationError("goppa kind needs --polyq");
                        return build_qc_goppa(view, phi, g_n0, Poly(f, parse_uint_list(g_polyq)), g_d, g_seed);
                    }
                    return build_qc_instance(view, phi, g_n0, g_degree, g_d, g_seed);
                }
                if (tag == "qm" || tag == "qd") {
                    std::vector<Fe> alphas;
                    for (uint32_t v : vals) alphas.emplace_back(f, v);
                    if (g_kind == "goppa") {
                        if (g_polyq.empty()) throw CLI::ValidationError("goppa kind needs --polyq");
                        return build_qm_goppa(view, alphas, g_n0, Poly(f, parse_uint_list(g_polyq)), g_seed);
                    }
                    return build_qm_alternant(view, alphas, g_n0, g_degree, g_seed, g_strict);
                }
                throw CLI::ValidationError("unknown group tag: " + tag);
            }();
            write_file(g_out, serialize_instance(inst));
            return 0;
        }

        if (*fold || *verify) {
            const bool folding = static_cast<bool>(*fold);
            const std::string in_path = folding ? f_in : v_in;
            const std::string out_path = folding ? f_out : v_out;
            const bool timing = folding ? f_timing : v_timing;
            Instance inst = parse_instance(read_file(in_path));
            FoldReport rep = verify_instance(inst);
            ReportRow row = make_row(inst, rep);
            write_file(out_path, serialize_report(row, rep, timing));
            if (folding && !f_folded.empty() && rep.note.empty()) {
                CodeSpec folded_spec =
                    rep.gamma2 ? CodeSpec::goppa(inst.code.view, rep.x2, *rep.gamma2)
                               : CodeSpec::alternant(inst.code.view, rep.x2, rep.y2, rep.deg_out);
                write_file(f_folded, serialize_folded_spec(folded_spec, inst.seed));
            }
            if (!rep.verdict && !out_path.empty() && out_path != "-")
                std::cerr << "verdict false" << (rep.note.empty() ? "" : ": " + rep.note) << "\n";
            return rep.verdict ? 0 : 1;
        }

        if (*sweep) {
            SweepSpec spec;
            spec.fields.clear();
            for (const std::string& fs : [&] {
                     std::vector<std::string> parts;
                     std::istringstream in(s_fields);
                     std::string cur;
                     while (std::getline(in, cur, ',')) parts.push_back(cur);
                     return parts;
                 }()) {
                auto colon = fs.find(':');
                if (colon == std::string::npos) throw CLI::ValidationError("--fields expects p:m entries");
                spec.fields.emplace_back(std::stoi(fs.substr(0, colon)), std::stoi(fs.substr(colon + 1)));
            }
            spec.families.clear();
            {
                std::istringstream in(s_families);
                std::string cur;
                while (std::getline(in, cur, ',')) spec.families.push_back(parse_family(cur));
            }
            spec.ells.clear();
            for (uint32_t v : parse_uint_list(s_ells)) spec.ells.push_back(static_cast<int>(v));
            spec.degqs.clear();
            for (uint32_t v : parse_uint_list(s_degqs)) spec.degqs.push_back(static_cast<int>(v));
            spec.lambda_max = s_lambda;
            spec.trials = s_trials;
            spec.n_max = s_nmax;
            spec.seed = s_seed;
            spec.corrupt = s_corrupt;
            SweepResult res = run_sweep(spec, s_jobs);
            write_file(s_out, serialize_sweep_report(res.rows, s_timing));
            if (!s_csv.empty()) write_file(s_csv, serialize_sweep_csv(res.rows, s_timing));
            std::cerr << "sweep: " << res.rows.size() << " instances, " << res.pass << " pass, " << res.fail
                      << " fail";
            if (res.corrupted) std::cerr << " (" << res.corrupted << " corrupted on purpose)";
            std::cerr << "\n";
            return res.all_pass() ? 0 : 1;
        }

        if (*keysize) {
            KeySizeReport r = keysize_report(k_n, k_k, k_q, k_order);
            std::cout << "code: length " << r.n << ", dimension " << r.k << " over GF(" << k_q << ")\n";
            std::cout << "automorphism group order: " << r.group_order << "\n";
            std::cout << "full generator key: " << r.full_key_symbols << " symbols ("
                      << static_cast<long long>(r.full_key_symbols * r.symbol_bits) << " bits)\n";
            std::cout << "compact symmetric key: " << r.compact_key_symbols << " symbols ("
                      << static_cast<long long>(r.compact_key_symbols * r.symbol_bits) << " bits)\n";
            std::cout << "folded code: length " << r.n2 << ", dimension " << r.k2 << "\n";
            std::cout << "folded key: " << r.folded_key_symbols << " symbols ("
                      << static_cast<long long>(r.folded_key_symbols * r.symbol_bits) << " bits)\n";
            if (r.group_order == 1) {
                std::cout << "group is trivial: no reduction\n";
            } else {
                std::cout << "key recovery reduces to the folded instance; all parameters divided by "
                          << r.group_order << "\n";
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
