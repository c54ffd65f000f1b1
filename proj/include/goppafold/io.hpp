#pragma once

// On-disk interchange formats: the instance file (field, view, group,
// support, multiplier / Goppa polynomial, seed) and the verification report.
// Field elements are serialized as their packed little-endian base-p digit
// integers.  Serialization is canonical: parse(serialize(x)) == x and
// serialize(parse(text)) reproduces canonical text byte for byte.

#include <sstream>

#include "goppafold/folding.hpp"

namespace goppafold {

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::string hex16(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

inline const char* family_tag(const GroupSpec& g) {
    if (g.kind == GroupSpec::Kind::Cyclic) return "qc";
    return g.ctx().p == 2 ? "qd" : "qm";
}

inline std::string serialize_instance(const Instance& inst) {
    const FieldCtx& f = *inst.code.view.f;
    std::ostringstream out;
    out << "goppafold instance v1\n";
    out << "field " << f.p << " " << f.m;
    for (int c : f.modulus) out << " " << c;
    out << "\n";
    out << "view " << inst.code.view.q << " " << inst.code.view.m << "\n";
    const bool goppa = inst.code.kind == CodeSpec::Kind::Goppa;
    out << "kind " << family_tag(inst.group) << " " << (goppa ? "goppa" : "alternant") << "\n";
    if (inst.group.kind == GroupSpec::Kind::Cyclic) {
        out << "group " << inst.group.gens[0].a().v << " " << inst.group.gens[0].b().v << "\n";
    } else {
        out << "shifts";
        for (const Fe& s : inst.group.shift_amounts()) out << " " << s.v;
        out << "\n";
    }
    if (goppa) {
        out << "gamma";
        for (uint32_t c : inst.code.gamma.coeffs()) out << " " << c;
        out << "\n";
    } else {
        out << "degree " << inst.code.degree << "\n";
        if (inst.group.kind == GroupSpec::Kind::Cyclic) out << "multd " << inst.qc_d << "\n";
    }
    out << "support";
    for (const Fe& x : inst.code.x) out << " " << x.v;
    out << "\n";
    if (!goppa) {
        out << "multiplier";
        for (const Fe& y : inst.code.y) out << " " << y.v;
        out << "\n";
    }
    out << "seed " << inst.seed << "\n";
    out << "end goppafold instance\n";
    return out.str();
}

/// The folded-code description emitted next to a fold report: same grammar,
/// group replaced by the tag "plain" since the folded code has no symmetry
/// left by construction.
inline std::string serialize_folded_spec(const CodeSpec& spec, uint64_t seed) {
    const FieldCtx& f = *spec.view.f;
    std::ostringstream out;
    out << "goppafold instance v1\n";
    out << "field " << f.p << " " << f.m;
    for (int c : f.modulus) out << " " << c;
    out << "\n";
    out << "view " << spec.view.q << " " << spec.view.m << "\n";
    const bool goppa = spec.kind == CodeSpec::Kind::Goppa;
    out << "kind plain " << (goppa ? "goppa" : "alternant") << "\n";
    if (goppa) {
        out << "gamma";
        for (uint32_t c : spec.gamma.coeffs()) out << " " << c;
        out << "\n";
    } else {
        out << "degree " << spec.degree << "\n";
    }
    out << "support";
    for (const Fe& x : spec.x) out << " " << x.v;
    out << "\n";
    if (!goppa) {
        out << "multiplier";
        for (const Fe& y : spec.y) out << " " << y.v;
        out << "\n";
    }
    out << "seed " << seed << "\n";
    out << "end goppafold instance\n";
    return out.str();
}

inline std::string instance_digest(const Instance& inst) { return hex16(fnv1a64(serialize_instance(inst))); }

namespace detail {

class LineReader {
  public:
    explicit LineReader(const std::string& text) : in_(text) {}

    bool next(std::string& key, std::vector<long long>& nums, std::vector<std::string>& words) {
        std::string line;
        while (std::getline(in_, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            ls >> key;
            nums.clear();
            words.clear();
            std::string tok;
            while (ls >> tok) {
                words.push_back(tok);
                try {
                    size_t pos = 0;
                    long long v = std::stoll(tok, &pos);
                    if (pos == tok.size()) nums.push_back(v);
                } catch (...) {
                }
            }
            return true;
        }
        return false;
    }

  private:
    std::istringstream in_;
};

}  // namespace detail

/// Parses an instance file (must carry a group; "plain" folded specs are
/// descriptions only and cannot be folded again).
inline Instance parse_instance(const std::string& text) {
    detail::LineReader rd(text);
    std::string key;
    std::vector<long long> nums;
    std::vector<std::string> words;

    if (!rd.next(key, nums, words) || key != "goppafold" || words.size() < 2 || words[0] != "instance" ||
        words[1] != "v1")
        throw std::invalid_argument("instance file: bad header");

    const FieldCtx* ctx = nullptr;
    std::optional<SubfieldView> view;
    std::string group_tag, code_tag;
    std::optional<uint32_t> qa, qb;
    std::vector<uint32_t> shifts, gamma_coeffs, support, multiplier;
    int degree = -1, multd = 0;
    uint64_t seed = 0;
    bool ended = false;

    while (rd.next(key, nums, words)) {
        if (key == "field") {
            if (nums.size() < 3) throw std::invalid_argument("instance file: bad field line");
            int p = static_cast<int>(nums[0]), m = static_cast<int>(nums[1]);
            std::vector<int> mod(nums.begin() + 2, nums.end());
            ctx = &FieldCtx::get(p, m, mod);
        } else if (key == "view") {
            if (!ctx || nums.size() != 2) throw std::invalid_argument("instance file: bad view line");
            // q = p^s: recover s from q
            uint32_t q = static_cast<uint32_t>(nums[0]);
            int s = 0;
            uint64_t acc = 1;
            while (acc < q) {
                acc *= ctx->p;
                ++s;
            }
            if (acc != q || s == 0) throw std::invalid_argument("instance file: view q is not a power of p");
            view = subfield(*ctx, s);
            if (view->m != nums[1]) throw std::invalid_argument("instance file: view m mismatch");
        } else if (key == "kind") {
            if (words.size() != 2) throw std::invalid_argument("instance file: bad kind line");
            group_tag = words[0];
            code_tag = words[1];
        } else if (key == "group") {
            if (nums.size() != 2) throw std::invalid_argument("instance file: bad group line");
            qa = static_cast<uint32_t>(nums[0]);
            qb = static_cast<uint32_t>(nums[1]);
        } else if (key == "shifts") {
            for (long long v : nums) shifts.push_back(static_cast<uint32_t>(v));
        } else if (key == "degree") {
            degree = static_cast<int>(nums.at(0));
        } else if (key == "multd") {
            multd = static_cast<int>(nums.at(0));
        } else if (key == "gamma") {
            for (long long v : nums) gamma_coeffs.push_back(static_cast<uint32_t>(v));
        } else if (key == "support") {
            for (long long v : nums) support.push_back(static_cast<uint32_t>(v));
        } else if (key == "multiplier") {
            for (long long v : nums) multiplier.push_back(static_cast<uint32_t>(v));
        } else if (key == "seed") {
            seed = static_cast<uint64_t>(nums.at(0));
        } else if (key == "end") {
            ended = true;
            break;
        } else {
            throw std::invalid_argument("instance file: unknown key '" + key + "'");
        }
    }
    if (!ended) throw std::invalid_argument("instance file: missing end marker");
    if (!ctx || !view) throw std::invalid_argument("instance file: missing field/view");
    if (group_tag == "plain") throw std::invalid_argument("instance file: folded descriptions carry no group");

    auto elems = [&](const std::vector<uint32_t>& raw) {
        std::vector<Fe> v;
        v.reserve(raw.size());
        for (uint32_t e : raw) v.emplace_back(*ctx, e);
        return v;
    };

    GroupSpec group = [&] {
        if (group_tag == "qc") {
            if (!qa || !qb) throw std::invalid_argument("instance file: qc kind needs a group line");
            return GroupSpec::cyclic(AffineMap(Fe(*ctx, *qa), Fe(*ctx, *qb)));
        }
        if (group_tag == "qd" || group_tag == "qm") {
            if (shifts.empty()) throw std::invalid_argument("instance file: shift kind needs a shifts line");
            return GroupSpec::shifts(elems(shifts));
        }
        throw std::invalid_argument("instance file: unknown group kind '" + group_tag + "'");
    }();

    CodeSpec code = [&] {
        if (code_tag == "goppa") {
            if (gamma_coeffs.empty()) throw std::invalid_argument("instance file: goppa kind needs gamma");
            return CodeSpec::goppa(*view, elems(support), Poly(*ctx, gamma_coeffs));
        }
        if (code_tag == "alternant") {
            if (degree < 0) throw std::invalid_argument("instance file: alternant kind needs degree");
            return CodeSpec::alternant(*view, elems(support), elems(multiplier), degree);
        }
        throw std::invalid_argument("instance file: unknown code kind '" + code_tag + "'");
    }();

    return Instance{std::move(code), std::move(group), multd, seed};
}

/// One row of a verification report.
struct ReportRow {
    std::string digest;
    std::string family;     // qc | qd | qm
    std::string code_kind;  // alternant | goppa
    int p = 0, m = 0;
    uint32_t q = 0;
    int group_order = 1;
    int n = 0, k = 0, n2 = 0, k2 = 0;
    int deg_in = 0, deg_out = 0;
    bool verdict = false;
    std::string note;
    double millis = 0;
};

inline ReportRow make_row(const Instance& inst, const FoldReport& rep) {
    ReportRow row;
    row.digest = instance_digest(inst);
    row.family = family_tag(inst.group);
    row.code_kind = inst.code.kind == CodeSpec::Kind::Goppa ? "goppa" : "alternant";
    row.p = inst.code.view.f->p;
    row.m = inst.code.view.f->m;
    row.q = inst.code.view.q;
    row.group_order = inst.group.order;
    row.n = rep.n;
    row.k = rep.k;
    row.n2 = rep.n2;
    row.k2 = rep.k2;
    row.deg_in = rep.deg_in;
    row.deg_out = rep.deg_out;
    row.verdict = rep.verdict;
    row.note = rep.note;
    row.millis = rep.millis;
    return row;
}

inline std::string csv_header(bool timing) {
    std::string h = "digest,family,kind,p,m,q,group_order,n,k,n_folded,k_folded,degree_in,degree_out,verdict,note";
    if (timing) h += ",millis";
    return h + "\n";
}

inline std::string csv_row(const ReportRow& r, bool timing) {
    std::ostringstream out;
    out << r.digest << "," << r.family << "," << r.code_kind << "," << r.p << "," << r.m << "," << r.q << ","
        << r.group_order << "," << r.n << "," << r.k << "," << r.n2 << "," << r.k2 << "," << r.deg_in << ","
        << r.deg_out << "," << (r.verdict ? "true" : "false") << "," << r.note;
    if (timing) out << "," << r.millis;
    out << "\n";
    return out.str();
}

/// Single-instance report (fold / verify commands).
inline std::string serialize_report(const ReportRow& row, const FoldReport& rep, bool timing) {
    std::ostringstream out;
    out << "goppafold report v1\n";
    out << "instance " << row.digest << "\n";
    out << "family " << row.family << " " << row.code_kind << "\n";
    out << "field " << row.p << " " << row.m << "\n";
    out << "group_order " << row.group_order << "\n";
    out << "params " << row.n << " " << row.k << " -> " << row.n2 << " " << row.k2 << "\n";
    out << "degree " << row.deg_in << " -> " << row.deg_out << "\n";
    out << "verdict " << (row.verdict ? "true" : "false") << "\n";
    if (!row.note.empty()) out << "note " << row.note << "\n";
    if (row.verdict) {
        out << "predicted_support";
        for (const Fe& x : rep.x2) out << " " << x.v;
        out << "\n";
        if (rep.gamma2) {
            out << "predicted_gamma";
            for (uint32_t c : rep.gamma2->coeffs()) out << " " << c;
            out << "\n";
        } else {
            out << "predicted_multiplier";
            for (const Fe& y : rep.y2) out << " " << y.v;
            out << "\n";
        }
    }
    if (timing) out << "millis " << row.millis << "\n";
    out << "end goppafold report\n";
    return out.str();
}

/// Aggregate report (sweep command): rows sorted by digest plus a summary.
inline std::string serialize_sweep_report(std::vector<ReportRow> rows, bool timing) {
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.digest < b.digest; });
    size_t pass = 0;
    for (const auto& r : rows) pass += r.verdict ? 1 : 0;
    std::ostringstream out;
    out << "goppafold report v1\n";
    out << "columns " << csv_header(timing);
    for (const auto& r : rows) out << "row " << csv_row(r, timing);
    out << "summary total " << rows.size() << " pass " << pass << " fail " << rows.size() - pass << "\n";
    out << "end goppafold report\n";
    return out.str();
}

inline std::string serialize_sweep_csv(std::vector<ReportRow> rows, bool timing) {
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.digest < b.digest; });
    std::string out = csv_header(timing);
    for (const auto& r : rows) out += csv_row(r, timing);
    return out;
}

}  // namespace goppafold
