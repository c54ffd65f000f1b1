#pragma once

// Campaign driver: enumerates a deterministic grid of symmetric-code
// instances, builds and verifies each one, and collects report rows.
// Per-instance seeds follow a counter scheme (splitmix64(base_seed + index)
// over the fixed enumeration order), so results do not depend on how the
// work is scheduled across threads.

#include <atomic>
#include <thread>

#include "goppafold/io.hpp"

namespace goppafold {

enum class Family { QcAlternant, QcGoppa, QmAlternant, QmGoppa };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::QcAlternant: return "qc-alternant";
        case Family::QcGoppa: return "qc-goppa";
        case Family::QmAlternant: return "qm-alternant";
        case Family::QmGoppa: return "qm-goppa";
    }
    return "?";
}

/// One grid cell, fully described by scalars so the enumeration order (and
/// hence every derived seed) is reproducible.
struct PendingInstance {
    int p = 2, m = 4;
    Family family = Family::QcAlternant;
    int ell = 2;     // qc: group order (ell == p means a shift map)
    int d = 0;       // qc alternant multiplier exponent
    int t = 1;       // alternant degree
    int degq = 1;    // goppa: degree of Q
    int lambda = 1;  // qm: number of shift generators
    uint64_t seed = 0;
};

struct SweepSpec {
    std::vector<std::pair<int, int>> fields = {{2, 4}, {2, 6}, {3, 3}};
    std::vector<Family> families = {Family::QcAlternant};
    std::vector<int> ells = {2, 3, 5, 7};
    std::vector<int> degqs = {1, 2};
    int lambda_max = 2;
    int n_max = 256;
    int trials = 1;
    uint64_t seed = 1;
    double corrupt = 0.0;  ///< fraction of instances corrupted before verification
};

namespace detail {

inline int pow_int(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace detail

/// Deterministic grid enumeration.  Cells that cannot produce a valid
/// instance (group order not available in the field, not enough orbits or
/// cosets) are skipped here, so every emitted cell builds successfully.
inline std::vector<PendingInstance> enumerate_grid(const SweepSpec& spec) {
    std::vector<PendingInstance> cells;
    uint64_t counter = 0;
    auto push = [&](PendingInstance c) {
        c.seed = splitmix64(spec.seed + counter++);
        cells.push_back(c);
    };
    for (auto [p, m] : spec.fields) {
        long long size = 1;
        for (int i = 0; i < m; ++i) size *= p;
        for (Family fam : spec.families) {
            bool qc = fam == Family::QcAlternant || fam == Family::QcGoppa;
            bool goppa = fam == Family::QcGoppa || fam == Family::QmGoppa;
            if (qc) {
                for (int ell : spec.ells) {
                    bool shift = ell == p;
                    if (!shift && (size - 1) % ell != 0) continue;  // no element of that order
                    long long avail = (size - (shift ? 0 : 1)) / ell;
                    if (avail < 1) continue;
                    for (int trial = 0; trial < spec.trials; ++trial) {
                        if (goppa) {
                            for (int degq : spec.degqs) {
                                for (int d = 0; d < (shift ? 1 : ell); ++d) {
                                    PendingInstance c;
                                    c.p = p;
                                    c.m = m;
                                    c.family = fam;
                                    c.ell = ell;
                                    c.d = d;
                                    c.degq = degq;
                                    push(c);
                                }
                            }
                        } else {
                            for (int d = 0; d < (shift ? 1 : ell); ++d) {
                                for (int t = 1; t <= 3 * ell; ++t) {
                                    PendingInstance c;
                                    c.p = p;
                                    c.m = m;
                                    c.family = fam;
                                    c.ell = ell;
                                    c.d = d;
                                    c.t = t;
                                    push(c);
                                }
                            }
                        }
                    }
                }
            } else {
                for (int lambda = 1; lambda <= std::min(spec.lambda_max, m); ++lambda) {
                    int block = detail::pow_int(p, lambda);
                    if (size / block < 2) continue;  // want at least two cosets
                    for (int trial = 0; trial < spec.trials; ++trial) {
                        if (goppa) {
                            for (int degq : spec.degqs) {
                                PendingInstance c;
                                c.p = p;
                                c.m = m;
                                c.family = fam;
                                c.lambda = lambda;
                                c.degq = degq;
                                push(c);
                            }
                        } else {
                            for (int t = 1; t <= 2 * block; ++t) {
                                PendingInstance c;
                                c.p = p;
                                c.m = m;
                                c.family = fam;
                                c.lambda = lambda;
                                c.t = t;
                                push(c);
                            }
                        }
                    }
                }
            }
        }
    }
    return cells;
}

/// Materializes one cell into an instance.  All random choices (map
/// coefficients, orbit/coset selection, multipliers, Q coefficients) come
/// from the cell seed.
inline Instance build_pending(const PendingInstance& cell, int n_max = 256) {
    const FieldCtx& f = FieldCtx::get(cell.p, cell.m);
    SubfieldView view = prime_view(f);
    Rng rng(splitmix64(cell.seed));
    const bool qc = cell.family == Family::QcAlternant || cell.family == Family::QcGoppa;
    if (qc) {
        const bool shift = cell.ell == cell.p;
        AffineMap phi = [&] {
            if (shift) return AffineMap(fe_one(f), rng.nonzero(f));
            Fe g = fe(f, f.generator());
            Fe a = g.pow((f.size - 1) / cell.ell);
            return AffineMap(a, rng.any(f));
        }();
        long long avail = (f.size - (shift ? 0 : 1)) / cell.ell;
        long long cap = std::min<long long>(avail, std::max(1, n_max / cell.ell));
        int n0 = static_cast<int>(1 + rng.below(cap));
        if (cap >= 2 && n0 < 2) n0 = 2;
        if (cell.family == Family::QcGoppa) {
            // resample Q if the induced Goppa polynomial vanishes on every
            // candidate support (possible in very small fields)
            for (int attempt = 0;; ++attempt) {
                std::vector<uint32_t> qc_coeffs(cell.degq + 1, 0);
                for (int i = 0; i < cell.degq; ++i) qc_coeffs[i] = rng.any(f).v;
                qc_coeffs[cell.degq] = rng.nonzero(f).v;
                try {
                    return build_qc_goppa(view, phi, n0, Poly(f, qc_coeffs), cell.d, rng.next());
                } catch (const std::runtime_error&) {
                    if (attempt >= 16) throw;
                }
            }
        }
        return build_qc_instance(view, phi, n0, cell.t, cell.d, rng.next());
    }
    // elementary abelian shifts
    std::vector<Fe> alphas;
    {
        int guard = 0;
        while (static_cast<int>(alphas.size()) < cell.lambda) {
            alphas.push_back(rng.nonzero(f));
            try {
                GroupSpec::require_independent(alphas);
            } catch (const std::exception&) {
                alphas.pop_back();
            }
            if (++guard > 10000) throw std::runtime_error("build_pending: cannot sample independent shifts");
        }
    }
    int block = detail::pow_int(cell.p, cell.lambda);
    long long cosets = f.size / block;
    long long cap = std::min<long long>(cosets, std::max(1, n_max / block));
    int n0 = static_cast<int>(1 + rng.below(cap));
    if (cap >= 2 && n0 < 2) n0 = 2;
    if (cell.family == Family::QmGoppa) {
        for (int attempt = 0;; ++attempt) {
            std::vector<uint32_t> qcoeffs(cell.degq + 1, 0);
            for (int i = 0; i < cell.degq; ++i) qcoeffs[i] = rng.any(f).v;
            qcoeffs[cell.degq] = rng.nonzero(f).v;
            try {
                return build_qm_goppa(view, alphas, n0, Poly(f, qcoeffs), rng.next());
            } catch (const std::runtime_error&) {
                if (attempt >= 16) throw;
            }
        }
    }
    return build_qm_alternant(view, alphas, n0, cell.t, rng.next());
}

/// Replaces one support point with a fresh field element.  The support is
/// then no longer a union of orbits (removing a point from a size >= 2
/// orbit cannot be repaired by adding an outside point), so verification
/// must report a precondition failure.  Returns false when the support
/// already covers the whole field.
inline bool corrupt_instance(Instance& inst) {
    const FieldCtx& f = *inst.code.view.f;
    std::vector<bool> used(f.size, false);
    for (const Fe& xi : inst.code.x) used[xi.v] = true;
    for (uint32_t v = 0; v < f.size; ++v) {
        if (!used[v]) {
            inst.code.x[0] = Fe(f, v);
            return true;
        }
    }
    return false;
}

struct SweepResult {
    std::vector<ReportRow> rows;
    size_t pass = 0;
    size_t fail = 0;
    size_t corrupted = 0;

    bool all_pass() const { return fail == 0; }
};

/// Runs a list of cells across `jobs` worker threads.  Workers share only
/// interned immutable field contexts; every cell is a pure function of its
/// seed, and rows land at their cell's index, so the outcome is identical
/// for any job count.
inline SweepResult run_cells(const std::vector<PendingInstance>& cells, int jobs, int n_max = 256,
                             double corrupt_rate = 0.0) {
    if (jobs < 1) jobs = 1;
    // touch every field context up front: interning mutates a shared registry
    for (const auto& c : cells) subfield(FieldCtx::get(c.p, c.m), 1);
    std::vector<ReportRow> rows(cells.size());
    std::vector<char> corrupted(cells.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            ReportRow row;
            try {
                Instance inst = build_pending(cells[i], n_max);
                if (corrupt_rate > 0) {
                    Rng draw(splitmix64(cells[i].seed ^ 0xC0FFEEull));
                    bool hit = corrupt_rate >= 1.0 ||
                               (draw.next() >> 11) < static_cast<uint64_t>(corrupt_rate * 9007199254740992.0);
                    if (hit && corrupt_instance(inst)) corrupted[i] = 1;
                }
                FoldReport rep = verify_instance(inst);
                row = make_row(inst, rep);
                if (corrupted[i]) row.note = "injected-corruption " + row.note;
            } catch (const std::exception& e) {
                row.digest = hex16(fnv1a64("cell" + std::to_string(i)));
                row.family = family_name(cells[i].family);
                row.verdict = false;
                row.note = e.what();
            }
            rows[i] = std::move(row);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    SweepResult res;
    res.rows = std::move(rows);
    for (const auto& r : res.rows) (r.verdict ? res.pass : res.fail) += 1;
    for (char c : corrupted) res.corrupted += c;
    return res;
}

inline SweepResult run_sweep(const SweepSpec& spec, int jobs) {
    return run_cells(enumerate_grid(spec), jobs, spec.n_max, spec.corrupt);
}

}  // namespace goppafold
