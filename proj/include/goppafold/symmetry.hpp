#pragma once

// Supports, multipliers and Goppa polynomials with affine-induced
// automorphism groups: cyclic (a single map z -> a*z + b) and elementary
// abelian (a set of F_p-independent shifts), plus the induced position
// permutations and orbit machinery.

#include <set>

#include "goppafold/codes.hpp"
#include "goppafold/invariant.hpp"

namespace goppafold {

/// Deterministic helper RNG.  Wraps splitmix64 so that identical seeds give
/// identical streams on every platform (std::uniform_int_distribution is
/// implementation-defined and would break byte-identical reruns).
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    Fe nonzero(const FieldCtx& f) { return Fe(f, 1 + static_cast<uint32_t>(below(f.size - 1))); }
    Fe any(const FieldCtx& f) { return Fe(f, static_cast<uint32_t>(below(f.size))); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

  private:
    uint64_t state_;
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Position permutation induced by an affine map on a globally invariant
/// support: sigma(i) is the unique index with x_{sigma(i)} = a x_i + b.
struct InducedPermutation {
    Perm perm;
    AffineMap map;

    int order() const { return perm.order(); }
};

inline InducedPermutation induced_permutation(const std::vector<Fe>& x, const AffineMap& phi) {
    if (x.empty()) throw std::invalid_argument("induced_permutation: empty support");
    if (x[0].f != &phi.ctx()) throw std::invalid_argument("induced_permutation: context mismatch");
    std::map<uint32_t, int> index;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!index.emplace(x[i].v, static_cast<int>(i)).second)
            throw std::invalid_argument("induced_permutation: support entries must be distinct");
    }
    std::vector<int> m(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        auto it = index.find(phi(x[i]).v);
        if (it == index.end())
            throw std::invalid_argument("induced_permutation: support is not globally invariant");
        m[i] = it->second;
    }
    return {Perm(std::move(m)), phi};
}

/// Orbits of the group generated by a set of permutations, each orbit listed
/// in increasing index order with the smallest member as representative, and
/// orbits ordered by representative.  group_order is the size of the
/// generated permutation group (needed for the literal orbit-sum fold, which
/// weights each orbit member |G| / |orbit| times).
struct OrbitPartition {
    std::vector<std::vector<int>> orbits;
    int group_order = 1;
    int n = 0;

    int count() const { return static_cast<int>(orbits.size()); }
    int rep(int j) const { return orbits[j].front(); }

    int orbit_of(int i) const {
        for (size_t j = 0; j < orbits.size(); ++j)
            if (std::binary_search(orbits[j].begin(), orbits[j].end(), i)) return static_cast<int>(j);
        throw std::logic_error("OrbitPartition: index out of range");
    }

    bool all_full() const {
        return std::all_of(orbits.begin(), orbits.end(), [&](const std::vector<int>& o) {
            return static_cast<int>(o.size()) == group_order;
        });
    }
};

/// Enumerates the permutation group generated by `gens` (BFS closure).
inline std::vector<Perm> permutation_group(const std::vector<Perm>& gens, int n) {
    std::set<Perm> seen;
    std::vector<Perm> queue{Perm::identity(n)};
    seen.insert(queue[0]);
    for (size_t h = 0; h < queue.size(); ++h) {
        for (const Perm& g : gens) {
            if (g.size() != n) throw std::invalid_argument("permutation_group: size mismatch");
            Perm next = queue[h].then(g);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return queue;
}

inline OrbitPartition orbit_partition(const std::vector<Perm>& gens, int n) {
    OrbitPartition part;
    part.n = n;
    part.group_order = static_cast<int>(permutation_group(gens, n).size());
    std::vector<int> owner(n, -1);
    for (int i = 0; i < n; ++i) {
        if (owner[i] >= 0) continue;
        std::vector<int> orbit{i};
        owner[i] = static_cast<int>(part.orbits.size());
        for (size_t h = 0; h < orbit.size(); ++h) {
            for (const Perm& g : gens) {
                int j = g(orbit[h]);
                if (owner[j] < 0) {
                    owner[j] = owner[i];
                    orbit.push_back(j);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        part.orbits.push_back(std::move(orbit));
    }
    return part;
}

inline OrbitPartition orbit_partition(const std::vector<InducedPermutation>& gens, int n) {
    std::vector<Perm> ps;
    ps.reserve(gens.size());
    for (const auto& g : gens) ps.push_back(g.perm);
    return orbit_partition(ps, n);
}

/// Generator set of the affine automorphism group of an instance.
struct GroupSpec {
    enum class Kind { Cyclic, ElementaryAbelian };

    Kind kind;
    std::vector<AffineMap> gens;  ///< one map (cyclic) or the shifts z -> z + alpha_j
    int lambda = 1;               ///< number of generators
    int order = 1;                ///< group order: ell, or p^lambda

    static GroupSpec cyclic(const AffineMap& phi) {
        return GroupSpec{Kind::Cyclic, {phi}, 1, phi.order()};
    }
    static GroupSpec shifts(const std::vector<Fe>& alphas) {
        if (alphas.empty()) throw std::invalid_argument("GroupSpec: no shift amounts");
        const FieldCtx& f = *alphas[0].f;
        require_independent(alphas);
        std::vector<AffineMap> gens;
        gens.reserve(alphas.size());
        for (const Fe& a : alphas) gens.emplace_back(fe_one(f), a);
        int order = 1;
        for (size_t i = 0; i < alphas.size(); ++i) order *= f.p;
        return GroupSpec{Kind::ElementaryAbelian, std::move(gens), static_cast<int>(alphas.size()), order};
    }

    const FieldCtx& ctx() const { return gens[0].ctx(); }

    std::vector<Fe> shift_amounts() const {
        std::vector<Fe> a;
        for (const auto& g : gens) {
            if (!g.is_shift()) throw std::invalid_argument("GroupSpec: not a shift group");
            a.push_back(g.b());
        }
        return a;
    }

    /// All p^lambda sums of the shift amounts (the additive group G).
    std::vector<Fe> additive_group() const {
        const FieldCtx& f = ctx();
        std::vector<Fe> g{fe_zero(f)};
        for (const Fe& alpha : shift_amounts()) {
            std::vector<Fe> next;
            Fe step = fe_zero(f);
            for (int c = 0; c < f.p; ++c) {
                for (const Fe& e : g) next.push_back(e + step);
                step = step + alpha;
            }
            g = std::move(next);
        }
        return g;
    }

    std::vector<InducedPermutation> induced(const std::vector<Fe>& x) const {
        std::vector<InducedPermutation> ps;
        ps.reserve(gens.size());
        for (const auto& g : gens) ps.push_back(induced_permutation(x, g));
        return ps;
    }

    static void require_independent(const std::vector<Fe>& alphas) {
        const FieldCtx& f = *alphas[0].f;
        MatrixGF m(f, static_cast<int>(alphas.size()), f.m);
        for (size_t i = 0; i < alphas.size(); ++i) {
            if (alphas[i].f != &f) throw std::invalid_argument("GroupSpec: mixed contexts");
            auto dig = f.digits(alphas[i].v);
            for (int j = 0; j < f.m; ++j) m.set_raw(static_cast<int>(i), j, static_cast<uint32_t>(dig[j]));
        }
        if (m.rank() != static_cast<int>(alphas.size()))
            throw std::invalid_argument("GroupSpec: shift amounts are not F_p-independent");
    }
};

/// Orbits of an affine map phi acting on the field itself, fixed point
/// excluded, every orbit of full size ell.  Orbit values are listed in
/// application order u, phi(u), phi^2(u), ...; representatives are ordered
/// by packed index for reproducibility.
inline std::vector<std::vector<Fe>> affine_orbits(const FieldCtx& f, const AffineMap& phi) {
    const int ell = phi.order();
    auto fixed = phi.fixed_point();
    std::vector<bool> seen(f.size, false);
    if (fixed) seen[fixed->v] = true;
    std::vector<std::vector<Fe>> orbits;
    for (uint32_t v = 0; v < f.size; ++v) {
        if (seen[v]) continue;
        std::vector<Fe> orbit;
        Fe cur(f, v);
        for (int s = 0; s < ell; ++s) {
            orbit.push_back(cur);
            seen[cur.v] = true;
            cur = phi(cur);
        }
        if (cur.v != v) throw std::logic_error("affine_orbits: orbit does not close");
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/// A generated instance: the algebraic description plus its automorphism
/// group and, for cyclic alternant instances, the multiplier exponent d
/// (alpha = a^d) used to propagate the multiplier along orbits.
struct Instance {
    CodeSpec code;
    GroupSpec group;
    int qc_d = 0;
    uint64_t seed = 0;
};

/// Quasi-cyclic alternant instance: support = n0 full orbits of phi (fixed
/// point excluded), multiplier chosen freely on each orbit representative
/// and propagated by y_{sigma(i)} = a^d y_i.
inline Instance build_qc_instance(const SubfieldView& view, const AffineMap& phi, int n0, int t, int d,
                                  uint64_t seed) {
    const FieldCtx& f = *view.f;
    if (&phi.ctx() != &f) throw std::invalid_argument("build_qc_instance: context mismatch");
    const int ell = phi.order();
    if (d < 0 || d >= ell) throw std::invalid_argument("build_qc_instance: d out of range");
    if (phi.is_shift() && d != 0) throw std::invalid_argument("build_qc_instance: shifts force d = 0");
    if (t < 1) throw std::invalid_argument("build_qc_instance: degree must be positive");
    auto orbits = affine_orbits(f, phi);
    if (n0 < 1 || n0 > static_cast<int>(orbits.size()))
        throw std::invalid_argument("build_qc_instance: not enough full orbits in the field");
    Rng rng(seed);
    rng.shuffle(orbits);
    orbits.resize(n0);

    Fe alpha = phi.a().pow(d);
    std::vector<Fe> x, y;
    for (const auto& orbit : orbits) {
        Fe val = rng.nonzero(f);
        for (const Fe& pt : orbit) {
            x.push_back(pt);
            y.push_back(val);
            val = alpha * val;
        }
    }
    Instance inst{CodeSpec::alternant(view, std::move(x), std::move(y), t), GroupSpec::cyclic(phi), d, seed};
    return inst;
}

/// Quasi-cyclic Goppa instance with Gamma = build_invariant_poly(Q, phi, d);
/// support orbits are resampled (bounded retries) if Gamma vanishes on them.
inline Instance build_qc_goppa(const SubfieldView& view, const AffineMap& phi, int n0, const Poly& q, int d,
                               uint64_t seed, int max_retries = 32) {
    const FieldCtx& f = *view.f;
    if (&phi.ctx() != &f) throw std::invalid_argument("build_qc_goppa: context mismatch");
    if (q.is_zero()) throw std::invalid_argument("build_qc_goppa: zero Q polynomial");
    Poly gamma = build_invariant_poly(q, phi, d);
    auto all_orbits = affine_orbits(f, phi);
    if (n0 < 1 || n0 > static_cast<int>(all_orbits.size()))
        throw std::invalid_argument("build_qc_goppa: not enough full orbits in the field");
    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        auto orbits = all_orbits;
        rng.shuffle(orbits);
        orbits.resize(n0);
        std::vector<Fe> x;
        for (const auto& orbit : orbits)
            for (const Fe& pt : orbit) x.push_back(pt);
        bool ok = std::all_of(x.begin(), x.end(), [&](const Fe& xi) { return !gamma.eval(xi).is_zero(); });
        if (!ok) continue;
        return Instance{CodeSpec::goppa(view, std::move(x), gamma), GroupSpec::cyclic(phi), d, seed};
    }
    throw std::runtime_error("build_qc_goppa: Goppa polynomial vanishes on every sampled support");
}

/// Support of n0 contiguous cosets of the additive group G spanned by the
/// shift amounts: x_i = leader(i / |G|) + sum_j digit_j(i) * alpha_j with
/// base-p digits, so each block is globally invariant under every shift.
inline std::vector<Fe> build_qm_support(const std::vector<Fe>& alphas, const std::vector<Fe>& leaders) {
    if (alphas.empty() || leaders.empty()) throw std::invalid_argument("build_qm_support: empty input");
    GroupSpec group = GroupSpec::shifts(alphas);
    const FieldCtx& f = group.ctx();
    auto g = group.additive_group();
    // leaders must sit in pairwise distinct cosets of G
    std::set<uint32_t> used;
    for (const Fe& lead : leaders) {
        if (lead.f != &f) throw std::invalid_argument("build_qm_support: mixed contexts");
        for (const Fe& e : g) {
            if (!used.insert((lead + e).v).second)
                throw std::invalid_argument("build_qm_support: coset collision between leaders");
        }
    }
    const int p = f.p;
    const int lambda = static_cast<int>(alphas.size());
    std::vector<Fe> x;
    for (const Fe& lead : leaders) {
        int block = 1;
        for (int j = 0; j < lambda; ++j) block *= p;
        for (int off = 0; off < block; ++off) {
            Fe pt = lead;
            int t = off;
            for (int j = 0; j < lambda; ++j) {
                int digit = t % p;
                t /= p;
                for (int c = 0; c < digit; ++c) pt = pt + alphas[j];
            }
            x.push_back(pt);
        }
    }
    return x;
}

namespace detail {

inline std::vector<Fe> sample_coset_leaders(const GroupSpec& group, int n0, Rng& rng) {
    const FieldCtx& f = group.ctx();
    auto g = group.additive_group();
    // canonical coset representative: smallest packed value in the coset
    std::set<uint32_t> reps;
    for (uint32_t v = 0; v < f.size; ++v) {
        uint32_t best = v;
        for (const Fe& e : g) best = std::min(best, f.add(v, e.v));
        reps.insert(best);
    }
    std::vector<uint32_t> pool(reps.begin(), reps.end());
    if (n0 < 1 || n0 > static_cast<int>(pool.size()))
        throw std::invalid_argument("builder: not enough distinct cosets");
    rng.shuffle(pool);
    std::vector<Fe> leaders;
    for (int i = 0; i < n0; ++i) leaders.emplace_back(f, pool[i]);
    return leaders;
}

}  // namespace detail

/// Goppa instance with automorphism group (Z/pZ)^lambda: Gamma = Q(P(z))
/// where P(z) = prod_{g in G} (z - g).  The derived multiplier is constant
/// on G-cosets automatically since P (hence Gamma) is G-invariant.
inline Instance build_qm_goppa(const SubfieldView& view, const std::vector<Fe>& alphas, int n0, const Poly& q,
                               uint64_t seed, int max_retries = 32) {
    const FieldCtx& f = *view.f;
    if (q.is_zero()) throw std::invalid_argument("build_qm_goppa: zero Q polynomial");
    GroupSpec group = GroupSpec::shifts(alphas);
    Poly pg = Poly::constant(fe_one(f));
    for (const Fe& e : group.additive_group()) pg = pg * Poly::linear_root(e);
    Poly gamma = q.compose(pg);
    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        auto leaders = detail::sample_coset_leaders(group, n0, rng);
        std::vector<Fe> x = build_qm_support(alphas, leaders);
        bool ok = std::all_of(x.begin(), x.end(), [&](const Fe& xi) { return !gamma.eval(xi).is_zero(); });
        if (!ok) continue;
        return Instance{CodeSpec::goppa(view, std::move(x), gamma), group, 0, seed};
    }
    throw std::runtime_error("build_qm_goppa: Goppa polynomial vanishes on every sampled support");
}

/// Alternant instance with automorphism group (Z/pZ)^lambda: multiplier
/// constant on the cosets of G.  With strict_iff the sampled per-coset
/// values are additionally kept pairwise distinct, so equality of
/// multiplier entries happens exactly on cosets.
inline Instance build_qm_alternant(const SubfieldView& view, const std::vector<Fe>& alphas, int n0, int r,
                                   uint64_t seed, bool strict_iff = false) {
    const FieldCtx& f = *view.f;
    if (r < 1) throw std::invalid_argument("build_qm_alternant: degree must be positive");
    GroupSpec group = GroupSpec::shifts(alphas);
    Rng rng(seed);
    auto leaders = detail::sample_coset_leaders(group, n0, rng);
    std::vector<Fe> x = build_qm_support(alphas, leaders);
    const int block = group.order;
    std::vector<Fe> vals;
    std::set<uint32_t> used;
    for (int c = 0; c < n0; ++c) {
        Fe v = rng.nonzero(f);
        if (strict_iff) {
            int guard = 0;
            while (!used.insert(v.v).second) {
                v = rng.nonzero(f);
                if (++guard > 4 * static_cast<int>(f.size))
                    throw std::runtime_error("build_qm_alternant: cannot sample distinct coset values");
            }
        }
        vals.push_back(v);
    }
    std::vector<Fe> y;
    for (int c = 0; c < n0; ++c)
        for (int i = 0; i < block; ++i) y.push_back(vals[c]);
    return Instance{CodeSpec::alternant(view, std::move(x), std::move(y), r), group, 0, seed};
}

/// True iff sigma maps the code onto itself.
inline bool check_automorphism(const LinearCode& c, const Perm& sigma) {
    return permute_code(c, sigma) == c;
}
inline bool check_automorphism(const LinearCode& c, const InducedPermutation& sigma) {
    return check_automorphism(c, sigma.perm);
}

/// Searches for a generator matrix of C whose row set is closed under every
/// permutation in `group`, with all row orbits free (size = |group|).  This
/// is the hypothesis of the folding dimension law.  Greedy: try orbits of
/// candidate codewords, keeping an orbit only when it adds exactly |group|
/// independent rows.  Returns nullopt when the search stalls.
inline std::optional<MatrixGF> symmetric_generator(const LinearCode& c, const std::vector<Perm>& gens,
                                                   uint64_t seed = 1) {
    const FieldCtx& f = *c.field().f;
    auto group = permutation_group(gens, c.length());
    const int gsize = static_cast<int>(group.size());
    if (c.dim() % gsize != 0) return std::nullopt;

    std::vector<std::vector<uint32_t>> accepted;
    MatrixGF accum(f, 0, c.length());
    int rank = 0;

    auto try_orbit = [&](const std::vector<uint32_t>& w) {
        std::set<std::vector<uint32_t>> orbit;
        for (const Perm& g : group) {
            std::vector<uint32_t> img(w.size());
            for (size_t i = 0; i < w.size(); ++i) img[i] = w[g(static_cast<int>(i))];
            orbit.insert(std::move(img));
        }
        if (static_cast<int>(orbit.size()) != gsize) return false;
        MatrixGF trial(f, rank + gsize, c.length());
        int idx = 0;
        for (const auto& row : accepted) {
            for (int j = 0; j < c.length(); ++j) trial.set_raw(idx, j, row[j]);
            ++idx;
        }
        for (const auto& row : orbit) {
            for (int j = 0; j < c.length(); ++j) trial.set_raw(idx, j, row[j]);
            ++idx;
        }
        if (trial.rank() != rank + gsize) return false;
        for (const auto& row : orbit) accepted.push_back(row);
        rank += gsize;
        return true;
    };

    for (int r = 0; r < c.dim() && rank < c.dim(); ++r) try_orbit(c.gen().row(r));
    Rng rng(seed);
    int budget = 64 * std::max(1, c.dim());
    while (rank < c.dim() && budget-- > 0) {
        // random combination of generator rows
        std::vector<uint32_t> w(c.length(), 0);
        for (int r = 0; r < c.dim(); ++r) {
            uint32_t coef = static_cast<uint32_t>(rng.below(f.size));
            if (coef == 0) continue;
            for (int j = 0; j < c.length(); ++j) w[j] = f.add(w[j], f.mul(coef, c.gen().raw(r, j)));
        }
        try_orbit(w);
    }
    if (rank != c.dim()) return std::nullopt;
    MatrixGF out(f, c.dim(), c.length());
    for (int r = 0; r < c.dim(); ++r)
        for (int j = 0; j < c.length(); ++j) out.set_raw(r, j, accepted[r][j]);
    return out;
}

/// Verifies that the row set of `m` is closed under every permutation in
/// `gens` (rows permuted by sigma are again rows).
inline bool row_set_closed(const MatrixGF& m, const std::vector<Perm>& gens) {
    std::set<std::vector<uint32_t>> rows;
    for (int r = 0; r < m.rows(); ++r) rows.insert(m.row(r));
    for (const Perm& g : gens) {
        for (const auto& row : rows) {
            std::vector<uint32_t> img(row.size());
            for (size_t i = 0; i < row.size(); ++i) img[i] = row[g(static_cast<int>(i))];
            if (!rows.count(img)) return false;
        }
    }
    return true;
}

}  // namespace goppafold
