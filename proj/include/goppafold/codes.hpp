#pragma once

// Linear codes over GF(q) in canonical RREF generator form, plus the
// evaluation-code constructors: GRS codes over the extension field and
// their subfield subcodes (alternant codes, Goppa codes), duals, trace
// codes, and position permutations.

#include "goppafold/matrix.hpp"
#include "goppafold/poly.hpp"

namespace goppafold {

/// Permutation of code positions; maps position i to sigma(i).
struct Perm {
    std::vector<int> map;

    Perm() = default;
    explicit Perm(std::vector<int> m) : map(std::move(m)) {
        std::vector<bool> seen(map.size(), false);
        for (int v : map) {
            if (v < 0 || v >= static_cast<int>(map.size()) || seen[v])
                throw std::invalid_argument("Perm: not a bijection");
            seen[v] = true;
        }
    }
    static Perm identity(int n) {
        std::vector<int> m(n);
        for (int i = 0; i < n; ++i) m[i] = i;
        return Perm(std::move(m));
    }

    int size() const { return static_cast<int>(map.size()); }
    int operator()(int i) const { return map[i]; }

    Perm then(const Perm& other) const {  // (this; then other): i -> other(this(i))
        if (size() != other.size()) throw std::invalid_argument("Perm: size mismatch");
        std::vector<int> m(map.size());
        for (size_t i = 0; i < map.size(); ++i) m[i] = other.map[map[i]];
        return Perm(std::move(m));
    }

    bool is_identity() const {
        for (size_t i = 0; i < map.size(); ++i)
            if (map[i] != static_cast<int>(i)) return false;
        return true;
    }

    int order() const {
        long long ord = 1;
        std::vector<bool> seen(map.size(), false);
        for (size_t i = 0; i < map.size(); ++i) {
            if (seen[i]) continue;
            long long len = 0;
            int j = static_cast<int>(i);
            while (!seen[j]) {
                seen[j] = true;
                j = map[j];
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return static_cast<int>(ord);
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.map == b.map; }
    friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }
    bool operator<(const Perm& o) const { return map < o.map; }
};

/// A subspace of GF(q)^n held as a canonical reduced-row-echelon generator
/// matrix (entries live in the subfield of the ambient FieldCtx given by the
/// view).  RREF is unique per row space, so operator== decides code equality.
class LinearCode {
  public:
    LinearCode(SubfieldView view, const MatrixGF& rows) : view_(std::move(view)), g_(rows.ctx(), 0, 0) {
        if (&rows.ctx() != view_.f) throw std::invalid_argument("LinearCode: matrix context mismatch");
        // checked before reduction: row reduction would normalize pivots and
        // could mask entries outside the base field
        for (int i = 0; i < rows.rows(); ++i)
            for (int j = 0; j < rows.cols(); ++j)
                if (!view_.in_subfield(rows.raw(i, j)))
                    throw std::invalid_argument("LinearCode: generator entry outside the base field");
        g_ = rows.row_basis();
        pivots_ = pivot_columns(g_);
    }

    static LinearCode zero(const SubfieldView& view, int n) {
        return LinearCode(view, MatrixGF(*view.f, 0, n));
    }
    static LinearCode full(const SubfieldView& view, int n) {
        return LinearCode(view, MatrixGF::identity(*view.f, n));
    }

    const SubfieldView& field() const { return view_; }
    const MatrixGF& gen() const { return g_; }
    int length() const { return g_.cols(); }
    int dim() const { return g_.rows(); }

    LinearCode dual() const { return LinearCode(view_, g_.kernel()); }

    /// The code {c^sigma : c in C} with (c^sigma)_i = c_{sigma(i)}.
    LinearCode permuted(const Perm& sigma) const {
        if (sigma.size() != length()) throw std::invalid_argument("LinearCode: permutation length mismatch");
        MatrixGF m(*view_.f, g_.rows(), g_.cols());
        for (int r = 0; r < g_.rows(); ++r)
            for (int c = 0; c < g_.cols(); ++c) m.set_raw(r, c, g_.raw(r, sigma(c)));
        return LinearCode(view_, m);
    }

    bool contains(const std::vector<uint32_t>& word) const {
        if (static_cast<int>(word.size()) != length()) throw std::invalid_argument("LinearCode: word length mismatch");
        return g_.reduces_to_zero(word, pivots_);
    }
    bool contains(const LinearCode& sub) const {
        if (sub.length() != length()) return false;
        for (int r = 0; r < sub.g_.rows(); ++r)
            if (!contains(sub.g_.row(r))) return false;
        return true;
    }

    friend bool operator==(const LinearCode& a, const LinearCode& b) {
        return a.view_ == b.view_ && a.g_ == b.g_;
    }
    friend bool operator!=(const LinearCode& a, const LinearCode& b) { return !(a == b); }

  private:
    SubfieldView view_;
    MatrixGF g_;
    std::vector<int> pivots_;

    static std::vector<int> pivot_columns(const MatrixGF& g) {
        std::vector<int> piv;
        int c = 0;
        for (int r = 0; r < g.rows(); ++r) {
            while (c < g.cols() && g.raw(r, c) == 0) ++c;
            if (c == g.cols()) break;
            piv.push_back(c++);
        }
        return piv;
    }
};

inline bool code_equal(const LinearCode& a, const LinearCode& b) {
    if (a.field().f != b.field().f || a.field() != b.field())
        throw std::invalid_argument("code_equal: field mismatch");
    if (a.length() != b.length()) throw std::invalid_argument("code_equal: length mismatch");
    return a == b;
}

inline LinearCode permute_code(const LinearCode& c, const Perm& sigma) { return c.permuted(sigma); }

namespace detail {

inline void validate_support_multiplier(const std::vector<Fe>& x, const std::vector<Fe>& y) {
    if (x.empty()) throw std::invalid_argument("code: empty support");
    if (x.size() != y.size()) throw std::invalid_argument("code: support/multiplier size mismatch");
    const FieldCtx* f = x[0].f;
    for (const Fe& e : x)
        if (e.f != f) throw std::invalid_argument("code: mixed contexts in support");
    for (const Fe& e : y) {
        if (e.f != f) throw std::invalid_argument("code: mixed contexts in multiplier");
        if (e.is_zero()) throw std::invalid_argument("code: multiplier entries must be nonzero");
    }
    std::vector<uint32_t> sorted;
    sorted.reserve(x.size());
    for (const Fe& e : x) sorted.push_back(e.v);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("code: support entries must be pairwise distinct");
}

}  // namespace detail

/// GRS_k(x, y) = {(y_j P(x_j))_j : deg P < k} over the full extension field.
/// Generator rows are (y_j x_j^i) for i < k; the dimension is min(k, n).
inline LinearCode grs_code(int k, const std::vector<Fe>& x, const std::vector<Fe>& y) {
    detail::validate_support_multiplier(x, y);
    if (k < 0) k = 0;
    const FieldCtx& f = *x[0].f;
    const int n = static_cast<int>(x.size());
    MatrixGF g(f, k, n);
    std::vector<uint32_t> pw(n);
    for (int j = 0; j < n; ++j) pw[j] = y[j].v;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) {
            g.set_raw(i, j, pw[j]);
            pw[j] = f.mul(pw[j], x[j].v);
        }
    }
    return LinearCode(whole_view(f), g);
}

/// Closed form for the dual multiplier of Proposition-style GRS duality:
/// GRS_k(x,y)^perp = GRS_{n-k}(x,z) with z_i = 1 / (y_i prod_{j!=i}(x_i - x_j)).
inline std::vector<Fe> grs_dual_multiplier(int k, const std::vector<Fe>& x, const std::vector<Fe>& y) {
    detail::validate_support_multiplier(x, y);
    const int n = static_cast<int>(x.size());
    if (k < 1 || k >= n) throw std::invalid_argument("grs_dual_multiplier: need 1 <= k < n");
    const FieldCtx& f = *x[0].f;
    std::vector<Fe> z;
    z.reserve(n);
    for (int i = 0; i < n; ++i) {
        Fe prod = fe_one(f);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = prod * (x[i] - x[j]);
        }
        z.push_back((y[i] * prod).inv());
    }
    return z;
}

/// {c in GF(q)^n : M c^T = 0}: the right kernel of M intersected with the
/// subfield, computed by expanding each extension-field equation into
/// GF(p)-equations on the subfield coordinates of the unknowns.
inline LinearCode subfield_kernel(const MatrixGF& m, const SubfieldView& view) {
    const FieldCtx& f = m.ctx();
    if (view.f != &f) throw std::invalid_argument("subfield_kernel: context mismatch");
    const int n = m.cols();
    const int s = view.s;
    const int md = f.m;
    MatrixGF a(f, m.rows() * md, n * s);
    for (int r = 0; r < m.rows(); ++r) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < s; ++j) {
                uint32_t e = f.mul(m.raw(r, i), view.basis[j]);
                std::vector<int> dig = f.digits(e);
                for (int k = 0; k < md; ++k) a.set_raw(r * md + k, i * s + j, static_cast<uint32_t>(dig[k]));
            }
        }
    }
    MatrixGF ker = a.kernel();  // GF(p) coefficients
    MatrixGF rows(f, ker.rows(), n);
    for (int r = 0; r < ker.rows(); ++r) {
        for (int i = 0; i < n; ++i) {
            uint32_t acc = 0;
            for (int j = 0; j < s; ++j) acc = f.add(acc, f.mul(ker.raw(r, i * s + j), view.basis[j]));
            rows.set_raw(r, i, acc);
        }
    }
    return LinearCode(view, rows);
}

/// Subfield subcode C ∩ GF(q)^n of a code over the extension field.
inline LinearCode subfield_subcode(const LinearCode& c, const SubfieldView& view) {
    return subfield_kernel(c.gen().kernel(), view);
}

/// GF(q)-span of the coordinate-wise relative traces of codewords.
inline LinearCode trace_code(const LinearCode& c, const SubfieldView& view) {
    const FieldCtx& f = *view.f;
    if (c.field().f != &f) throw std::invalid_argument("trace_code: context mismatch");
    MatrixGF rows(f, c.dim() * view.m, c.length());
    for (int r = 0; r < c.dim(); ++r) {
        for (int i = 0; i < view.m; ++i) {
            for (int j = 0; j < c.length(); ++j) {
                uint32_t v = f.mul(view.ext_basis[i], c.gen().raw(r, j));
                rows.set_raw(r * view.m + i, j, view.trace(v));
            }
        }
    }
    return LinearCode(view, rows);
}

/// Alternant code A_r(x, y) over GF(q): the subfield subcode of the dual of
/// GRS_r(x, y).  Degree r <= 0 yields the full space (no constraints).
inline LinearCode alternant_code(int r, const std::vector<Fe>& x, const std::vector<Fe>& y,
                                 const SubfieldView& view) {
    detail::validate_support_multiplier(x, y);
    if (x[0].f != view.f) throw std::invalid_argument("alternant_code: context mismatch");
    const int n = static_cast<int>(x.size());
    if (r <= 0) return LinearCode::full(view, n);
    return subfield_kernel(grs_code(r, x, y).gen(), view);
}

/// Dual of the alternant code, computed independently as the trace code of
/// GRS_r(x, y).  Degree r <= 0 yields the zero code.
inline LinearCode alternant_dual(int r, const std::vector<Fe>& x, const std::vector<Fe>& y,
                                 const SubfieldView& view) {
    detail::validate_support_multiplier(x, y);
    if (x[0].f != view.f) throw std::invalid_argument("alternant_dual: context mismatch");
    const int n = static_cast<int>(x.size());
    if (r <= 0) return LinearCode::zero(view, n);
    return trace_code(grs_code(r, x, y), view);
}

inline std::vector<Fe> goppa_multiplier(const std::vector<Fe>& x, const Poly& gamma) {
    std::vector<Fe> y;
    y.reserve(x.size());
    for (const Fe& xi : x) {
        Fe g = gamma.eval(xi);
        if (g.is_zero()) throw std::invalid_argument("goppa: polynomial vanishes on a support point");
        y.push_back(g.inv());
    }
    return y;
}

/// Goppa code G(x, Gamma) = A_{deg Gamma}(x, (1/Gamma(x_i))_i).
inline LinearCode goppa_code(const std::vector<Fe>& x, const Poly& gamma, const SubfieldView& view) {
    if (gamma.is_zero()) throw std::invalid_argument("goppa: zero polynomial");
    return alternant_code(gamma.degree(), x, goppa_multiplier(x, gamma), view);
}

inline LinearCode goppa_dual(const std::vector<Fe>& x, const Poly& gamma, const SubfieldView& view) {
    if (gamma.is_zero()) throw std::invalid_argument("goppa: zero polynomial");
    return alternant_dual(gamma.degree(), x, goppa_multiplier(x, gamma), view);
}

/// Algebraic description from which codes are expanded.
struct CodeSpec {
    enum class Kind { GRS, Alternant, Goppa };

    Kind kind;
    SubfieldView view;       ///< base field GF(q) and relative degree m
    std::vector<Fe> x;       ///< support, pairwise distinct
    std::vector<Fe> y;       ///< multiplier (empty for Goppa: derived from gamma)
    Poly gamma;              ///< Goppa polynomial (Goppa kind only)
    int degree;              ///< r / t (= deg gamma for Goppa)

    static CodeSpec alternant(SubfieldView view, std::vector<Fe> x, std::vector<Fe> y, int t) {
        detail::validate_support_multiplier(x, y);
        const FieldCtx& f = *view.f;
        return CodeSpec{Kind::Alternant, std::move(view), std::move(x), std::move(y), Poly(f), t};
    }
    static CodeSpec goppa(SubfieldView view, std::vector<Fe> x, Poly gamma) {
        if (gamma.is_zero()) throw std::invalid_argument("CodeSpec: zero Goppa polynomial");
        int t = gamma.degree();
        auto y = goppa_multiplier(x, gamma);  // validates non-vanishing
        detail::validate_support_multiplier(x, y);
        return CodeSpec{Kind::Goppa, std::move(view), std::move(x), {}, std::move(gamma), t};
    }

    int length() const { return static_cast<int>(x.size()); }

    std::vector<Fe> multiplier() const {
        return kind == Kind::Goppa ? goppa_multiplier(x, gamma) : y;
    }

    LinearCode expand() const {
        switch (kind) {
            case Kind::GRS: return grs_code(degree, x, y);
            case Kind::Alternant: return alternant_code(degree, x, y, view);
            case Kind::Goppa: return goppa_code(x, gamma, view);
        }
        throw std::logic_error("CodeSpec: bad kind");
    }

    LinearCode expand_dual() const {
        switch (kind) {
            case Kind::GRS: return grs_code(degree, x, y).dual();
            case Kind::Alternant: return alternant_dual(degree, x, y, view);
            case Kind::Goppa: return goppa_dual(x, gamma, view);
        }
        throw std::logic_error("CodeSpec: bad kind");
    }
};

}  // namespace goppafold
