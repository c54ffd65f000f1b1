#pragma once

// Exact arithmetic in GF(p^m) with a runtime-chosen irreducible modulus.
// Elements are packed as integers: the residue polynomial c0 + c1*z + ...
// over GF(p) becomes the index c0 + c1*p + c2*p^2 + ...  This packing is
// also the on-disk encoding used by the instance file format.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace goppafold {

namespace detail {

// Polynomial helpers over GF(p), coefficients as ints in [0,p), little-endian.
using PVec = std::vector<int>;

inline void ptrim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int pdeg(const PVec& a) { return static_cast<int>(a.size()) - 1; }

inline PVec pmul(const PVec& a, const PVec& b, int p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

inline PVec pmod(PVec a, const PVec& f, int p) {
    ptrim(a);
    const int df = pdeg(f);
    int invlead = 1;  // callers pass monic f
    while (pdeg(a) >= df) {
        int shift = pdeg(a) - df;
        int c = a.back() * invlead % p;
        for (int i = 0; i <= df; ++i) {
            a[i + shift] = ((a[i + shift] - c * f[i]) % p + p) % p;
        }
        ptrim(a);
    }
    return a;
}

inline PVec ppowmod(PVec base, long long e, const PVec& f, int p) {
    PVec r{1};
    base = pmod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) r = pmod(pmul(r, base, p), f, p);
        base = pmod(pmul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline PVec pgcd(PVec a, PVec b, int p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // make b monic before reduction
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (b.back() * t % p == 1) { inv = t; break; }
        PVec bm = b;
        for (auto& c : bm) c = c * inv % p;
        a = pmod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// f monic of degree m over GF(p): irreducible iff gcd(f, z^{p^k} - z) = 1
// for every k <= m/2 (a reducible f must have a factor of degree <= m/2).
inline bool irreducible(const PVec& f, int p) {
    const int m = pdeg(f);
    if (m <= 0) return false;
    if (m == 1) return true;
    PVec zp{0, 1};  // running z^{p^k} mod f
    for (int k = 1; k <= m / 2; ++k) {
        zp = ppowmod(zp, p, f, p);
        PVec diff = zp;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        ptrim(diff);
        PVec g = pgcd(f, diff, p);
        if (pdeg(g) != 0) return false;
    }
    return true;
}

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace detail

/// Immutable context for GF(p^m).  Obtain instances through FieldCtx::get();
/// contexts are interned, so pointer equality decides field identity and
/// repeated calls with the same parameters return the same object.
class FieldCtx {
  public:
    int p;                     ///< prime characteristic
    int m;                     ///< absolute extension degree over GF(p)
    uint32_t size;             ///< p^m
    std::vector<int> modulus;  ///< monic irreducible, m+1 coefficients, little-endian

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    /// Interned accessor.  When `modulus` is empty the lexicographically
    /// smallest monic irreducible (by packed integer value of the non-leading
    /// coefficients) is selected, so runs are reproducible.
    static const FieldCtx& get(int p, int m, std::vector<int> modulus = {}) {
        if (!detail::is_prime(p)) throw std::invalid_argument("FieldCtx: p must be prime");
        if (m < 1) throw std::invalid_argument("FieldCtx: extension degree must be >= 1");
        {
            double bits = m * std::log2(static_cast<double>(p));
            if (bits > 28) throw std::invalid_argument("FieldCtx: field too large (> 2^28)");
        }
        if (modulus.empty()) {
            modulus = find_modulus(p, m);
        } else {
            detail::ptrim(modulus);
            if (detail::pdeg(modulus) != m) throw std::invalid_argument("FieldCtx: modulus degree mismatch");
            if (modulus.back() != 1) throw std::invalid_argument("FieldCtx: modulus must be monic");
            for (int c : modulus)
                if (c < 0 || c >= p) throw std::invalid_argument("FieldCtx: modulus coefficients out of range");
            if (!detail::irreducible(modulus, p)) throw std::invalid_argument("FieldCtx: modulus is reducible");
        }
        std::lock_guard<std::mutex> lk(registry_mutex());
        auto& reg = registry();
        Key key{p, m, modulus};
        auto it = reg.find(key);
        if (it == reg.end()) it = reg.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(p, m, modulus))).first;
        return *it->second;
    }

    // --- element codec -----------------------------------------------------

    std::vector<int> digits(uint32_t v) const {
        std::vector<int> d(m, 0);
        for (int i = 0; i < m; ++i) {
            d[i] = static_cast<int>(v % p);
            v /= p;
        }
        return d;
    }

    uint32_t pack(const std::vector<int>& d) const {
        uint64_t v = 0;
        for (size_t i = d.size(); i-- > 0;) v = v * p + (d[i] % p + p) % p;
        if (v >= size) throw std::invalid_argument("FieldCtx: element index out of range");
        return static_cast<uint32_t>(v);
    }

    // --- arithmetic on packed indices --------------------------------------

    uint32_t add(uint32_t a, uint32_t b) const {
        if (p == 2) return a ^ b;
        uint32_t r = 0, mul = 1;
        for (int i = 0; i < m; ++i) {
            uint32_t da = a % p, db = b % p;
            r += (da + db) % p * mul;
            a /= p;
            b /= p;
            mul *= p;
        }
        return r;
    }

    uint32_t neg(uint32_t a) const {
        if (p == 2) return a;
        uint32_t r = 0, mul = 1;
        for (int i = 0; i < m; ++i) {
            uint32_t da = a % p;
            r += (p - da) % p * mul;
            a /= p;
            mul *= p;
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables()) {
            uint64_t e = static_cast<uint64_t>(log_[a]) + log_[b];
            uint32_t n = size - 1;
            return exp_[e >= n ? e - n : e];
        }
        return mul_slow(a, b);
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::invalid_argument("FieldCtx: inverse of zero");
        if (has_tables()) {
            uint32_t n = size - 1;
            return exp_[(n - log_[a]) % n];
        }
        return pow(a, static_cast<long long>(size) - 2);
    }

    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    uint32_t pow(uint32_t a, long long e) const {
        if (a == 0) {
            if (e > 0) return 0;
            if (e == 0) return 1;
            throw std::invalid_argument("FieldCtx: zero to a negative power");
        }
        long long n = size - 1;
        long long r = e % n;
        if (r < 0) r += n;
        if (has_tables()) {
            return exp_[static_cast<uint64_t>(log_[a]) * r % n];
        }
        uint32_t res = 1, base = a;
        while (r > 0) {
            if (r & 1) res = mul_slow(res, base);
            base = mul_slow(base, base);
            r >>= 1;
        }
        return res;
    }

    uint32_t frobenius(uint32_t a) const { return pow(a, p); }

    /// Smallest multiplicative order ell with a^ell = 1; a must be nonzero.
    int order(uint32_t a) const {
        if (a == 0) throw std::invalid_argument("FieldCtx: order of zero");
        uint32_t n = size - 1;
        if (n == 0 || a == 1) return 1;
        if (has_tables()) {
            return static_cast<int>(n / std::gcd(n, log_[a]));
        }
        uint32_t ord = n;
        for (uint32_t f : detail::prime_factors(n)) {
            while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
        }
        return static_cast<int>(ord);
    }

    /// A fixed multiplicative generator (smallest packed index that is
    /// primitive); keys the log/antilog tables.
    uint32_t generator() const { return gen_; }

    bool has_tables() const { return !exp_.empty(); }

  private:
    std::vector<uint32_t> exp_, log_;
    uint32_t gen_ = 1;

    static constexpr uint32_t kTableLimit = 1u << 20;

    struct Key {
        int p, m;
        std::vector<int> mod;
        bool operator<(const Key& o) const {
            return std::tie(p, m, mod) < std::tie(o.p, o.m, o.mod);
        }
    };

    static std::map<Key, std::unique_ptr<FieldCtx>>& registry() {
        static std::map<Key, std::unique_ptr<FieldCtx>> r;
        return r;
    }
    static std::mutex& registry_mutex() {
        static std::mutex mx;
        return mx;
    }

    static std::vector<int> find_modulus(int p, int m) {
        // candidates enumerated by packed value of the low m coefficients
        uint64_t count = 1;
        for (int i = 0; i < m; ++i) count *= p;
        for (uint64_t v = 0; v < count; ++v) {
            std::vector<int> f(m + 1, 0);
            uint64_t t = v;
            for (int i = 0; i < m; ++i) {
                f[i] = static_cast<int>(t % p);
                t /= p;
            }
            f[m] = 1;
            if (detail::irreducible(f, p)) return f;
        }
        throw std::logic_error("FieldCtx: no irreducible polynomial found");  // unreachable
    }

    FieldCtx(int p_, int m_, std::vector<int> mod) : p(p_), m(m_), modulus(std::move(mod)) {
        uint64_t s = 1;
        for (int i = 0; i < m; ++i) s *= p;
        size = static_cast<uint32_t>(s);
        if (size <= kTableLimit) build_tables();
    }

    uint32_t mul_slow(uint32_t a, uint32_t b) const {
        detail::PVec pa, pb;
        for (uint32_t t = a; t; t /= p) pa.push_back(static_cast<int>(t % p));
        for (uint32_t t = b; t; t /= p) pb.push_back(static_cast<int>(t % p));
        detail::PVec r = detail::pmod(detail::pmul(pa, pb, p), modulus, p);
        uint64_t v = 0;
        for (size_t i = r.size(); i-- > 0;) v = v * p + r[i];
        return static_cast<uint32_t>(v);
    }

    void build_tables() {
        uint32_t n = size - 1;
        if (n == 0) return;
        auto factors = detail::prime_factors(n);
        auto slow_pow = [&](uint32_t a, uint32_t e) {
            uint32_t res = 1, base = a;
            while (e > 0) {
                if (e & 1) res = mul_slow(res, base);
                base = mul_slow(base, base);
                e >>= 1;
            }
            return res;
        };
        gen_ = 1;
        for (uint32_t c = 1; c < size; ++c) {
            bool primitive = true;
            for (uint32_t f : factors) {
                if (slow_pow(c, n / f) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen_ = c;
                break;
            }
        }
        exp_.assign(n, 0);
        log_.assign(size, 0);
        uint32_t acc = 1;
        for (uint32_t i = 0; i < n; ++i) {
            exp_[i] = acc;
            log_[acc] = i;
            acc = mul_slow(acc, gen_);
        }
        if (acc != 1) throw std::logic_error("FieldCtx: generator order mismatch");
    }
};

/// Value type for one element of a FieldCtx.
struct Fe {
    const FieldCtx* f = nullptr;
    uint32_t v = 0;

    Fe() = default;
    Fe(const FieldCtx& ctx, uint32_t val) : f(&ctx), v(val) {
        if (val >= ctx.size) throw std::invalid_argument("Fe: index out of range");
    }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }

    friend void check_ctx(const Fe& a, const Fe& b) {
        if (a.f != b.f) throw std::invalid_argument("Fe: mixed field contexts");
    }

    friend Fe operator+(const Fe& a, const Fe& b) {
        check_ctx(a, b);
        return {*a.f, a.f->add(a.v, b.v)};
    }
    friend Fe operator-(const Fe& a, const Fe& b) {
        check_ctx(a, b);
        return {*a.f, a.f->sub(a.v, b.v)};
    }
    friend Fe operator*(const Fe& a, const Fe& b) {
        check_ctx(a, b);
        return {*a.f, a.f->mul(a.v, b.v)};
    }
    friend Fe operator/(const Fe& a, const Fe& b) {
        check_ctx(a, b);
        return {*a.f, a.f->div(a.v, b.v)};
    }
    Fe operator-() const { return {*f, f->neg(v)}; }
    Fe inv() const { return {*f, f->inv(v)}; }
    Fe pow(long long e) const { return {*f, f->pow(v, e)}; }

    Fe& operator+=(const Fe& o) { return *this = *this + o; }
    Fe& operator-=(const Fe& o) { return *this = *this - o; }
    Fe& operator*=(const Fe& o) { return *this = *this * o; }

    friend bool operator==(const Fe& a, const Fe& b) { return a.f == b.f && a.v == b.v; }
    friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
};

inline Fe fe(const FieldCtx& f, uint32_t v) { return Fe(f, v); }
inline Fe fe_zero(const FieldCtx& f) { return Fe(f, 0); }
inline Fe fe_one(const FieldCtx& f) { return Fe(f, 1); }

/// Multiplicative order of a nonzero element.
inline int element_order(const Fe& z) {
    return z.f->order(z.v);
}

/// The unique d in [0, ell) with a^d = alpha, where ell is the order of a.
/// Throws when alpha does not lie in the cyclic group generated by a.
inline int discrete_log_in_cyclic(const Fe& alpha, const Fe& a, int ell) {
    check_ctx(alpha, a);
    if (alpha.is_zero() || a.is_zero()) throw std::invalid_argument("discrete log of/in zero");
    Fe acc = fe_one(*a.f);
    for (int d = 0; d < ell; ++d) {
        if (acc == alpha) return d;
        acc = acc * a;
    }
    throw std::invalid_argument("element is not a power of the given base");
}

/// View of the subfield GF(q) with q = p^s inside GF(p^m), realized as the
/// fixed field of w -> w^q.  Carries a canonical GF(p)-basis of the subfield
/// (for constraint expansion) and a GF(q)-basis of the big field (for trace
/// spans).  m here is the relative degree, so q^m = p^{m_abs}.
struct SubfieldView {
    const FieldCtx* f = nullptr;
    int s = 0;        ///< q = p^s
    uint32_t q = 0;   ///< subfield size
    int m = 0;        ///< relative extension degree, s*m = m_abs
    std::vector<uint32_t> basis;      ///< GF(p)-basis of GF(q), s packed elements
    std::vector<uint32_t> ext_basis;  ///< GF(q)-basis of GF(q^m), m packed elements

    bool in_subfield(uint32_t x) const { return f->pow(x, q) == x; }
    bool contains(const Fe& x) const { return x.f == f && in_subfield(x.v); }

    /// Relative trace tr(z) = z + z^q + ... + z^{q^{m-1}}; lands in GF(q).
    uint32_t trace(uint32_t x) const {
        uint32_t acc = 0, t = x;
        for (int i = 0; i < m; ++i) {
            acc = f->add(acc, t);
            t = f->pow(t, q);
        }
        return acc;
    }
    Fe trace(const Fe& x) const {
        if (x.f != f) throw std::invalid_argument("trace: wrong context");
        return Fe(*f, trace(x.v));
    }

    friend bool operator==(const SubfieldView& a, const SubfieldView& b) {
        return a.f == b.f && a.s == b.s;
    }
    friend bool operator!=(const SubfieldView& a, const SubfieldView& b) { return !(a == b); }
};

/// Builds the view of GF(p^s) inside ctx; s must divide the absolute degree.
inline SubfieldView subfield(const FieldCtx& ctx, int s) {
    if (s < 1 || ctx.m % s != 0) throw std::invalid_argument("subfield: degree must divide the extension degree");
    SubfieldView view;
    view.f = &ctx;
    view.s = s;
    uint64_t q = 1;
    for (int i = 0; i < s; ++i) q *= ctx.p;
    view.q = static_cast<uint32_t>(q);
    view.m = ctx.m / s;

    // Solve w^q - w = 0 as a GF(p)-linear system on digit vectors.
    const int n = ctx.m;
    const int p = ctx.p;
    std::vector<std::vector<int>> col(n);
    for (int j = 0; j < n; ++j) {
        uint32_t ej = 1;
        for (int i = 0; i < j; ++i) ej *= p;  // monomial z^j
        uint32_t w = ctx.sub(ctx.pow(ej, view.q), ej);
        col[j] = ctx.digits(w);
    }
    // Gaussian elimination over GF(p) on the n x n matrix A[i][j] = col[j][i].
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = col[j][i];
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int pr = -1;
        for (int i = r; i < n; ++i)
            if (a[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (a[r][c] * t % p == 1) { inv = t; break; }
        for (int j = 0; j < n; ++j) a[r][j] = a[r][j] * inv % p;
        for (int i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            int fct = a[i][c];
            for (int j = 0; j < n; ++j) a[i][j] = ((a[i][j] - fct * a[r][j]) % p + p) % p;
        }
        pivot_col.push_back(c);
        ++r;
    }
    // kernel basis, one vector per free column, then canonicalized by the
    // echelon structure (free columns in increasing order)
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<int> vdig(n, 0);
        vdig[fc] = 1;
        for (size_t k = 0; k < pivot_col.size(); ++k) {
            vdig[pivot_col[k]] = (p - a[k][fc] % p) % p;
        }
        view.basis.push_back(ctx.pack(vdig));
    }
    if (static_cast<int>(view.basis.size()) != s)
        throw std::logic_error("subfield: unexpected fixed-field dimension");

    // GF(q)-basis of the big field: powers of the multiplicative generator.
    uint32_t g = ctx.generator();
    uint32_t acc = 1;
    for (int i = 0; i < view.m; ++i) {
        view.ext_basis.push_back(acc);
        acc = ctx.mul(acc, g);
    }
    return view;
}

inline SubfieldView prime_view(const FieldCtx& ctx) { return subfield(ctx, 1); }
inline SubfieldView whole_view(const FieldCtx& ctx) { return subfield(ctx, ctx.m); }

}  // namespace goppafold
