#pragma once

// Dense polynomials over a FieldCtx and affine maps z -> a*z + b.

#include <optional>

#include "goppafold/field.hpp"

namespace goppafold {

/// Dense polynomial, coefficient i belongs to z^i.  Normalized so the top
/// coefficient of a nonzero polynomial is nonzero; the zero polynomial has
/// degree -1 (stand-in for "minus infinity").
class Poly {
  public:
    explicit Poly(const FieldCtx& ctx) : f_(&ctx) {}
    Poly(const FieldCtx& ctx, std::vector<uint32_t> coeffs) : f_(&ctx), c_(std::move(coeffs)) {
        for (uint32_t v : c_)
            if (v >= ctx.size) throw std::invalid_argument("Poly: coefficient out of range");
        normalize();
    }

    static Poly zero(const FieldCtx& ctx) { return Poly(ctx); }
    static Poly constant(const Fe& c) { return Poly(*c.f, {c.v}); }
    static Poly monomial(const FieldCtx& ctx, int k, uint32_t coeff = 1) {
        if (k < 0) throw std::invalid_argument("Poly: negative monomial degree");
        std::vector<uint32_t> c(k + 1, 0);
        c[k] = coeff;
        return Poly(ctx, std::move(c));
    }
    /// z - c
    static Poly linear_root(const Fe& c) { return Poly(*c.f, {c.f->neg(c.v), 1}); }

    const FieldCtx& ctx() const { return *f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    uint32_t coeff_raw(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
    }
    Fe coeff(int i) const { return Fe(*f_, coeff_raw(i)); }
    Fe lead() const {
        if (c_.empty()) throw std::invalid_argument("Poly: leading coefficient of zero");
        return Fe(*f_, c_.back());
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check(b);
        std::vector<uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.f_->add(a.coeff_raw(i), b.coeff_raw(i));
        return Poly(*a.f_, std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check(b);
        std::vector<uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.f_->sub(a.coeff_raw(i), b.coeff_raw(i));
        return Poly(*a.f_, std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Poly(*a.f_);
        std::vector<uint32_t> r(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = a.f_->add(r[i + j], a.f_->mul(a.c_[i], b.c_[j]));
        }
        return Poly(*a.f_, std::move(r));
    }
    friend Poly operator*(const Fe& s, const Poly& a) {
        if (s.f != a.f_) throw std::invalid_argument("Poly: mixed contexts");
        std::vector<uint32_t> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.f_->mul(s.v, a.c_[i]);
        return Poly(*a.f_, std::move(r));
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        a.check(b);
        if (b.is_zero()) throw std::invalid_argument("Poly: division by zero polynomial");
        Poly rem = a, quot(*a.f_);
        std::vector<uint32_t> q(std::max(0, a.degree() - b.degree() + 1), 0);
        uint32_t invlead = a.f_->inv(b.c_.back());
        while (rem.degree() >= b.degree()) {
            int shift = rem.degree() - b.degree();
            uint32_t c = a.f_->mul(rem.c_.back(), invlead);
            q[shift] = c;
            for (int i = 0; i <= b.degree(); ++i)
                rem.c_[i + shift] = a.f_->sub(rem.c_[i + shift], a.f_->mul(c, b.c_[i]));
            rem.normalize();
        }
        return {Poly(*a.f_, std::move(q)), rem};
    }

    Fe eval(const Fe& x) const {
        if (x.f != f_) throw std::invalid_argument("Poly: mixed contexts");
        uint32_t acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x.v), c_[i]);
        return Fe(*f_, acc);
    }

    /// P(Q(z))
    Poly compose(const Poly& inner) const {
        check(inner);
        Poly acc(*f_);
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * inner;
            acc += Poly::constant(Fe(*f_, c_[i]));
        }
        return acc;
    }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("Poly: negative power");
        Poly r = Poly::constant(fe_one(*f_)), base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    Poly monic() const {
        if (is_zero()) throw std::invalid_argument("Poly: cannot normalize zero");
        return Fe(*f_, f_->inv(c_.back())) * *this;
    }

  private:
    const FieldCtx* f_;
    std::vector<uint32_t> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const Poly& o) const {
        if (f_ != o.f_) throw std::invalid_argument("Poly: mixed contexts");
    }
};

/// The affine map z -> a*z + b with a != 0, excluding the identity.  Its
/// order under composition is the characteristic p when a = 1 (then b != 0
/// and there is no fixed point) and the multiplicative order of a otherwise
/// (with fixed point z0 = b / (1 - a)).
class AffineMap {
  public:
    AffineMap(const Fe& a, const Fe& b) : a_(a), b_(b) {
        check_ctx(a, b);
        if (a.is_zero()) throw std::invalid_argument("AffineMap: a must be nonzero");
        if (a.is_one() && b.is_zero()) throw std::invalid_argument("AffineMap: identity map excluded");
        order_ = a.is_one() ? a.f->p : element_order(a);
    }

    const FieldCtx& ctx() const { return *a_.f; }
    const Fe& a() const { return a_; }
    const Fe& b() const { return b_; }
    bool is_shift() const { return a_.is_one(); }
    int order() const { return order_; }

    std::optional<Fe> fixed_point() const {
        if (is_shift()) return std::nullopt;
        return b_ / (fe_one(*a_.f) - a_);
    }

    Fe operator()(const Fe& z) const { return a_ * z + b_; }

    /// Coefficients (a^s, b_s) of the s-fold composition.
    std::pair<Fe, Fe> power_coeffs(int s) const {
        Fe pa = fe_one(*a_.f), pb = fe_zero(*a_.f);
        for (int i = 0; i < s; ++i) {
            pa = a_ * pa;
            pb = a_ * pb + b_;
        }
        return {pa, pb};
    }

    /// The map as a degree-1 polynomial, for composition with Poly.
    Poly as_poly() const { return Poly(*a_.f, {b_.v, a_.v}); }

  private:
    Fe a_, b_;
    int order_;
};

}  // namespace goppafold
