#pragma once

// Polynomials invariant under an affine map: the functional equation
// G(a*z + b) = alpha * G(z), its single generator, the symmetrizing sum
// operator, and constructive decomposition of invariant polynomials.

#include "goppafold/poly.hpp"

namespace goppafold {

/// Monic generator R of the ring of sigma-invariant polynomials:
/// z^l - b^{l-1} z for a shift (l = p), (z - z0)^l otherwise.
inline Poly invariant_generator(const AffineMap& sigma) {
    const FieldCtx& f = sigma.ctx();
    const int ell = sigma.order();
    if (sigma.is_shift()) {
        Poly r = Poly::monomial(f, ell);
        Fe blp = sigma.b().pow(ell - 1);
        return r - blp * Poly::monomial(f, 1);
    }
    return Poly::linear_root(*sigma.fixed_point()).pow(ell);
}

/// True iff G(sigma(z)) = alpha * G(z) as polynomials.
inline bool check_functional_eq(const Poly& gamma, const AffineMap& sigma, const Fe& alpha) {
    if (alpha.f != &gamma.ctx()) throw std::invalid_argument("check_functional_eq: mixed contexts");
    return gamma.compose(sigma.as_poly()) == alpha * gamma;
}

/// The unique alpha with G(sigma(z)) = alpha * G(z), if one exists.
/// The candidate comes from the leading coefficients: the top coefficient of
/// G(a*z+b) is lead(G) * a^deg, so alpha must equal a^deg.
inline std::optional<Fe> solve_alpha(const Poly& gamma, const AffineMap& sigma) {
    if (gamma.is_zero()) throw std::invalid_argument("solve_alpha: zero polynomial");
    Fe cand = sigma.a().pow(gamma.degree());
    if (check_functional_eq(gamma, sigma, cand)) return cand;
    return std::nullopt;
}

/// G = Q(z^p - b^{p-1} z) for a shift (d must be 0), otherwise
/// G = (z - z0)^d * Q((z - z0)^l); satisfies the functional equation with
/// alpha = a^d.
inline Poly build_invariant_poly(const Poly& q, const AffineMap& sigma, int d) {
    if (&q.ctx() != &sigma.ctx()) throw std::invalid_argument("build_invariant_poly: mixed contexts");
    const int ell = sigma.order();
    if (d < 0 || d >= ell) throw std::invalid_argument("build_invariant_poly: d out of range");
    if (sigma.is_shift()) {
        if (d != 0) throw std::invalid_argument("build_invariant_poly: shifts force d = 0");
        return q.compose(invariant_generator(sigma));
    }
    Poly centered = Poly::linear_root(*sigma.fixed_point());
    return centered.pow(d) * q.compose(centered.pow(ell));
}

/// Inverse of build_invariant_poly: recovers (d, Q) from an invariant
/// polynomial by stripping the (z - z0)^d factor and then repeatedly
/// dividing by the generator, collecting the constant remainders.
/// Requires the functional equation to hold for the given alpha.
inline std::pair<int, Poly> decompose_invariant(const Poly& poly, const AffineMap& sigma, const Fe& alpha) {
    if (!check_functional_eq(poly, sigma, alpha))
        throw std::invalid_argument("decompose_invariant: polynomial is not invariant for this alpha");
    const FieldCtx& f = poly.ctx();
    const int ell = sigma.order();
    int d = 0;
    Poly body = poly;
    if (!sigma.is_shift()) {
        d = discrete_log_in_cyclic(alpha, sigma.a(), ell);
        if (d > 0 && !poly.is_zero()) {
            auto [quot, rem] = divmod(poly, Poly::linear_root(*sigma.fixed_point()).pow(d));
            if (!rem.is_zero()) throw std::logic_error("decompose_invariant: missing zero at the fixed point");
            body = quot;
        }
    } else if (!alpha.is_one()) {
        throw std::invalid_argument("decompose_invariant: shifts force alpha = 1");
    }
    Poly r = invariant_generator(sigma);
    std::vector<uint32_t> qc;
    while (!body.is_zero()) {
        auto [quot, rem] = divmod(body, r);
        if (rem.degree() > 0) throw std::logic_error("decompose_invariant: non-constant remainder");
        qc.push_back(rem.coeff_raw(0));
        body = quot;
    }
    return {d, Poly(f, std::move(qc))};
}

/// The sum S(P) = sum_{i<l} alpha^i P(sigma^i(z)) with alpha = a^d.
/// The result satisfies S(P)(sigma(z)) = (1/alpha) S(P)(z); note the
/// inverse, which is why the orbit-sum weight a^d pairs with polynomials
/// whose own functional-equation exponent is -d mod l.
inline Poly symmetrize(const Poly& poly, const AffineMap& sigma, int d) {
    if (&poly.ctx() != &sigma.ctx()) throw std::invalid_argument("symmetrize: mixed contexts");
    const FieldCtx& f = poly.ctx();
    const int ell = sigma.order();
    if (d < 0 || d >= ell) throw std::invalid_argument("symmetrize: d out of range");
    if (sigma.is_shift() && d != 0) throw std::invalid_argument("symmetrize: shifts force d = 0");
    Fe alpha = sigma.a().pow(d);
    Poly acc(f);
    Fe w = fe_one(f);
    Poly iter = Poly::monomial(f, 1);  // sigma^i as a linear polynomial
    for (int i = 0; i < ell; ++i) {
        acc += w * poly.compose(iter);
        w = w * alpha;
        iter = sigma.as_poly().compose(iter);
    }
    return acc;
}

/// The space I^{sigma,alpha}_{<=t} of invariant polynomials of degree <= t.
struct InvariantSpaceSpec {
    AffineMap sigma;
    Fe alpha;
    int t;

    InvariantSpaceSpec(AffineMap s, Fe al, int bound) : sigma(std::move(s)), alpha(al), t(bound) {
        if (alpha.f != &sigma.ctx()) throw std::invalid_argument("InvariantSpaceSpec: mixed contexts");
        if (sigma.is_shift()) {
            if (!alpha.is_one()) throw std::invalid_argument("InvariantSpaceSpec: shifts force alpha = 1");
        } else {
            discrete_log_in_cyclic(alpha, sigma.a(), sigma.order());  // throws if alpha not in <a>
        }
    }
};

/// Basis {build_invariant_poly(w^k, sigma, d)} of I^{sigma,alpha}_{<=t}.
/// Dimension floor(t/p)+1 for shifts, floor((t-d)/l)+1 when t >= d otherwise,
/// and the empty list when t < 0 (convention: that space is {0}).
inline std::vector<Poly> invariant_space_basis(const InvariantSpaceSpec& spec) {
    const FieldCtx& f = spec.sigma.ctx();
    const int ell = spec.sigma.order();
    int d = spec.sigma.is_shift() ? 0 : discrete_log_in_cyclic(spec.alpha, spec.sigma.a(), ell);
    std::vector<Poly> basis;
    for (int k = 0; d + k * ell <= spec.t; ++k) {
        basis.push_back(build_invariant_poly(Poly::monomial(f, k), spec.sigma, d));
    }
    return basis;
}

/// 1^k + 2^k + ... + (p-1)^k mod p: equals p-1 (= -1) when (p-1) | k and
/// 0 otherwise.  (k = 0 counts p-1 ones.)
inline int power_sum_residue(int p, long long k) {
    if (!detail::is_prime(p)) throw std::invalid_argument("power_sum_residue: p must be prime");
    if (k < 0) throw std::invalid_argument("power_sum_residue: k must be nonnegative");
    return (k % (p - 1) == 0) ? p - 1 : 0;
}

}  // namespace goppafold
