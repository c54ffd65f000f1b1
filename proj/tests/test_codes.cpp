#include <gtest/gtest.h>

#include "goppafold/codes.hpp"
#include "goppafold/symmetry.hpp"

using namespace goppafold;

namespace {

std::vector<Fe> random_support(const FieldCtx& f, int n, Rng& rng) {
    std::vector<uint32_t> pool(f.size);
    for (uint32_t v = 0; v < f.size; ++v) pool[v] = v;
    rng.shuffle(pool);
    std::vector<Fe> x;
    for (int i = 0; i < n; ++i) x.emplace_back(f, pool[i]);
    return x;
}

std::vector<Fe> random_multiplier(const FieldCtx& f, int n, Rng& rng) {
    std::vector<Fe> y;
    for (int i = 0; i < n; ++i) y.push_back(rng.nonzero(f));
    return y;
}

}  // namespace

TEST(Matrix, KernelExamples) {
    const FieldCtx& f2 = FieldCtx::get(2, 1);
    EXPECT_EQ(MatrixGF::identity(f2, 3).kernel().rows(), 0);

    MatrixGF m(f2, 1, 2);
    m.set_raw(0, 0, 1);
    m.set_raw(0, 1, 1);
    MatrixGF k = m.kernel();
    ASSERT_EQ(k.rows(), 1);
    EXPECT_EQ(k.raw(0, 0), 1u);
    EXPECT_EQ(k.raw(0, 1), 1u);

    const FieldCtx& f4 = FieldCtx::get(2, 2);
    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        MatrixGF r(f4, 5, 9);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 9; ++j) r.set_raw(i, j, rng.any(f4).v);
        MatrixGF ker = r.kernel();
        EXPECT_EQ(r.rank() + ker.rows(), 9);
        EXPECT_TRUE((r * ker.transpose()).is_zero());
    }
}

TEST(Matrix, RrefIsCanonical) {
    const FieldCtx& f = FieldCtx::get(3, 2);
    Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        MatrixGF m(f, 4, 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) m.set_raw(i, j, rng.any(f).v);
        MatrixGF b = m.row_basis();
        EXPECT_EQ(b.row_basis(), b);
        // scrambling the rows leaves the canonical basis unchanged
        MatrixGF scr(f, 4, 6);
        std::vector<int> order{2, 0, 3, 1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) scr.set_raw(i, j, m.raw(order[i], j));
        EXPECT_EQ(scr.row_basis(), b);
    }
}

TEST(Grs, ExamplesAndRank) {
    const FieldCtx& f4 = FieldCtx::get(2, 2);
    std::vector<Fe> x{fe(f4, 0), fe(f4, 1), fe(f4, 2)};
    std::vector<Fe> y{fe_one(f4), fe_one(f4), fe_one(f4)};

    LinearCode c1 = grs_code(1, x, y);
    EXPECT_EQ(c1.dim(), 1);
    EXPECT_TRUE(c1.contains({1, 1, 1}));

    LinearCode c2 = grs_code(2, x, y);
    EXPECT_EQ(c2.dim(), 2);
    EXPECT_TRUE(c2.contains({1, 1, 1}));
    EXPECT_TRUE(c2.contains({0, 1, 2}));  // (y_j x_j)

    // dimension via the rank oracle across parameters
    const FieldCtx& f = FieldCtx::get(3, 2);
    Rng rng(7);
    for (int k = 0; k <= 10; ++k) {
        auto xs = random_support(f, 8, rng);
        auto ys = random_multiplier(f, 8, rng);
        EXPECT_EQ(grs_code(k, xs, ys).dim(), std::min(k, 8));
    }
    EXPECT_THROW(grs_code(2, std::vector<Fe>{fe(f4, 1), fe(f4, 1)}, std::vector<Fe>{fe_one(f4), fe_one(f4)}),
                 std::invalid_argument);
    EXPECT_THROW(grs_code(1, x, std::vector<Fe>{fe(f4, 0), fe(f4, 1), fe(f4, 1)}), std::invalid_argument);
}

TEST(Grs, DualMultiplierClosedFormAgainstKernel) {
    const FieldCtx& f2 = FieldCtx::get(2, 1);
    std::vector<Fe> x{fe(f2, 0), fe(f2, 1)}, y{fe_one(f2), fe_one(f2)};
    auto z = grs_dual_multiplier(1, x, y);
    EXPECT_EQ(z[0], fe_one(f2));
    EXPECT_EQ(z[1], fe_one(f2));

    for (auto [p, m] : {std::pair{2, 4}, {3, 3}}) {
        const FieldCtx& f = FieldCtx::get(p, m);
        Rng rng(11);
        for (int it = 0; it < 30; ++it) {
            int n = 3 + static_cast<int>(rng.below(8));
            int k = 1 + static_cast<int>(rng.below(n - 1));
            auto xs = random_support(f, n, rng);
            auto ys = random_multiplier(f, n, rng);
            auto zs = grs_dual_multiplier(k, xs, ys);
            LinearCode grs = grs_code(k, xs, ys);
            LinearCode dual_closed = grs_code(n - k, xs, zs);
            EXPECT_TRUE((grs.gen() * dual_closed.gen().transpose()).is_zero());
            EXPECT_EQ(dual_closed, grs.dual());  // exact kernel oracle
            // involution: the dual of the dual has a multiplier giving the same code
            auto back = grs_dual_multiplier(n - k, xs, zs);
            EXPECT_EQ(grs_code(k, xs, back), grs);
        }
    }
}

TEST(SubfieldSubcode, Examples) {
    const FieldCtx& f4 = FieldCtx::get(2, 2);
    SubfieldView v = prime_view(f4);

    LinearCode full = LinearCode::full(whole_view(f4), 3);
    EXPECT_EQ(subfield_subcode(full, v).dim(), 3);

    MatrixGF m(f4, 1, 2);
    m.set_raw(0, 0, 2);
    m.set_raw(0, 1, 2);  // (w, w)
    LinearCode c(whole_view(f4), m);
    LinearCode sub = subfield_subcode(c, v);
    ASSERT_EQ(sub.dim(), 1);
    EXPECT_TRUE(sub.contains({1, 1}));
}

TEST(SubfieldSubcode, DimensionBound) {
    // dim_q(C ∩ GF(q)^n) >= n - m (n - dim C)
    const FieldCtx& f = FieldCtx::get(2, 4);
    SubfieldView v = prime_view(f);
    Rng rng(13);
    for (int it = 0; it < 20; ++it) {
        int n = 6 + static_cast<int>(rng.below(6));
        int k = 1 + static_cast<int>(rng.below(n));
        MatrixGF m(f, k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) m.set_raw(i, j, rng.any(f).v);
        LinearCode c(whole_view(f), m);
        LinearCode sub = subfield_subcode(c, v);
        EXPECT_GE(sub.dim(), n - v.m * (n - c.dim()));
        // membership: every subcode word is in C and over GF(q)
        for (int r = 0; r < sub.dim(); ++r) {
            auto row = sub.gen().row(r);
            EXPECT_TRUE(c.contains(row));
        }
    }
}

TEST(TraceCode, DelsarteDuality) {
    // trace(C)^perp = C^perp ∩ GF(q)^n, i.e. trace_code(GRS) equals
    // dual(subfield_subcode(dual(GRS)))
    for (auto [p, m_abs, s] : {std::tuple{2, 4, 1}, {2, 4, 2}, {3, 3, 1}}) {
        const FieldCtx& f = FieldCtx::get(p, m_abs);
        SubfieldView v = subfield(f, s);
        Rng rng(17);
        for (int it = 0; it < 30; ++it) {
            int n = 4 + static_cast<int>(rng.below(8));
            int r = 1 + static_cast<int>(rng.below(4));
            auto xs = random_support(f, n, rng);
            auto ys = random_multiplier(f, n, rng);
            LinearCode grs = grs_code(std::min(r, n), xs, ys);
            LinearCode via_trace = trace_code(grs, v);
            LinearCode via_subcode = subfield_subcode(grs.dual(), v).dual();
            ASSERT_EQ(via_trace, via_subcode);
        }
    }
    // degenerate cases
    const FieldCtx& f4 = FieldCtx::get(2, 2);
    SubfieldView v = prime_view(f4);
    EXPECT_EQ(trace_code(LinearCode::zero(whole_view(f4), 3), v).dim(), 0);
    // m = 1: the trace is the identity map on codes over the base field
    SubfieldView w = whole_view(f4);
    MatrixGF m(f4, 1, 2);
    m.set_raw(0, 0, 1);
    m.set_raw(0, 1, 2);
    LinearCode c(w, m);
    EXPECT_EQ(trace_code(c, w), c);
}

TEST(Alternant, TwoDualPathsAgree) {
    for (auto [p, m_abs] : {std::pair{2, 4}, {2, 5}, {3, 3}}) {
        const FieldCtx& f = FieldCtx::get(p, m_abs);
        SubfieldView v = prime_view(f);
        Rng rng(19);
        for (int it = 0; it < 50; ++it) {
            int n = 5 + static_cast<int>(rng.below(10));
            int r = 1 + static_cast<int>(rng.below(5));
            auto xs = random_support(f, n, rng);
            auto ys = random_multiplier(f, n, rng);
            LinearCode code = alternant_code(r, xs, ys, v);
            LinearCode dual_direct = alternant_dual(r, xs, ys, v);
            ASSERT_EQ(code.dual(), dual_direct);
            EXPECT_GE(code.dim(), n - r * v.m);  // standard lower bound
            EXPECT_TRUE((code.gen() * dual_direct.gen().transpose()).is_zero());
        }
    }
}

TEST(Alternant, AffineSupportChangeKeepsTheCode) {
    // A_r(x, y) = A_r(a x + b, c y) for a, c nonzero
    const FieldCtx& f = FieldCtx::get(2, 4);
    SubfieldView v = prime_view(f);
    Rng rng(23);
    for (int it = 0; it < 30; ++it) {
        int n = 6 + static_cast<int>(rng.below(8));
        int r = 1 + static_cast<int>(rng.below(4));
        auto xs = random_support(f, n, rng);
        auto ys = random_multiplier(f, n, rng);
        Fe a = rng.nonzero(f), b = rng.any(f), c = rng.nonzero(f);
        std::vector<Fe> x2, y2;
        for (const Fe& xi : xs) x2.push_back(a * xi + b);
        for (const Fe& yi : ys) y2.push_back(c * yi);
        ASSERT_TRUE(code_equal(alternant_code(r, xs, ys, v), alternant_code(r, x2, y2, v)));
    }
}

TEST(Alternant, DegenerateDegrees) {
    const FieldCtx& f = FieldCtx::get(2, 3);
    SubfieldView v = prime_view(f);
    Rng rng(29);
    auto xs = random_support(f, 6, rng);
    auto ys = random_multiplier(f, 6, rng);
    EXPECT_EQ(alternant_code(0, xs, ys, v), LinearCode::full(v, 6));
    EXPECT_EQ(alternant_dual(0, xs, ys, v).dim(), 0);
    // r*m >= n can give the zero code; the dimension is whatever the rank says
    LinearCode big = alternant_code(6, xs, ys, v);
    EXPECT_EQ(big.dim(), 0);
    EXPECT_EQ(alternant_dual(6, xs, ys, v), LinearCode::full(v, 6));
}

TEST(Goppa, ExamplesAndErrors) {
    const FieldCtx& f = FieldCtx::get(2, 3);
    SubfieldView v = prime_view(f);
    std::vector<Fe> x;
    for (uint32_t e = 1; e < 7; ++e) x.emplace_back(f, e);  // exclude 0

    // constant Goppa polynomial: no constraints
    EXPECT_EQ(goppa_code(x, Poly(f, {3}), v), LinearCode::full(v, 6));

    // Gamma = z: multiplier 1/x_i
    std::vector<Fe> y;
    for (const Fe& xi : x) y.push_back(xi.inv());
    EXPECT_EQ(goppa_code(x, Poly::monomial(f, 1), v), alternant_code(1, x, y, v));
    EXPECT_EQ(goppa_dual(x, Poly::monomial(f, 1), v), alternant_dual(1, x, y, v));

    // Gamma vanishing on a support point
    std::vector<Fe> with_zero = x;
    with_zero.push_back(fe_zero(f));
    EXPECT_THROW(goppa_code(with_zero, Poly::monomial(f, 1), v), std::invalid_argument);
    EXPECT_THROW(goppa_code(x, Poly::zero(f), v), std::invalid_argument);
}

TEST(LinearCode, DualityAndPermutation) {
    const FieldCtx& f = FieldCtx::get(3, 2);
    SubfieldView v = prime_view(f);
    Rng rng(31);
    for (int it = 0; it < 30; ++it) {
        int n = 4 + static_cast<int>(rng.below(6));
        MatrixGF m(f, 3, n);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < n; ++j) m.set_raw(i, j, static_cast<uint32_t>(rng.below(3)));
        LinearCode c(v, m);
        EXPECT_EQ(c.dual().dual(), c);
        EXPECT_TRUE((c.gen() * c.dual().gen().transpose()).is_zero());
        EXPECT_EQ(c.dim() + c.dual().dim(), n);

        EXPECT_EQ(permute_code(c, Perm::identity(n)), c);
        // a transposition applied twice gives the identity
        std::vector<int> tr(n);
        for (int i = 0; i < n; ++i) tr[i] = i;
        std::swap(tr[0], tr[n - 1]);
        Perm swp(tr);
        EXPECT_EQ(permute_code(permute_code(c, swp), swp), c);
    }
    LinearCode a(v, MatrixGF(f, 0, 3)), b(v, MatrixGF(f, 0, 4));
    EXPECT_THROW(code_equal(a, b), std::invalid_argument);
}

TEST(LinearCode, EntriesMustLieInTheBaseField) {
    const FieldCtx& f4 = FieldCtx::get(2, 2);
    MatrixGF m(f4, 1, 2);
    m.set_raw(0, 0, 2);  // w is not in GF(2)
    EXPECT_THROW(LinearCode(prime_view(f4), m), std::invalid_argument);
}
