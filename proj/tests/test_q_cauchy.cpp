#include "gab/q_cauchy.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "gab/gabidulin.hpp"

using namespace gab;

namespace {

FieldTower f8() { return FieldTower::prime_base(2, 3, {1, 1, 0, 1}); }
FieldTower f2m4() { return FieldTower::prime_base(2, 4, {1, 1, 0, 0, 1}); }
FieldTower f2m6() { return FieldTower::prime_base(2, 6, {1, 1, 0, 1, 1, 0, 1}); }
FieldTower f3m4() { return FieldTower::prime_base(3, 4, {2, 1, 0, 0, 1}); }

QCauchyParams worked_params(const FieldTower& t) {
    // alpha = (a^14, a^15, a^16), beta = (1, a, a^2), B = 0, gamma = a^3
    std::vector<Element> alpha{t.make(t.exp(14)), t.make(t.exp(15)), t.make(t.exp(16))};
    std::vector<Element> beta{t.one(), t.primitive(), t.make(t.exp(2))};
    return QCauchyParams{alpha, beta, BaseMatrix(2, 3, 3), 1, t.make(t.exp(3))};
}

Matrix from_powers(const FieldTower& t, const std::vector<std::vector<int>>& pows) {
    Matrix m(t, pows.size(), pows[0].size());
    for (std::size_t i = 0; i < pows.size(); ++i)
        for (std::size_t j = 0; j < pows[0].size(); ++j)
            m.set_code(i, j, pows[i][j] < 0 ? 0 : t.exp((uint64_t)pows[i][j]));
    return m;
}

}  // namespace

TEST_CASE("validate: worked parameters pass, broken ones report the condition") {
    auto t = f2m6();
    auto p = worked_params(t);
    CHECK(validate(p).empty());

    auto repeated = p;
    repeated.alpha[1] = repeated.alpha[0];
    auto v1 = validate(repeated);
    CHECK(std::any_of(v1.begin(), v1.end(),
                      [](const Violation& v) { return v.condition == "alpha_rank"; }));

    auto badc = p;
    badc.beta[2] = t.primitive().pow(5);  // Tr(alpha_1 * a^5) generically nonzero
    bool c_violated = false;
    for (const auto& v : validate(badc))
        if (v.condition == "trace" || v.condition == "beta_rank") c_violated = true;
    CHECK(c_violated);

    auto badnorm = p;
    std::swap(badnorm.beta[0], badnorm.beta[1]);
    auto v3 = validate(badnorm);
    CHECK(std::any_of(v3.begin(), v3.end(),
                      [](const Violation& v) { return v.condition == "beta_norm"; }));
}

TEST_CASE("build reproduces the worked Hankel matrix exactly") {
    auto t = f2m6();
    Matrix x = build(worked_params(t));
    CHECK(x == from_powers(t, {{57, 7, 13}, {7, 13, 37}, {13, 37, 36}}));
}

TEST_CASE("build: Phi round-trip and recognition, random valid parameters") {
    std::vector<FieldTower> towers;
    towers.push_back(f2m4());
    towers.push_back(f3m4());
    std::mt19937_64 rng(103);
    for (auto& t : towers) {
        for (int rep = 0; rep < 25; ++rep) {
            auto p = random_valid_params(t, 2, 4, 1, rng);
            REQUIRE(validate(p).empty());
            Matrix x = build(p);
            // Phi_s(X) = alpha^T beta entrywise
            Matrix phi = x.phi(p.s);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    CHECK(phi(i, j) == p.alpha[i] * p.beta[j]);
            CHECK(recognize(Matrix::identity(t, 2).hjoin(x), p.s).verdict ==
                  Verdict::gabidulin);
        }
    }
}

TEST_CASE("recover_params inverts build") {
    auto t = f2m6();
    auto p = worked_params(t);
    Matrix x = build(p);
    auto rec = recover_params(x, 1, p.gamma);
    CHECK(rec.alpha == p.alpha);
    CHECK(rec.beta == p.beta);
    CHECK(rec.b == p.b);
    CHECK(build(rec) == x);

    auto t4 = f2m4();
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 100; ++rep) {
        auto params = random_valid_params(t4, 2, 4, 1, rng);
        Matrix built = build(params);
        auto back = recover_params(built, 1, params.gamma);
        CHECK(back.alpha == params.alpha);
        CHECK(back.beta == params.beta);
        CHECK(back.b == params.b);
        CHECK(build(back) == built);
    }

    // a matrix that is not a (q,s)-Cauchy matrix is rejected
    int rejected = 0, tried = 0;
    while (tried < 50) {
        Matrix xr(t4, 2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) xr.set_code(i, j, rng() % t4.order());
        if (is_gabidulin_fast(xr, 1)) continue;
        ++tried;
        try {
            recover_params(xr, 1);
            break;  // must not succeed
        } catch (const Error& e) {
            CHECK(e.code() == Errc::not_q_cauchy);
            ++rejected;
        }
    }
    CHECK(rejected == tried);
}

TEST_CASE("recover_points: the worked example, including the recomputed g_3") {
    auto t = f2m6();
    auto g = recover_points(worked_params(t));
    REQUIRE(g.size() == 6);
    CHECK(g[0] == t.one());
    CHECK(g[1] == t.make(t.exp(45)));
    CHECK(g[2] == t.make(t.exp(15)));  // misprinted in the source text
    CHECK(g[3] == t.make(t.exp(46)));
    CHECK(g[4] == t.make(t.exp(14)));
    CHECK(g[5] == t.make(t.exp(28)));

    // the recovered points really generate the code with this standard form
    GabidulinSpec spec(g, 3, 1);
    Code c = code_from_spec(spec);
    CHECK(c.nonsystematic_part() == build(worked_params(t)));
}

TEST_CASE("recover_points: random parameters and the k = 1 branch") {
    auto t = f3m4();
    std::mt19937_64 rng(109);
    for (int rep = 0; rep < 40; ++rep) {
        auto p = random_valid_params(t, 2, 4, 1, rng);
        auto g = recover_points(p);
        GabidulinSpec spec(g, 2, 1);
        CHECK(code_from_spec(spec).nonsystematic_part() == build(p));
    }
    // k = 1: no linear system, g_{1+i} = x_{1,i} directly
    for (int rep = 0; rep < 20; ++rep) {
        auto p = random_valid_params(t, 1, 3, 1, rng);
        Matrix x = build(p);
        auto g = recover_points(p);
        REQUIRE(g.size() == 3);
        CHECK(g[0] == t.one());
        for (std::size_t i = 0; i < 2; ++i) CHECK(g[1 + i] == x(0, i));
    }
}

TEST_CASE("inverse_moore_factor matches the RREF route and closes the loop") {
    auto t = f2m6();
    auto p = worked_params(t);
    auto g = recover_points(p);
    Matrix x = inverse_moore_factor(g, 3, 1);
    CHECK(x == build(p));

    auto t4 = f2m4();
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 30; ++rep) {
        auto params = random_valid_params(t4, 2, 4, 1, rng);
        auto pts = recover_points(params);
        // scale by a random unit: the code and hence X are unchanged
        Element lam = t4.make(1 + rng() % (t4.order() - 1));
        std::vector<Element> scaled;
        for (const auto& gi : pts) scaled.push_back(lam * gi);
        Matrix via_moore = inverse_moore_factor(scaled, 2, 1);
        Matrix via_rref = Code(moore_matrix(scaled, 2, 1)).nonsystematic_part();
        CHECK(via_moore == via_rref);
        CHECK(via_moore == build(params));
        // and the parameter recovery returns the normalized points
        auto back = recover_points(recover_params(via_moore, 1, params.gamma));
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(back[i] == pts[i]);
    }

    std::vector<Element> dep{t4.one(), t4.one()};
    CHECK_THROWS_AS(inverse_moore_factor(dep, 1, 1), Error);
}

TEST_CASE("hankel construction") {
    auto t = f2m6();
    auto hb = build_hankel(t, 3, 6, 1, std::nullopt, t.make(t.exp(3)));
    CHECK(hb.ell == 14);
    CHECK(hb.x == from_powers(t, {{57, 7, 13}, {7, 13, 37}, {13, 37, 36}}));
    CHECK(hb.params.alpha == worked_params(t).alpha);
    CHECK(hb.params.beta == worked_params(t).beta);

    // Hankel equalities and recognition across shapes
    std::vector<FieldTower> towers;
    towers.push_back(f2m4());
    towers.push_back(f3m4());
    for (auto& tw : towers) {
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t k = 1; k < n; ++k) {
                auto b = build_hankel(tw, k, n, 1);
                for (std::size_t i = 0; i + 1 < k; ++i)
                    for (std::size_t j = 1; j < n - k; ++j)
                        CHECK(b.x(i, j) == b.x(i + 1, j - 1));
                CHECK(is_gabidulin_fast(b.x, 1));
            }
    }

    // a Hankel B over F_q is allowed and keeps everything working
    BaseMatrix hb2(2, 2, 2);
    hb2.set(0, 0, 1);
    hb2.set(0, 1, 1);
    hb2.set(1, 0, 1);
    auto t4 = f2m4();
    auto withb = build_hankel(t4, 2, 4, 1, hb2);
    CHECK(withb.x(0, 1) == withb.x(1, 0));
    CHECK(is_gabidulin_fast(withb.x, 1));

    BaseMatrix nothankel(2, 2, 2);
    nothankel.set(0, 0, 1);
    nothankel.set(1, 0, 1);
    nothankel.set(1, 1, 1);
    CHECK_THROWS_AS(build_hankel(t4, 2, 4, 1, nothankel), Error);
}

TEST_CASE("toeplitz construction") {
    std::vector<FieldTower> towers;
    towers.push_back(f2m4());
    towers.push_back(f3m4());
    for (auto& tw : towers) {
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t k = 1; k < n; ++k) {
                auto b = build_toeplitz(tw, k, n, 1);
                for (std::size_t i = 0; i + 1 < k; ++i)
                    for (std::size_t j = 0; j + 1 < n - k; ++j)
                        CHECK(b.x(i, j) == b.x(i + 1, j + 1));
                CHECK(is_gabidulin_fast(b.x, 1));
                // Phi pattern: gamma^{l + n-k-1 + i - j} entrywise
                Matrix phi = b.x.phi(1);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < n - k; ++j) {
                        int64_t e = (int64_t)(b.ell + n - k - 1 + i) - (int64_t)j;
                        CHECK(phi(i, j) == b.gamma.pow(e));
                    }
            }
    }
}

TEST_CASE("circulant witness") {
    auto t = f2m4();
    std::mt19937_64 rng(127);
    for (int rep = 0; rep < 20; ++rep) {
        uint64_t u = rng() % t.order(), v = rng() % t.order();
        Matrix x(t, 2, 2);
        x.set_code(0, 0, u);
        x.set_code(0, 1, v);
        x.set_code(1, 0, v);
        x.set_code(1, 1, u);
        auto w = circulant_demo(x);
        CHECK(w.rank_weight <= 2);
        CHECK(w.codeword.size() == 4);
        // the witness really is the all-ones encoding
        Matrix gen = Matrix::identity(t, 2).hjoin(x);
        for (std::size_t j = 0; j < 4; ++j) {
            Element acc = t.zero();
            for (std::size_t i = 0; i < 2; ++i) acc += gen(i, j);
            CHECK(acc == w.codeword[j]);
        }
        CHECK(min_rank_distance(code_from_x(x)) <= 2);  // so never MRD for n=4
    }

    // all-equal entries: witness rank collapses
    Matrix flat(t, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) flat.set_code(i, j, 5);
    CHECK(circulant_demo(flat).rank_weight <= 2);

    Matrix notcirc(t, 2, 2);
    notcirc.set_code(0, 0, 1);
    CHECK_THROWS_AS(circulant_demo(notcirc), Error);
    Matrix rect(t, 2, 3);
    CHECK_THROWS_AS(circulant_demo(rect), Error);
}

TEST_CASE("exhaustive correspondence at q=2, m=n=3") {
    // {X : C_X generalized Gabidulin} must equal {build(params)} over all
    // valid params and all B, and both must have 24 = (8-2)(8-4) members
    auto t = f8();
    for (std::size_t k : {1u, 2u}) {
        const std::size_t r = 3 - k;
        // left side: recognition over all standard forms
        std::set<std::string> gab_set;
        const uint64_t total = 1ull << (3 * k * r);
        for (uint64_t flat = 0; flat < total; ++flat) {
            Matrix x(t, k, r);
            uint64_t f = flat;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    x.set_code(i, j, f % 8);
                    f /= 8;
                }
            if (is_gabidulin_fast(x, 1)) gab_set.insert(x.byte_key());
        }
        CHECK(gab_set.size() == count_gabidulin(2, 3, 3));

        // right side: every valid parameter set, every B
        std::set<std::string> built_set;
        Element gamma = t.make(t.default_pi_gamma_code());
        std::vector<uint64_t> all(t.order());
        for (uint64_t c = 0; c < t.order(); ++c) all[c] = c;
        std::vector<std::vector<Element>> alphas, betas;
        // enumerate alpha tuples over ker(Tr) of full rank, beta with beta_1=1
        std::vector<Element> ker_els;
        for (uint64_t c = 0; c < t.order(); ++c)
            if (t.trace_label(c) == 0) ker_els.push_back(t.make(c));
        auto push_tuples = [&](std::size_t len, const std::vector<Element>& pool,
                               bool lead_one, std::vector<std::vector<Element>>& out) {
            std::vector<std::size_t> idx(len, 0);
            for (;;) {
                std::vector<Element> tup;
                if (lead_one) tup.push_back(t.one());
                for (std::size_t i = 0; i < len; ++i) tup.push_back(pool[idx[i]]);
                out.push_back(tup);
                std::size_t p = 0;
                for (; p < len; ++p) {
                    if (++idx[p] < pool.size()) break;
                    idx[p] = 0;
                }
                if (p == len) break;
            }
        };
        std::vector<Element> field_els;
        for (uint64_t c = 0; c < t.order(); ++c) field_els.push_back(t.make(c));
        push_tuples(k, ker_els, false, alphas);
        push_tuples(r - 1, field_els, true, betas);
        if (r == 1) betas.assign(1, {t.one()});
        for (const auto& alpha : alphas)
            for (const auto& beta : betas) {
                QCauchyParams p{alpha, beta, BaseMatrix(2, k, r), 1, gamma};
                if (!validate(p).empty()) continue;
                for (uint64_t bflat = 0; bflat < (1ull << (k * r)); ++bflat) {
                    uint64_t bf = bflat;
                    for (std::size_t i = 0; i < k; ++i)
                        for (std::size_t j = 0; j < r; ++j) {
                            p.b.set(i, j, bf & 1);
                            bf >>= 1;
                        }
                    built_set.insert(build(p).byte_key());
                }
            }
        CHECK(built_set == gab_set);
    }
}

TEST_CASE("build is injective for fixed gamma and normalized beta") {
    auto t = f2m4();
    std::mt19937_64 rng(131);
    std::set<std::string> xs;
    std::set<std::string> param_keys;
    for (int rep = 0; rep < 60; ++rep) {
        auto p = random_valid_params(t, 2, 4, 1, rng);
        std::string pk;
        for (const auto& e : p.alpha) pk += std::to_string(e.code()) + ",";
        for (const auto& e : p.beta) pk += std::to_string(e.code()) + ",";
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) pk += std::to_string(p.b.at(i, j)) + ",";
        if (!param_keys.insert(pk).second) continue;
        CHECK(xs.insert(build(p).byte_key()).second);
    }
}

TEST_CASE("full pipeline over a tower with e > 1 (F_4 inside F_16)") {
    // q = 4, m = 2: the smallest case where the base field is itself an
    // extension; k = 1, n = 2 is the only admissible shape
    FieldTower t(2, 2, {1, 1, 1}, 2, {2, 1, 1});
    std::mt19937_64 rng(151);
    for (int rep = 0; rep < 10; ++rep) {
        auto p = random_valid_params(t, 1, 2, 1, rng);
        Matrix x = build(p);
        CHECK(is_gabidulin_fast(x, 1));
        auto back = recover_params(x, 1, p.gamma);
        CHECK(build(back) == x);
        auto g = recover_points(p);
        CHECK(inverse_moore_factor(g, 1, 1) == x);
    }
    auto h = build_hankel(t, 1, 2, 1);
    CHECK(is_gabidulin_fast(h.x, 1));
    CHECK(recognize(Matrix::identity(t, 1).hjoin(h.x), 1).verdict == Verdict::gabidulin);

    // census: (q^m - q) codes, q^m - 1 evaluation vectors per code
    CHECK(count_gabidulin(4, 2, 2) == 12);
    auto census = enumerate_gabidulin(t, 2, 1, 1);
    CHECK(census.distinct_codes == 12);
    CHECK(census.valid_vectors == 180);
    CHECK(census.vectors_per_code_min == 15);
    CHECK(census.vectors_per_code_max == 15);
}

TEST_CASE("the code built from params does not depend on gamma") {
    auto t = f2m6();
    auto p1 = worked_params(t);
    auto p2 = p1;
    // find a different gamma with nonzero trace
    for (uint64_t c = 1; c < t.order(); ++c)
        if (t.trace_label(c) != 0 && t.make(c) != p1.gamma) {
            p2.gamma = t.make(c);
            break;
        }
    Matrix x1 = build(p1), x2 = build(p2);
    Matrix diff = x1 - x2;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(diff(i, j).in_base());
    CHECK(is_gabidulin_fast(x1, 1) == is_gabidulin_fast(x2, 1));
}
