#include "gab/q_cauchy.hpp"

#include <algorithm>
#include <numeric>

namespace gab {

namespace {

int64_t norm_s(int64_t s, uint32_t m) {
    int64_t r = s % (int64_t)m;
    return r < 0 ? r + m : r;
}

void require_coprime_s(int64_t s, uint32_t m) {
    require(std::gcd((uint64_t)norm_s(s, m), (uint64_t)m) == 1, Errc::bad_parameter_s,
            "s must be coprime to m");
}

Matrix pi_matrix(const QCauchyParams& p) {
    const FieldTower& tw = p.tower();
    Matrix x(tw, p.k(), p.r());
    for (std::size_t i = 0; i < p.k(); ++i)
        for (std::size_t j = 0; j < p.r(); ++j)
            x.set(i, j, pi_s(p.alpha[i] * p.beta[j], p.s, p.gamma));
    return x;
}

}  // namespace

std::vector<Violation> validate(const QCauchyParams& p) {
    std::vector<Violation> out;
    if (p.alpha.empty() || p.beta.empty()) {
        out.push_back({"shape", "alpha and beta must be nonempty"});
        return out;
    }
    const FieldTower& tw = p.tower();
    if (std::gcd((uint64_t)norm_s(p.s, tw.m()), (uint64_t)tw.m()) != 1)
        out.push_back({"s", "s is not coprime to m"});
    if (p.b.rows() != p.k() || p.b.cols() != p.r() || p.b.q() != tw.q())
        out.push_back({"b_shape", "B must be k x (n-k) over F_q"});
    if (p.gamma.tower_ptr() != &tw || tw.trace_label(p.gamma.code()) == 0)
        out.push_back({"gamma", "gamma must have nonzero trace"});
    if (q_rank(p.alpha) != p.k())
        out.push_back({"alpha_rank", "rk_q(alpha) < k (condition A)"});
    if (q_rank(p.beta) != p.r())
        out.push_back({"beta_rank", "rk_q(beta) < n-k (condition B)"});
    if (!p.beta[0].is_one())
        out.push_back({"beta_norm", "beta_1 must be 1"});
    for (std::size_t i = 0; i < p.k(); ++i)
        for (std::size_t j = 0; j < p.r(); ++j)
            if (tw.trace_label(tw.mul(p.alpha[i].code(), p.beta[j].code())) != 0) {
                out.push_back({"trace", "Tr(alpha_i beta_j) != 0 (condition C)"});
                return out;
            }
    return out;
}

Matrix build(const QCauchyParams& p) {
    auto viol = validate(p);
    if (!viol.empty()) {
        std::string msg = "invalid (q,s)-Cauchy parameters:";
        for (const auto& v : viol) msg += " " + v.condition;
        fail(Errc::validation_failed, msg);
    }
    const FieldTower& tw = p.tower();
    Matrix x = pi_matrix(p);
    for (std::size_t i = 0; i < p.k(); ++i)
        for (std::size_t j = 0; j < p.r(); ++j) {
            uint32_t c = p.b.at(i, j);
            if (c) x.set_code(i, j, tw.add(x.code_at(i, j), c));
        }
    return x;
}

QCauchyParams recover_params(const Matrix& x, int64_t s, const Element& gamma) {
    const FieldTower& tw = x.tower();
    require_coprime_s(s, tw.m());
    require(tw.trace_label(gamma.code()) != 0, Errc::bad_gamma, "gamma must have nonzero trace");
    const std::size_t k = x.rows(), r = x.cols();
    QCauchyParams p{{}, {}, BaseMatrix(tw.q(), k, r), s, gamma};
    for (std::size_t i = 0; i < k; ++i) {
        Element ai = phi_s(x(i, 0), s);  // beta_1 = 1
        if (ai.is_zero()) fail(Errc::not_q_cauchy, "phi_s of first column vanishes");
        p.alpha.push_back(ai);
    }
    Element a1_inv = p.alpha[0].inverse();
    for (std::size_t j = 0; j < r; ++j) p.beta.push_back(phi_s(x(0, j), s) * a1_inv);
    // conditions (A)(B)(C) must hold before pi_s is even applicable
    if (!validate(p).empty()) fail(Errc::not_q_cauchy, "recovered parameters fail validation");
    Matrix pim = pi_matrix(p);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Element d = x(i, j) - pim(i, j);
            if (!d.in_base()) fail(Errc::not_q_cauchy, "X - pi-part is not over F_q");
            p.b.set(i, j, d.base_label());
        }
    if (build(p) != x) fail(Errc::not_q_cauchy, "rebuild does not reproduce X");
    return p;
}

QCauchyParams recover_params(const Matrix& x, int64_t s) {
    const FieldTower& tw = x.tower();
    return recover_params(x, s, tw.make(tw.default_pi_gamma_code()));
}

std::vector<Element> recover_points(const QCauchyParams& p) {
    auto viol = validate(p);
    if (!viol.empty()) fail(Errc::validation_failed, "invalid (q,s)-Cauchy parameters");
    const FieldTower& tw = p.tower();
    const std::size_t k = p.k(), n = p.k() + p.r();
    const int64_t s = p.s;
    std::vector<Element> g;
    g.reserve(n);
    g.push_back(tw.one());
    if (k > 1) {
        // Moore system M_{k-1,-s}(σ^{-1}(α_2)...σ^{-1}(α_k)) (g_2..g_k)^T
        //   = (-σ^{-1}(α_1), ..., -σ^{-(k-1)}(α_1))^T
        Matrix sys(tw, k - 1, k - 1);
        Matrix rhs(tw, k - 1, 1);
        for (std::size_t l = 1; l <= k - 1; ++l) {
            for (std::size_t j = 2; j <= k; ++j)
                sys.set(l - 1, j - 2, p.alpha[j - 1].frob(-s * (int64_t)l));
            rhs.set(l - 1, 0, -p.alpha[0].frob(-s * (int64_t)l));
        }
        auto res = rref(sys.hjoin(rhs));
        require(res.rank == k - 1, Errc::singular_system,
                "Moore system singular (internal error)");
        for (std::size_t i = 0; i < k - 1; ++i) g.push_back(res.r(i, k - 1));
    }
    Matrix pim = pi_matrix(p);
    for (std::size_t i = 0; i < p.r(); ++i) {
        Element acc = tw.zero();
        for (std::size_t j = 0; j < k; ++j)
            acc += g[j] * (pim(j, i) + tw.from_base(p.b.at(j, i)));
        g.push_back(acc);
    }
    // the inverse-Moore identity must hold exactly
    Matrix left = moore_matrix(std::span<const Element>(g).subspan(0, k), k, s);
    Matrix right = moore_matrix(std::span<const Element>(g).subspan(k), k, s);
    Matrix xx = build(p);
    if (left * xx != right || q_rank(g) != n)
        fail(Errc::verification_failed, "recovered points fail the Moore identity");
    return g;
}

Matrix inverse_moore_factor(std::span<const Element> g, std::size_t k, int64_t s) {
    require(k > 0 && k < g.size(), Errc::bad_argument, "need 0 < k < n");
    require(q_rank(g) == g.size(), Errc::dependent_points, "points must have full q-rank");
    Matrix left = moore_matrix(g.subspan(0, k), k, s);
    Matrix right = moore_matrix(g.subspan(k), k, s);
    return inverse(left) * right;
}

namespace {

StructuredBuild build_structured(const FieldTower& tw, std::size_t k, std::size_t n, int64_t s,
                                 std::optional<BaseMatrix> b, std::optional<Element> pi_gamma,
                                 bool hankel) {
    require(k > 0 && k < n && n <= tw.m(), Errc::bad_argument, "need 0 < k < n <= m");
    require_coprime_s(s, tw.m());
    Element gamma = tw.primitive();
    uint64_t ell = consecutive_trace_zero_start(gamma);
    QCauchyParams p{{}, {}, b ? *b : BaseMatrix(tw.q(), k, n - k), s,
                    pi_gamma ? *pi_gamma : tw.make(tw.default_pi_gamma_code())};
    if (b) {
        require(b->rows() == k && b->cols() == n - k && b->q() == tw.q(), Errc::bad_argument,
                "B must be k x (n-k) over F_q");
        require(hankel ? b->is_hankel() : b->is_toeplitz(), Errc::bad_argument,
                hankel ? "B must be Hankel" : "B must be Toeplitz");
    }
    if (hankel) {
        for (std::size_t i = 0; i < k; ++i) p.alpha.push_back(gamma.pow((int64_t)(ell + i)));
        for (std::size_t j = 0; j < n - k; ++j) p.beta.push_back(gamma.pow((int64_t)j));
    } else {
        for (std::size_t i = 0; i < k; ++i)
            p.alpha.push_back(gamma.pow((int64_t)(ell + n - k - 1 + i)));
        for (std::size_t j = 0; j < n - k; ++j) p.beta.push_back(gamma.pow(-(int64_t)j));
    }
    Matrix x = build(p);
    // literal structure check; cannot fail for valid towers
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) {
            bool ok = hankel ? (j == 0 || x.code_at(i, j) == x.code_at(i + 1, j - 1))
                             : (j + 1 >= n - k || x.code_at(i, j) == x.code_at(i + 1, j + 1));
            require(ok, Errc::verification_failed, "structured build lost its structure");
        }
    return StructuredBuild{std::move(x), std::move(p), ell, gamma};
}

}  // namespace

StructuredBuild build_hankel(const FieldTower& tw, std::size_t k, std::size_t n, int64_t s,
                             std::optional<BaseMatrix> b, std::optional<Element> pi_gamma) {
    return build_structured(tw, k, n, s, std::move(b), std::move(pi_gamma), true);
}

StructuredBuild build_toeplitz(const FieldTower& tw, std::size_t k, std::size_t n, int64_t s,
                               std::optional<BaseMatrix> b, std::optional<Element> pi_gamma) {
    return build_structured(tw, k, n, s, std::move(b), std::move(pi_gamma), false);
}

CirculantWitness circulant_demo(const Matrix& x) {
    const FieldTower& tw = x.tower();
    const std::size_t k = x.rows();
    require(x.cols() == k, Errc::not_circulant, "circulant matrices are square");
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            require(x.code_at(i, j) == x.code_at(i + 1, (j + 1) % k), Errc::not_circulant,
                    "matrix is not circulant");
    // (1,...,1)(I_k | X) = (1,...,1, c, ..., c) with c the common column sum
    CirculantWitness w{std::vector<Element>(), 0};
    w.codeword.assign(2 * k, tw.one());
    for (std::size_t j = 0; j < k; ++j) {
        Element sum = tw.zero();
        for (std::size_t i = 0; i < k; ++i) sum += x(i, j);
        w.codeword[k + j] = sum;
    }
    w.rank_weight = q_rank(w.codeword);
    require(w.rank_weight <= 2, Errc::verification_failed,
            "circulant witness exceeded rank 2 (impossible)");
    return w;
}

QCauchyParams random_valid_params(const FieldTower& tw, std::size_t k, std::size_t n,
                                  int64_t s, std::mt19937_64& rng) {
    require(k > 0 && k < n && n <= tw.m(), Errc::bad_argument, "need 0 < k < n <= m");
    require_coprime_s(s, tw.m());
    Subspace ker = T_alpha_kernel(tw.one());  // ker(Tr), dimension m-1
    auto rand_label = [&](uint64_t q) { return (uint32_t)(rng() % q); };
    auto sample_from = [&](const Subspace& sp) {
        uint64_t acc = 0;
        for (const auto& bx : sp.basis()) {
            uint32_t lam = rand_label(tw.q());
            if (lam) acc = tw.add(acc, tw.mul(lam, bx.code()));
        }
        return tw.make(acc);
    };
    QCauchyParams p{{}, {}, BaseMatrix(tw.q(), k, n - k), s, tw.make(tw.default_pi_gamma_code())};
    for (int tries = 0;; ++tries) {
        require(tries < 1000, Errc::bad_argument, "sampler failed to find full-rank alpha");
        p.alpha.clear();
        for (std::size_t i = 0; i < k; ++i) p.alpha.push_back(sample_from(ker));
        if (q_rank(p.alpha) == k) break;
    }
    Subspace orth = trace_orthogonal(q_support(p.alpha));  // contains 1 since Tr(alpha_i) = 0
    for (int tries = 0;; ++tries) {
        require(tries < 1000, Errc::bad_argument, "sampler failed to find full-rank beta");
        p.beta.clear();
        p.beta.push_back(tw.one());
        for (std::size_t j = 1; j < n - k; ++j) p.beta.push_back(sample_from(orth));
        if (q_rank(p.beta) == n - k) break;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) p.b.set(i, j, rand_label(tw.q()));
    return p;
}

}  // namespace gab
