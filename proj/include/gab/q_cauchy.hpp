#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gab/ext_linalg.hpp"
#include "gab/field_tower.hpp"

namespace gab {

/// Parameters of a (q,s)-Cauchy matrix C = [π_s(α_i β_j)] + B with
///   (A) rk_q(α) = k,  (B) rk_q(β) = n-k,  (C) supp_q(β) ⊆ supp_q(α)^×,
/// normalized to β_1 = 1, B over F_q, and γ the preimage choice for π_s.
struct QCauchyParams {
    std::vector<Element> alpha;
    std::vector<Element> beta;
    BaseMatrix b;
    int64_t s = 1;
    Element gamma;

    std::size_t k() const { return alpha.size(); }
    std::size_t r() const { return beta.size(); }  // n - k
    const FieldTower& tower() const { return alpha[0].tower(); }
};

struct Violation {
    std::string condition;  // short id: "alpha_rank", "beta_rank", ...
    std::string message;
};

/// Checks (A), (B), (C) and the β_1 = 1 normalization. (C) is tested as
/// Tr(α_i β_j) = 0 for all i, j. Returns the violations instead of throwing.
std::vector<Violation> validate(const QCauchyParams& p);

/// X with X_ij = π_s(α_i β_j) + B_ij; then Φ_s(X) = α^⊤β exactly.
/// Throws validation_failed when validate() reports anything.
Matrix build(const QCauchyParams& p);

/// Inverts build under the β_1 = 1 normalization: α_i = φ_s(x_{i,1}),
/// β_j = φ_s(x_{1,j}) / α_1, B = X - [π_s(α_i β_j)]. Throws not_q_cauchy if
/// the recovered parameters fail validation or the rebuild differs from X.
QCauchyParams recover_params(const Matrix& x, int64_t s, const Element& gamma);
QCauchyParams recover_params(const Matrix& x, int64_t s);

/// Evaluation points g with g_1 = 1 whose code has standard form (I_k | X):
/// g_2..g_k solve the (k-1)×(k-1) Moore system built from σ^{-ℓ}(α_j), and
/// g_{k+i} = Σ_j g_j (π_s(α_j β_i) + b_{j,i}). The identity
/// M_{k,s}(g_1..g_k) · X = M_{k,s}(g_{k+1}..g_n) is verified before
/// returning (verification_failed otherwise).
std::vector<Element> recover_points(const QCauchyParams& p);

/// M_{k,s}(g_1..g_k)^{-1} M_{k,s}(g_{k+1}..g_n); requires rk_q(g) = n.
Matrix inverse_moore_factor(std::span<const Element> g, std::size_t k, int64_t s);

struct StructuredBuild {
    Matrix x;
    QCauchyParams params;
    uint64_t ell;    // start of the trace-zero power run
    Element gamma;   // the primitive element the powers are taken from
};

/// Hankel construction: α = (γ^ℓ, …, γ^{ℓ+k-1}), β = (1, γ, …, γ^{n-k-1}),
/// B Hankel (zero by default); X is constant on anti-diagonals and C_X is a
/// generalized Gabidulin code of parameter s.
StructuredBuild build_hankel(const FieldTower& tw, std::size_t k, std::size_t n, int64_t s,
                             std::optional<BaseMatrix> b = std::nullopt,
                             std::optional<Element> pi_gamma = std::nullopt);

/// Toeplitz construction: α = (γ^{ℓ+n-k-1}, …, γ^{ℓ+n-2}),
/// β = (1, γ^{-1}, …, γ^{-(n-k-1)}), B Toeplitz; X constant on diagonals.
StructuredBuild build_toeplitz(const FieldTower& tw, std::size_t k, std::size_t n, int64_t s,
                               std::optional<BaseMatrix> b = std::nullopt,
                               std::optional<Element> pi_gamma = std::nullopt);

struct CirculantWitness {
    std::vector<Element> codeword;  // the all-ones message, encoded
    std::size_t rank_weight;        // always <= 2
};

/// For circulant X (k = n/2): the all-ones message hits a codeword of rank
/// weight at most 2, so for n >= 4 the code C_X cannot be MRD.
CirculantWitness circulant_demo(const Matrix& x);

/// Deterministic sampler of parameter sets satisfying (A), (B), (C) with
/// β_1 = 1: α from ker(Tr), β from supp_q(α)^×, B uniform over F_q.
QCauchyParams random_valid_params(const FieldTower& tw, std::size_t k, std::size_t n,
                                  int64_t s, std::mt19937_64& rng);

}  // namespace gab
