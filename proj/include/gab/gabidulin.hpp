#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gab/ext_linalg.hpp"
#include "gab/field_tower.hpp"

namespace gab {

/// f(x) = f_0 x + f_1 x^{[s]} + … + f_{k-1} x^{[s(k-1)]} with [i] = q^i.
struct LinearizedPoly {
    std::vector<Element> coeffs;
    int64_t s = 1;

    Element eval(const Element& x) const;
};

/// Evaluation data of a generalized Gabidulin code: n points of full q-rank,
/// dimension k, Frobenius parameter s coprime to m.
class GabidulinSpec {
  public:
    GabidulinSpec(std::vector<Element> g, std::size_t k, int64_t s);

    const FieldTower& tower() const { return g_[0].tower(); }
    const std::vector<Element>& points() const { return g_; }
    std::size_t n() const { return g_.size(); }
    std::size_t k() const { return k_; }
    int64_t s() const { return s_; }

  private:
    std::vector<Element> g_;
    std::size_t k_;
    int64_t s_;
};

/// message · M_{s,k}(g); same vector the polynomial route produces.
std::vector<Element> encode(const GabidulinSpec& spec, std::span<const Element> message);
/// Encoding by evaluating Σ m_i x^{[si]} at each point (independent route).
std::vector<Element> encode_poly(const GabidulinSpec& spec, std::span<const Element> message);

/// The canonical generator M_{s,k}(g).
Matrix canonical_generator(const GabidulinSpec& spec);

/// p_{h,s}(x) = det M_{ℓ+1,s}(h_1, …, h_ℓ, x), as an ℓ+1 term linearized
/// polynomial (cofactor expansion along the last column). Its roots in
/// F_{q^m} are exactly supp_q(h).
LinearizedPoly subspace_poly(std::span<const Element> h, int64_t s);

/// The basis {f_i} of G_{k,s} with f_i(g_j) = δ_ij; evaluating it at g gives
/// the standard-form generator. For k = 1 this degenerates to f_1 = g_1^{-1}x.
std::vector<LinearizedPoly> systematic_basis(const GabidulinSpec& spec);

/// A rank-metric code held by one of its generator matrices (full row rank
/// enforced). The RREF is computed once; the standard form (I_k | X) is
/// available whenever the pivots are the first k columns.
class Code {
  public:
    explicit Code(Matrix generator);

    const FieldTower& tower() const { return gen_.tower(); }
    const Matrix& generator() const { return gen_; }
    std::size_t k() const { return gen_.rows(); }
    std::size_t n() const { return gen_.cols(); }

    const Matrix& reduced() const { return rref_; }
    bool has_standard_form() const { return std_form_; }
    /// X from (I_k | X); throws no_standard_form.
    Matrix nonsystematic_part() const;

    /// Row-space equality.
    bool operator==(const Code& o) const { return rref_ == o.rref_; }

  private:
    Matrix gen_;
    Matrix rref_;
    bool std_form_;
};

Code code_from_spec(const GabidulinSpec& spec);
/// Code generated by (I_k | X).
Code code_from_x(const Matrix& x);

/// Exact minimum rank distance by enumerating all q^{mk} codewords.
std::size_t min_rank_distance(const Code& code, uint64_t cap = uint64_t{1} << 24);

/// MRD test: rk(E G^T) = k for every E in T_q(k,n).
bool is_mrd(const Code& code, uint64_t cap = 1'000'000);

/// Rank-one test rk(Φ_s(X)) = 1; only meaningful once C_X is known MRD.
bool is_gabidulin_given_mrd(const Matrix& x, int64_t s);

/// Standalone criterion on X: first row of Φ_s(X) has q-rank n-k, first
/// column has q-rank k, and rk(Φ_s(X)) = 1. No MRD precheck needed.
bool is_gabidulin_fast(const Matrix& x, int64_t s);
/// Same verdict, phrased on the entries of X with 1 adjoined:
/// rk_q(1, x_{1,*}) = n-k+1 and rk_q(1, x_{*,1}) = k+1 and rk(Φ_s(X)) = 1.
bool is_gabidulin_fast_alt(const Matrix& x, int64_t s);

enum class Verdict { not_mrd_shape, not_gabidulin, gabidulin };

struct RecognizeReport {
    Verdict verdict;
    int64_t s;
    std::size_t k, n;
    std::size_t rank_phi = 0;      // valid unless not_mrd_shape
    std::size_t row_qrank = 0;     // q-rank of first row of Φ_s(X)
    std::size_t col_qrank = 0;     // q-rank of first column of Φ_s(X)
    std::optional<Matrix> x;       // present when the RREF is (I_k | X)
    OpCounter ops;                 // F_{q^m} operations spent
};

/// Full recognition pipeline: RREF, shape test, fast criterion.
/// Throws rank_deficient when G has dependent rows.
RecognizeReport recognize(const Matrix& g, int64_t s);

/// Tries every s in [1, m) coprime to m; first hit wins.
std::optional<RecognizeReport> recognize_any_s(const Matrix& g);

/// Dual code via (I_k | X) → (-X^T | I_{n-k}).
Code dual_code(const Code& code);

/// |Gab_q(k,n,m,s)| = Π_{i=1}^{n-1} (q^m − q^i); independent of k and s.
uint64_t count_gabidulin(uint64_t q, unsigned m, unsigned n);

struct GabidulinCensus {
    uint64_t distinct_codes = 0;
    uint64_t valid_vectors = 0;          // g with rk_q(g) = n
    uint64_t vectors_per_code_min = 0;
    uint64_t vectors_per_code_max = 0;
};

/// Enumerates every g in F_{q^m}^n, keeps those of full q-rank, and counts
/// distinct row spaces of M_{s,k}(g). Feasible only for tiny q^{mn}.
GabidulinCensus enumerate_gabidulin(const FieldTower& tw, std::size_t n, std::size_t k,
                                    int64_t s, uint64_t cap = uint64_t{1} << 24);

/// MRD via the superregularity characterization: AXB + C superregular for
/// all A ∈ U_k(q), B ∈ U_{n-k}(q), C over F_q.
bool mrd_superregular_check(const Matrix& x, uint64_t cap = 1'000'000);

}  // namespace gab
