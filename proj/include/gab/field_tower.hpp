#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gab/error.hpp"

namespace gab {

class Element;
class Subspace;

/// Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m}, q = p^e.
///
/// Elements of F_q are handled as integer labels in [0, q): the label encodes
/// the coefficient vector over F_p in the power basis of `base_modulus`,
/// little-endian in base p. Elements of F_{q^m} are codes in [0, q^m): the
/// code encodes the F_q label vector in the power basis of `ext_modulus`,
/// little-endian in base q. Consequently F_q sits inside F_{q^m} as the codes
/// below q, and 0/1 are the additive/multiplicative identities in any layer.
///
/// A tower is immutable once constructed and may be shared freely across
/// threads; all operations are pure.
struct TowerConfig {
    // Discrete-log tables are built when q^m stays at or below this cap;
    // multiplication and inversion then run through them, and the straight
    // polynomial route stays available for cross-checks.
    uint64_t log_table_cap = uint64_t{1} << 22;
};

class FieldTower {
  public:
    using Config = TowerConfig;

    /// Moduli are little-endian coefficient lists and must be monic of the
    /// stated degree; both are irreducibility-checked (root scan plus trial
    /// division, adequate at the degrees this library targets).
    FieldTower(uint32_t p, uint32_t e, std::vector<uint32_t> base_modulus,
               uint32_t m, std::vector<uint32_t> ext_modulus, Config cfg = {});

    /// Tower over a prime base field: q = p, base modulus defaults to x.
    static FieldTower prime_base(uint32_t p, uint32_t m,
                                 std::vector<uint32_t> ext_modulus,
                                 Config cfg = {});

    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;
    FieldTower(FieldTower&&) = default;

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t m() const { return m_; }
    uint64_t q() const { return q_; }
    uint64_t order() const { return order_; }  // q^m
    const std::vector<uint32_t>& base_modulus() const { return base_mod_; }
    const std::vector<uint32_t>& ext_modulus() const { return ext_mod_; }

    // --- F_q arithmetic on labels in [0, q) ---
    uint32_t badd(uint32_t a, uint32_t b) const;
    uint32_t bsub(uint32_t a, uint32_t b) const;
    uint32_t bmul(uint32_t a, uint32_t b) const;
    uint32_t bneg(uint32_t a) const;
    uint32_t binv(uint32_t a) const;

    // --- F_{q^m} arithmetic on codes in [0, q^m) ---
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t div(uint64_t a, uint64_t b) const;
    uint64_t pow(uint64_t a, int64_t n) const;

    /// Multiplication through the polynomial route, bypassing the log
    /// tables. Must agree with mul() everywhere (tested).
    uint64_t mul_poly(uint64_t a, uint64_t b) const;

    /// x^{q^s}, s taken mod m; s = 1 is the q-Frobenius generator of the
    /// Galois group.
    uint64_t frob(uint64_t a, int64_t s = 1) const;

    /// Trace onto F_q, returned as a label in [0, q).
    uint32_t trace_label(uint64_t a) const;

    bool in_base(uint64_t code) const { return code < q_; }

    /// Coefficient vector over F_q (length m, little-endian).
    std::vector<uint32_t> digits(uint64_t code) const;
    uint64_t from_digits(std::span<const uint32_t> digits) const;

    uint64_t primitive_code() const { return primitive_; }
    bool has_log_table() const { return !log_.empty(); }
    /// Discrete log base the primitive element; a must be nonzero.
    uint64_t dlog(uint64_t a) const;
    /// primitive^i (exponent reduced mod q^m - 1).
    uint64_t exp(uint64_t i) const;

    /// Default γ for pi_s: the first of 1, a, a², … (a = primitive) with
    /// nonzero trace.
    uint64_t default_pi_gamma_code() const { return pi_gamma_; }

    // Element conveniences.
    Element make(uint64_t code) const;
    Element zero() const;
    Element one() const;
    Element primitive() const;
    Element from_base(uint32_t label) const;

    bool same(const FieldTower& other) const { return this == &other; }

  private:
    uint32_t p_, e_, m_;
    uint64_t q_, order_;
    std::vector<uint32_t> base_mod_, ext_mod_;
    // base-field tables (built when e > 1)
    std::vector<uint32_t> badd_tab_, bmul_tab_, bneg_tab_, binv_tab_;
    // x^d mod ext_modulus for d in [m, 2m-2], as digit rows
    std::vector<std::vector<uint32_t>> xpow_;
    uint64_t primitive_ = 0;
    uint64_t pi_gamma_ = 0;
    std::vector<uint32_t> log_;   // code -> dlog (log_[0] unused)
    std::vector<uint32_t> exp_;   // i -> code of primitive^i, i < order-1
    std::vector<uint64_t> order_factors_;  // distinct prime factors of q^m - 1

    void build_base_tables();
    void check_base_irreducible() const;
    void check_ext_irreducible() const;
    void build_xpow();
    void find_primitive();
    void build_log_tables(const Config& cfg);
    uint64_t mul_poly_raw(uint64_t a, uint64_t b) const;
    bool has_full_order(uint64_t a) const;
};

/// Value type for elements of F_{q^m}. Holds a pointer to its tower; the
/// tower must outlive every element created from it.
class Element {
  public:
    Element() : tw_(nullptr), code_(0) {}
    Element(const FieldTower& tw, uint64_t code) : tw_(&tw), code_(code) {}

    const FieldTower& tower() const { return *tw_; }
    const FieldTower* tower_ptr() const { return tw_; }
    uint64_t code() const { return code_; }

    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }
    bool in_base() const { return tw_->in_base(code_); }
    /// The F_q label of an element lying in F_q; error otherwise.
    uint32_t base_label() const;

    Element operator+(const Element& o) const { return with(tw_->add(code_, o.check(tw_))); }
    Element operator-(const Element& o) const { return with(tw_->sub(code_, o.check(tw_))); }
    Element operator*(const Element& o) const { return with(tw_->mul(code_, o.check(tw_))); }
    Element operator/(const Element& o) const { return with(tw_->div(code_, o.check(tw_))); }
    Element operator-() const { return with(tw_->neg(code_)); }
    Element& operator+=(const Element& o) { code_ = tw_->add(code_, o.check(tw_)); return *this; }
    Element& operator-=(const Element& o) { code_ = tw_->sub(code_, o.check(tw_)); return *this; }
    Element& operator*=(const Element& o) { code_ = tw_->mul(code_, o.check(tw_)); return *this; }

    Element inverse() const { return with(tw_->inv(code_)); }
    Element pow(int64_t n) const { return with(tw_->pow(code_, n)); }
    Element frob(int64_t s = 1) const { return with(tw_->frob(code_, s)); }

    bool operator==(const Element& o) const { return tw_ == o.tw_ && code_ == o.code_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

  private:
    Element with(uint64_t c) const { return Element(*tw_, c); }
    uint64_t check(const FieldTower* tw) const {
        require(tw_ == tw, Errc::tower_mismatch, "elements from different towers");
        return code_;
    }

    const FieldTower* tw_;
    uint64_t code_;
};

/// Row-reduce a matrix of F_q labels in place (reduced row echelon form).
/// Returns the rank and the pivot columns. Shared workhorse for everything
/// that does linear algebra over the base field.
std::pair<std::size_t, std::vector<std::size_t>> fq_row_reduce(
    const FieldTower& tw, std::vector<std::vector<uint32_t>>& rows);

/// An F_q-subspace of F_{q^m}, kept as its generating set plus the canonical
/// reduced basis (RREF of the coordinate rows).
class Subspace {
  public:
    Subspace(const FieldTower& tw, std::vector<Element> generators);
    static Subspace zero(const FieldTower& tw);
    static Subspace full(const FieldTower& tw);

    const FieldTower& tower() const { return *tw_; }
    const std::vector<Element>& generators() const { return gens_; }
    const std::vector<Element>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    bool contains(const Element& x) const;
    bool operator==(const Subspace& o) const;

    /// All q^dim elements, in odometer order over the basis. Guarded.
    std::vector<Element> elements(uint64_t cap = uint64_t{1} << 20) const;

  private:
    const FieldTower* tw_;
    std::vector<Element> gens_;
    std::vector<Element> basis_;
};

// --- trace machinery ---

/// θ^s(x) = x^{q^s}; s reduced mod m.
Element frobenius(const Element& x, int64_t s);

/// Tr_{F_{q^m}/F_q}(x) = Σ_{i<m} θ^i(x), returned as an element of the
/// F_q-layer of the tower (all higher coefficients zero).
Element trace(const Element& x);

/// tr(x, y) = Tr(xy), the trace bilinear form; value lies in F_q.
Element trace_form(const Element& x, const Element& y);

/// ker(T_α) for the functional T_α: x ↦ Tr(αx); α must be nonzero, and the
/// kernel then has F_q-dimension m - 1.
Subspace T_alpha_kernel(const Element& alpha);

/// The unique dual basis under the trace form: tr(basis[i], dual[j]) = δ_ij.
std::vector<Element> dual_basis(std::span<const Element> basis);

/// S^× = ∩ ker(T_α) over a basis of S; dim S^× = m - dim S, independent of
/// the generating set.
Subspace trace_orthogonal(const Subspace& s);

/// φ_s(x) = θ^s(x) - x. Requires gcd(s, m) = 1; its image is ker(Tr) and its
/// kernel is F_q (additive Hilbert 90).
Element phi_s(const Element& x, int64_t s);

/// A preimage of α under φ_s, picked via γ (Tr(γ) ≠ 0):
///   π_s(α) = (-1/Tr(γ)) Σ_{i=0}^{m-2} σ^{i+1}(γ) Σ_{j=0}^{i} σ^j(α),  σ = θ^s.
/// Requires Tr(α) = 0. The full preimage set is {π_s(α) + λ : λ ∈ F_q}.
Element pi_s(const Element& alpha, int64_t s, const Element& gamma);

/// pi_s with the tower's deterministic default γ.
Element pi_s(const Element& alpha, int64_t s);

/// Smallest ℓ ≥ 0 with Tr(γ^ℓ) = … = Tr(γ^{ℓ+m-2}) = 0 (γ primitive; such a
/// run of m-1 consecutive trace-zero powers always exists). Computed
/// constructively: the dual-basis element β killing 1, γ, …, γ^{m-2} spans
/// the admissible line, so ℓ = min over λ ∈ F_q^* of dlog(λβ).
uint64_t consecutive_trace_zero_start(const Element& gamma);

}  // namespace gab
