#include "gab/field_tower.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

namespace gab {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t ipow_checked(uint64_t b, uint32_t e, uint64_t cap) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        require(r <= cap / b, Errc::too_large, "field size exceeds supported range");
        r *= b;
    }
    return r;
}

// F_p polynomial helpers (little-endian digit vectors), used to bootstrap
// the base-field tables before any lookup structure exists.
std::vector<uint32_t> fp_decode(uint64_t label, uint32_t p, uint32_t len) {
    std::vector<uint32_t> d(len);
    for (uint32_t i = 0; i < len; ++i) {
        d[i] = label % p;
        label /= p;
    }
    return d;
}

uint64_t fp_encode(const std::vector<uint32_t>& d, uint32_t p) {
    uint64_t v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    // Fermat
    uint64_t r = 1, b = a % p;
    uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return (uint32_t)r;
}

// remainder of num / den over F_p, both little-endian, den monic or not
std::vector<uint32_t> fp_polymod(std::vector<uint32_t> num,
                                 const std::vector<uint32_t>& den, uint32_t p) {
    const size_t dd = den.size() - 1;
    const uint32_t lead_inv = fp_inv(den[dd], p);
    while (num.size() > dd) {
        uint32_t c = num.back();
        if (c) {
            uint32_t f = (uint32_t)((uint64_t)c * lead_inv % p);
            size_t shift = num.size() - 1 - dd;
            for (size_t i = 0; i <= dd; ++i) {
                uint32_t t = (uint32_t)((uint64_t)f * den[i] % p);
                num[shift + i] = (num[shift + i] + p - t) % p;
            }
        }
        num.pop_back();
    }
    return num;
}

int64_t norm_mod(int64_t s, uint32_t m) {
    int64_t r = s % (int64_t)m;
    return r < 0 ? r + m : r;
}

bool fp_poly_is_zero(const std::vector<uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [](uint32_t c) { return c == 0; });
}

}  // namespace

const char* errc_id(Errc c) {
    switch (c) {
        case Errc::bad_argument: return "bad_argument";
        case Errc::parse_error: return "parse_error";
        case Errc::tower_mismatch: return "tower_mismatch";
        case Errc::not_irreducible: return "not_irreducible";
        case Errc::no_primitive_found: return "no_primitive_found";
        case Errc::bad_parameter_s: return "bad_parameter_s";
        case Errc::zero_functional: return "zero_functional";
        case Errc::not_a_basis: return "not_a_basis";
        case Errc::not_in_kernel: return "not_in_kernel";
        case Errc::bad_gamma: return "bad_gamma";
        case Errc::not_primitive: return "not_primitive";
        case Errc::too_large: return "too_large";
        case Errc::cap_exceeded: return "cap_exceeded";
        case Errc::dependent_points: return "dependent_points";
        case Errc::rank_deficient: return "rank_deficient";
        case Errc::no_standard_form: return "no_standard_form";
        case Errc::not_q_cauchy: return "not_q_cauchy";
        case Errc::singular_system: return "singular_system";
        case Errc::verification_failed: return "verification_failed";
        case Errc::not_circulant: return "not_circulant";
        case Errc::validation_failed: return "validation_failed";
        case Errc::unknown_suite: return "unknown_suite";
    }
    return "unknown";
}

FieldTower::FieldTower(uint32_t p, uint32_t e, std::vector<uint32_t> base_modulus,
                       uint32_t m, std::vector<uint32_t> ext_modulus, Config cfg)
    : p_(p), e_(e), m_(m), base_mod_(std::move(base_modulus)), ext_mod_(std::move(ext_modulus)) {
    require(is_prime_u32(p_), Errc::bad_argument, "p must be prime");
    require(e_ >= 1 && m_ >= 1, Errc::bad_argument, "extension degrees must be positive");
    require(base_mod_.size() == e_ + 1, Errc::bad_argument, "base modulus must have degree e");
    require(base_mod_.back() == 1, Errc::bad_argument, "base modulus must be monic");
    for (uint32_t c : base_mod_) require(c < p_, Errc::bad_argument, "base modulus coefficient out of range");

    q_ = ipow_checked(p_, e_, uint64_t{1} << 20);
    require(e_ == 1 || q_ <= 4096, Errc::too_large, "base extension too large for table-driven arithmetic");
    order_ = ipow_checked(q_, m_, uint64_t{1} << 32);

    require(ext_mod_.size() == m_ + 1, Errc::bad_argument, "ext modulus must have degree m");
    require(ext_mod_.back() == 1, Errc::bad_argument, "ext modulus must be monic");
    for (uint32_t c : ext_mod_) require(c < q_, Errc::bad_argument, "ext modulus coefficient out of range");

    check_base_irreducible();
    build_base_tables();
    build_xpow();
    check_ext_irreducible();

    {  // distinct prime factors of q^m - 1, for order checks
        uint64_t n = order_ - 1;
        for (uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                order_factors_.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) order_factors_.push_back(n);
    }

    find_primitive();
    build_log_tables(cfg);

    // default γ for pi_s: first of a^0, a^1, … with nonzero trace
    for (uint64_t i = 0;; ++i) {
        require(i < order_ - 1, Errc::no_primitive_found, "no element of nonzero trace (impossible)");
        uint64_t c = pow(primitive_, (int64_t)i);
        if (trace_label(c) != 0) {
            pi_gamma_ = c;
            break;
        }
    }
}

FieldTower FieldTower::prime_base(uint32_t p, uint32_t m, std::vector<uint32_t> ext_modulus, Config cfg) {
    return FieldTower(p, 1, {0, 1}, m, std::move(ext_modulus), cfg);
}

void FieldTower::check_base_irreducible() const {
    if (e_ == 1) return;  // degree 1, nothing to check
    // root scan
    for (uint32_t x = 0; x < p_; ++x) {
        uint64_t v = 0;
        for (size_t i = base_mod_.size(); i-- > 0;) v = (v * x + base_mod_[i]) % p_;
        require(v != 0, Errc::not_irreducible, "base modulus has a root in F_p");
    }
    // trial division by monic polynomials of degree 2..e/2
    for (uint32_t d = 2; d <= e_ / 2; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p_;
        for (uint64_t t = 0; t < count; ++t) {
            std::vector<uint32_t> den = fp_decode(t, p_, d);
            den.push_back(1);
            auto rem = fp_polymod(base_mod_, den, p_);
            require(!fp_poly_is_zero(rem), Errc::not_irreducible, "base modulus is reducible");
        }
    }
}

void FieldTower::build_base_tables() {
    if (e_ == 1) return;
    const uint32_t q = (uint32_t)q_;
    badd_tab_.resize((size_t)q * q);
    bmul_tab_.resize((size_t)q * q);
    bneg_tab_.resize(q);
    binv_tab_.assign(q, 0);
    for (uint32_t a = 0; a < q; ++a) {
        auto da = fp_decode(a, p_, e_);
        std::vector<uint32_t> na(e_);
        for (uint32_t i = 0; i < e_; ++i) na[i] = (p_ - da[i]) % p_;
        bneg_tab_[a] = (uint32_t)fp_encode(na, p_);
        for (uint32_t b = 0; b < q; ++b) {
            auto db = fp_decode(b, p_, e_);
            std::vector<uint32_t> sum(e_);
            for (uint32_t i = 0; i < e_; ++i) sum[i] = (da[i] + db[i]) % p_;
            badd_tab_[(size_t)a * q + b] = (uint32_t)fp_encode(sum, p_);
            std::vector<uint32_t> conv(2 * e_ - 1, 0);
            for (uint32_t i = 0; i < e_; ++i)
                if (da[i])
                    for (uint32_t j = 0; j < e_; ++j)
                        conv[i + j] = (uint32_t)((conv[i + j] + (uint64_t)da[i] * db[j]) % p_);
            auto rem = fp_polymod(conv, base_mod_, p_);
            rem.resize(e_, 0);
            bmul_tab_[(size_t)a * q + b] = (uint32_t)fp_encode(rem, p_);
        }
    }
    for (uint32_t a = 1; a < q; ++a) {
        for (uint32_t b = 1; b < q; ++b) {
            if (bmul_tab_[(size_t)a * q + b] == 1) {
                binv_tab_[a] = b;
                break;
            }
        }
        require(binv_tab_[a] != 0, Errc::not_irreducible, "base modulus is reducible (zero divisor found)");
    }
}

uint32_t FieldTower::badd(uint32_t a, uint32_t b) const {
    if (e_ == 1) return (uint32_t)(((uint64_t)a + b) % p_);
    return badd_tab_[(size_t)a * q_ + b];
}

uint32_t FieldTower::bsub(uint32_t a, uint32_t b) const { return badd(a, bneg(b)); }

uint32_t FieldTower::bmul(uint32_t a, uint32_t b) const {
    if (e_ == 1) return (uint32_t)((uint64_t)a * b % p_);
    return bmul_tab_[(size_t)a * q_ + b];
}

uint32_t FieldTower::bneg(uint32_t a) const {
    if (e_ == 1) return a == 0 ? 0 : (uint32_t)(p_ - a);
    return bneg_tab_[a];
}

uint32_t FieldTower::binv(uint32_t a) const {
    require(a != 0, Errc::bad_argument, "division by zero in F_q");
    if (e_ == 1) return fp_inv(a, p_);
    return binv_tab_[a];
}

std::vector<uint32_t> FieldTower::digits(uint64_t code) const {
    std::vector<uint32_t> d(m_);
    for (uint32_t i = 0; i < m_; ++i) {
        d[i] = (uint32_t)(code % q_);
        code /= q_;
    }
    return d;
}

uint64_t FieldTower::from_digits(std::span<const uint32_t> d) const {
    require(d.size() == m_, Errc::bad_argument, "digit vector must have length m");
    uint64_t v = 0;
    for (size_t i = d.size(); i-- > 0;) {
        require(d[i] < q_, Errc::bad_argument, "digit out of range");
        v = v * q_ + d[i];
    }
    return v;
}

void FieldTower::build_xpow() {
    // x^m = -(lower coefficients of ext modulus), then x^{d+1} = x * x^d
    std::vector<uint32_t> cur(m_);
    for (uint32_t i = 0; i < m_; ++i) cur[i] = bneg(ext_mod_[i]);
    xpow_.push_back(cur);
    for (uint32_t d = m_ + 1; m_ >= 2 && d <= 2 * m_ - 2; ++d) {
        std::vector<uint32_t> nxt(m_, 0);
        uint32_t lead = cur[m_ - 1];
        for (uint32_t i = m_ - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        if (lead) {
            const auto& red = xpow_[0];
            for (uint32_t i = 0; i < m_; ++i) nxt[i] = badd(nxt[i], bmul(lead, red[i]));
        }
        xpow_.push_back(nxt);
        cur = nxt;
    }
}

uint64_t FieldTower::mul_poly_raw(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    auto da = digits(a);
    auto db = digits(b);
    std::vector<uint32_t> conv(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i) {
        if (!da[i]) continue;
        for (uint32_t j = 0; j < m_; ++j) {
            if (!db[j]) continue;
            conv[i + j] = badd(conv[i + j], bmul(da[i], db[j]));
        }
    }
    std::vector<uint32_t> res(conv.begin(), conv.begin() + m_);
    for (uint32_t d = m_; d <= 2 * m_ - 2; ++d) {
        uint32_t c = conv[d];
        if (!c) continue;
        const auto& red = xpow_[d - m_];
        for (uint32_t i = 0; i < m_; ++i) res[i] = badd(res[i], bmul(c, red[i]));
    }
    return from_digits(res);
}

uint64_t FieldTower::mul_poly(uint64_t a, uint64_t b) const { return mul_poly_raw(a, b); }

uint64_t FieldTower::add(uint64_t a, uint64_t b) const {
    // q = 2^e packs bit-aligned, so characteristic-2 addition is plain xor
    if (p_ == 2) return a ^ b;
    uint64_t r = 0, scale = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        r += (uint64_t)badd((uint32_t)(a % q_), (uint32_t)(b % q_)) * scale;
        a /= q_;
        b /= q_;
        scale *= q_;
    }
    return r;
}

uint64_t FieldTower::neg(uint64_t a) const {
    if (p_ == 2) return a;
    uint64_t r = 0, scale = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        r += (uint64_t)bneg((uint32_t)(a % q_)) * scale;
        a /= q_;
        scale *= q_;
    }
    return r;
}

uint64_t FieldTower::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FieldTower::mul(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
        uint64_t s = (uint64_t)log_[a] + log_[b];
        if (s >= order_ - 1) s -= order_ - 1;
        return exp_[s];
    }
    return mul_poly_raw(a, b);
}

uint64_t FieldTower::inv(uint64_t a) const {
    require(a != 0, Errc::bad_argument, "division by zero in F_{q^m}");
    if (!log_.empty()) {
        uint64_t l = log_[a];
        return exp_[l == 0 ? 0 : order_ - 1 - l];
    }
    return pow(a, (int64_t)(order_ - 2));
}

uint64_t FieldTower::div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }

uint64_t FieldTower::pow(uint64_t a, int64_t n) const {
    if (a == 0) {
        if (n == 0) return 1;
        require(n > 0, Errc::bad_argument, "0 raised to a negative power");
        return 0;
    }
    const int64_t g = (int64_t)(order_ - 1);
    int64_t r = n % g;
    if (r < 0) r += g;
    if (!log_.empty()) return exp_[(uint64_t)((__int128)log_[a] * r % g)];
    uint64_t res = 1, base = a;
    uint64_t ur = (uint64_t)r;
    while (ur) {
        if (ur & 1) res = mul_poly_raw(res, base);
        base = mul_poly_raw(base, base);
        ur >>= 1;
    }
    return res;
}

uint64_t FieldTower::frob(uint64_t a, int64_t s) const {
    int64_t r = s % m_;
    if (r < 0) r += m_;
    if (r == 0 || a == 0 || a == 1) return a;
    if (!log_.empty()) {
        const uint64_t g = order_ - 1;
        uint64_t qs = 1;
        for (int64_t i = 0; i < r; ++i) qs = (uint64_t)((__int128)qs * q_ % g);
        return exp_[(uint64_t)((__int128)log_[a] * qs % g)];
    }
    uint64_t res = a;
    for (int64_t i = 0; i < r; ++i) res = pow(res, (int64_t)q_);
    return res;
}

uint32_t FieldTower::trace_label(uint64_t a) const {
    uint64_t t = 0, cur = a;
    for (uint32_t i = 0; i < m_; ++i) {
        t = add(t, cur);
        cur = frob(cur, 1);
    }
    assert(in_base(t));
    return (uint32_t)t;
}

bool FieldTower::has_full_order(uint64_t a) const {
    if (a == 0) return false;
    for (uint64_t f : order_factors_)
        if (pow(a, (int64_t)((order_ - 1) / f)) == 1) return false;
    return true;
}

void FieldTower::find_primitive() {
    if (order_ == 2) {
        primitive_ = 1;
        return;
    }
    for (uint64_t c = 1; c < order_; ++c) {
        if (has_full_order(c)) {
            primitive_ = c;
            return;
        }
    }
    fail(Errc::no_primitive_found, "no primitive element found (modulus bug)");
}

void FieldTower::build_log_tables(const Config& cfg) {
    if (order_ > cfg.log_table_cap) return;
    exp_.resize(order_ - 1);
    log_.assign(order_, 0);
    uint64_t cur = 1;
    for (uint64_t i = 0; i + 1 < order_; ++i) {
        exp_[i] = (uint32_t)cur;
        log_[cur] = (uint32_t)i;
        cur = mul_poly_raw(cur, primitive_);
    }
    require(cur == 1, Errc::no_primitive_found, "primitive element has wrong order");
}

uint64_t FieldTower::dlog(uint64_t a) const {
    require(a != 0, Errc::bad_argument, "discrete log of zero");
    if (!log_.empty()) return log_[a];
    uint64_t cur = 1;
    for (uint64_t i = 0; i + 1 < order_; ++i) {
        if (cur == a) return i;
        cur = mul_poly_raw(cur, primitive_);
    }
    fail(Errc::no_primitive_found, "dlog scan failed (corrupt tower)");
}

uint64_t FieldTower::exp(uint64_t i) const {
    i %= order_ - 1;
    if (!exp_.empty()) return exp_[i];
    return pow(primitive_, (int64_t)i);
}

void FieldTower::check_ext_irreducible() const {
    // root scan over F_q
    for (uint64_t x = 0; x < q_; ++x) {
        uint32_t v = 0;
        for (size_t i = ext_mod_.size(); i-- > 0;) v = badd(bmul(v, (uint32_t)x), ext_mod_[i]);
        require(v != 0, Errc::not_irreducible, "ext modulus has a root in F_q");
    }
    // trial division by monic polynomials of degree 2..m/2 over F_q
    for (uint32_t d = 2; d <= m_ / 2; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) {
            require(count <= (uint64_t{1} << 24) / q_, Errc::too_large, "irreducibility check too large");
            count *= q_;
        }
        for (uint64_t t = 0; t < count; ++t) {
            std::vector<uint32_t> den(d + 1);
            uint64_t tt = t;
            for (uint32_t i = 0; i < d; ++i) {
                den[i] = (uint32_t)(tt % q_);
                tt /= q_;
            }
            den[d] = 1;
            // polynomial remainder over F_q (den is monic)
            std::vector<uint32_t> num = ext_mod_;
            while (num.size() > d) {
                uint32_t c = num.back();
                if (c) {
                    size_t shift = num.size() - 1 - d;
                    for (uint32_t i = 0; i <= d; ++i)
                        num[shift + i] = bsub(num[shift + i], bmul(c, den[i]));
                }
                num.pop_back();
            }
            bool zero = std::all_of(num.begin(), num.end(), [](uint32_t c) { return c == 0; });
            require(!zero, Errc::not_irreducible, "ext modulus is reducible over F_q");
        }
    }
}

Element FieldTower::make(uint64_t code) const {
    require(code < order_, Errc::bad_argument, "element code out of range");
    return Element(*this, code);
}

Element FieldTower::zero() const { return Element(*this, 0); }
Element FieldTower::one() const { return Element(*this, 1); }
Element FieldTower::primitive() const { return Element(*this, primitive_); }

Element FieldTower::from_base(uint32_t label) const {
    require(label < q_, Errc::bad_argument, "base label out of range");
    return Element(*this, label);
}

uint32_t Element::base_label() const {
    require(in_base(), Errc::bad_argument, "element does not lie in F_q");
    return (uint32_t)code_;
}

// ---------------------------------------------------------------------------
// F_q row reduction and subspaces

std::pair<std::size_t, std::vector<std::size_t>> fq_row_reduce(
    const FieldTower& tw, std::vector<std::vector<uint32_t>>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return {0, pivots};
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        uint32_t iv = tw.binv(rows[r][c]);
        for (auto& x : rows[r]) x = tw.bmul(iv, x);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            uint32_t f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = tw.bsub(rows[i][j], tw.bmul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return {r, pivots};
}

Subspace::Subspace(const FieldTower& tw, std::vector<Element> generators)
    : tw_(&tw), gens_(std::move(generators)) {
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(gens_.size());
    for (const auto& g : gens_) {
        require(g.tower_ptr() == tw_, Errc::tower_mismatch, "generator from a different tower");
        rows.push_back(tw.digits(g.code()));
    }
    auto [rank, piv] = fq_row_reduce(tw, rows);
    basis_.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) basis_.push_back(Element(tw, tw.from_digits(rows[i])));
}

Subspace Subspace::zero(const FieldTower& tw) { return Subspace(tw, {}); }

Subspace Subspace::full(const FieldTower& tw) {
    std::vector<Element> gens;
    uint64_t c = 1;
    for (uint32_t i = 0; i < tw.m(); ++i) {
        gens.push_back(Element(tw, c));
        c *= tw.q();
    }
    return Subspace(tw, std::move(gens));
}

bool Subspace::contains(const Element& x) const {
    require(x.tower_ptr() == tw_, Errc::tower_mismatch, "element from a different tower");
    auto v = tw_->digits(x.code());
    for (const auto& b : basis_) {
        auto bd = tw_->digits(b.code());
        std::size_t pc = 0;
        while (bd[pc] == 0) ++pc;  // leading one of an RREF row
        if (v[pc] == 0) continue;
        uint32_t f = v[pc];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = tw_->bsub(v[j], tw_->bmul(f, bd[j]));
    }
    return std::all_of(v.begin(), v.end(), [](uint32_t c) { return c == 0; });
}

bool Subspace::operator==(const Subspace& o) const {
    if (tw_ != o.tw_ || basis_.size() != o.basis_.size()) return false;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].code() != o.basis_[i].code()) return false;
    return true;
}

std::vector<Element> Subspace::elements(uint64_t cap) const {
    uint64_t total = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        require(total <= cap / tw_->q(), Errc::cap_exceeded, "subspace too large to enumerate");
        total *= tw_->q();
    }
    std::vector<Element> out;
    out.reserve(total);
    std::vector<uint32_t> lam(basis_.size(), 0);
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t acc = 0;
        uint64_t tt = t;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            uint32_t l = (uint32_t)(tt % tw_->q());
            tt /= tw_->q();
            if (l) acc = tw_->add(acc, tw_->mul(l, basis_[i].code()));
        }
        out.push_back(Element(*tw_, acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// trace machinery

Element frobenius(const Element& x, int64_t s) { return x.frob(s); }

Element trace(const Element& x) {
    return x.tower().from_base(x.tower().trace_label(x.code()));
}

Element trace_form(const Element& x, const Element& y) { return trace(x * y); }

Subspace T_alpha_kernel(const Element& alpha) {
    require(!alpha.is_zero(), Errc::zero_functional, "T_alpha with alpha = 0 is identically zero");
    return trace_orthogonal(Subspace(alpha.tower(), {alpha}));
}

Subspace trace_orthogonal(const Subspace& s) {
    const FieldTower& tw = s.tower();
    const uint32_t m = tw.m();
    // K[i][j] = Tr(b_i * a^j) over F_q; kernel of K = S^x in coordinates
    std::vector<std::vector<uint32_t>> K;
    for (const auto& b : s.basis()) {
        std::vector<uint32_t> row(m);
        uint64_t pw = 1;
        for (uint32_t j = 0; j < m; ++j) {
            row[j] = tw.trace_label(tw.mul(b.code(), pw));
            pw *= tw.q();
        }
        K.push_back(std::move(row));
    }
    auto [rank, piv] = fq_row_reduce(tw, K);
    std::vector<bool> is_piv(m, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Element> gens;
    for (uint32_t f = 0; f < m; ++f) {
        if (is_piv[f]) continue;
        std::vector<uint32_t> v(m, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[piv[i]] = tw.bneg(K[i][f]);
        gens.push_back(Element(tw, tw.from_digits(v)));
    }
    return Subspace(tw, std::move(gens));
}

std::vector<Element> dual_basis(std::span<const Element> basis) {
    require(!basis.empty(), Errc::bad_argument, "empty basis");
    const FieldTower& tw = basis[0].tower();
    const uint32_t m = tw.m();
    require(basis.size() == m, Errc::not_a_basis, "need exactly m elements");
    {
        std::vector<std::vector<uint32_t>> rows;
        for (const auto& b : basis) rows.push_back(tw.digits(b.code()));
        auto [rank, piv] = fq_row_reduce(tw, rows);
        require(rank == m, Errc::not_a_basis, "elements are F_q-dependent");
    }
    // Solve Gram * C = I over F_q; dual_j = sum_i C[i][j] basis_i.
    std::vector<std::vector<uint32_t>> aug(m, std::vector<uint32_t>(2 * m, 0));
    for (uint32_t i = 0; i < m; ++i) {
        for (uint32_t j = 0; j < m; ++j)
            aug[i][j] = tw.trace_label(tw.mul(basis[i].code(), basis[j].code()));
        aug[i][m + i] = 1;
    }
    auto [rank, piv] = fq_row_reduce(tw, aug);
    require(rank == m, Errc::not_a_basis, "trace Gram matrix singular");
    std::vector<Element> dual;
    dual.reserve(m);
    for (uint32_t j = 0; j < m; ++j) {
        uint64_t acc = 0;
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t c = aug[i][m + j];
            if (c) acc = tw.add(acc, tw.mul(c, basis[i].code()));
        }
        dual.push_back(Element(tw, acc));
    }
    return dual;
}

Element phi_s(const Element& x, int64_t s) {
    const FieldTower& tw = x.tower();
    require(std::gcd((uint64_t)norm_mod(s, tw.m()), (uint64_t)tw.m()) == 1,
            Errc::bad_parameter_s, "s must be coprime to m");
    return x.frob(s) - x;
}

Element pi_s(const Element& alpha, int64_t s, const Element& gamma) {
    const FieldTower& tw = alpha.tower();
    const uint32_t m = tw.m();
    require(std::gcd((uint64_t)norm_mod(s, m), (uint64_t)m) == 1, Errc::bad_parameter_s,
            "s must be coprime to m");
    uint32_t tg = tw.trace_label(gamma.code());
    require(tg != 0, Errc::bad_gamma, "gamma must have nonzero trace");
    require(tw.trace_label(alpha.code()) == 0, Errc::not_in_kernel,
            "alpha must lie in ker(Tr)");
    Element coef = tw.from_base(tw.bneg(tw.binv(tg)));  // -1/Tr(gamma)
    Element inner = tw.zero();
    Element acc = tw.zero();
    Element sa = alpha;  // sigma^i(alpha)
    for (uint32_t i = 0; i + 1 < m; ++i) {
        inner += sa;
        acc += gamma.frob(s * (int64_t)(i + 1)) * inner;
        sa = sa.frob(s);
    }
    return coef * acc;
}

Element pi_s(const Element& alpha, int64_t s) {
    return pi_s(alpha, s, alpha.tower().make(alpha.tower().default_pi_gamma_code()));
}

uint64_t consecutive_trace_zero_start(const Element& gamma) {
    const FieldTower& tw = gamma.tower();
    const uint32_t m = tw.m();
    {
        // primitivity: order q^m - 1
        uint64_t g = tw.order() - 1;
        bool prim = !gamma.is_zero();
        if (prim && g > 1) {
            // gamma^{(q^m-1)/f} != 1 for every prime factor f
            uint64_t n = g;
            for (uint64_t d = 2; d * d <= n; ++d) {
                if (n % d) continue;
                if (tw.pow(gamma.code(), (int64_t)(g / d)) == 1) prim = false;
                while (n % d == 0) n /= d;
            }
            if (n > 1 && tw.pow(gamma.code(), (int64_t)(g / n)) == 1) prim = false;
        }
        require(prim, Errc::not_primitive, "gamma is not a primitive element");
    }
    if (m == 1) return 0;  // empty run
    std::vector<Element> powers;
    powers.reserve(m);
    Element cur = tw.one();
    for (uint32_t i = 0; i < m; ++i) {
        powers.push_back(cur);
        cur = cur * gamma;
    }
    Element beta = dual_basis(powers)[m - 1];
    // the trace-zero runs start exactly at the dlogs of lambda*beta
    uint64_t best = tw.order();  // sentinel
    for (uint32_t lam = 1; lam < tw.q(); ++lam) {
        uint64_t cand = tw.mul(lam, beta.code());
        // dlog base gamma: gamma = primitive^t, cand = primitive^u, solve t*l = u
        uint64_t u = tw.dlog(cand), t = tw.dlog(gamma.code());
        const uint64_t g = tw.order() - 1;
        // t is a unit mod g (gamma primitive); find l = u * t^{-1} mod g
        uint64_t tinv = 1;
        {
            // extended Euclid
            int64_t a = (int64_t)t, b = (int64_t)g, x0 = 1, x1 = 0;
            while (b) {
                int64_t qq = a / b;
                a -= qq * b;
                std::swap(a, b);
                x0 -= qq * x1;
                std::swap(x0, x1);
            }
            int64_t x = x0 % (int64_t)g;
            if (x < 0) x += (int64_t)g;
            tinv = (uint64_t)x;
        }
        uint64_t l = (uint64_t)((__int128)u * tinv % g);
        best = std::min(best, l);
    }
    return best;
}

}  // namespace gab
