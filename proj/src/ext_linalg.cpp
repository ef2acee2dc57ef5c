#include "gab/ext_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace gab {

Matrix::Matrix(const FieldTower& tw, std::size_t rows, std::size_t cols)
    : tw_(&tw), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    require(rows > 0 && cols > 0, Errc::bad_argument, "matrix dimensions must be positive");
}

Matrix Matrix::identity(const FieldTower& tw, std::size_t n) {
    Matrix m(tw, n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(const FieldTower& tw, const std::vector<std::vector<Element>>& rows) {
    require(!rows.empty() && !rows[0].empty(), Errc::bad_argument, "empty row set");
    Matrix m(tw, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == m.cols_, Errc::bad_argument, "ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Element& x) {
    require(x.tower_ptr() == tw_, Errc::tower_mismatch, "entry from a different tower");
    a_[i * cols_ + j] = x.code();
}

std::vector<Element> Matrix::row(std::size_t i) const {
    std::vector<Element> r;
    r.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r.push_back((*this)(i, j));
    return r;
}

std::vector<Element> Matrix::col(std::size_t j) const {
    std::vector<Element> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(tw_ == o.tw_, Errc::tower_mismatch, "matrices over different towers");
    require(cols_ == o.rows_, Errc::bad_argument, "inner dimensions disagree");
    Matrix r(*tw_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t t = 0; t < cols_; ++t) {
            uint64_t x = a_[i * cols_ + t];
            if (!x) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                uint64_t y = o.a_[t * o.cols_ + j];
                if (!y) continue;
                r.a_[i * o.cols_ + j] = tw_->add(r.a_[i * o.cols_ + j], tw_->mul(x, y));
            }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(tw_ == o.tw_ && rows_ == o.rows_ && cols_ == o.cols_, Errc::bad_argument,
            "shape mismatch");
    Matrix r(*tw_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require(tw_ == o.tw_ && rows_ == o.rows_ && cols_ == o.cols_, Errc::bad_argument,
            "shape mismatch");
    Matrix r(*tw_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw_->sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(*tw_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw_->neg(a_[i]);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(*tw_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = a_[i * cols_ + j];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return tw_ == o.tw_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::hjoin(const Matrix& o) const {
    require(tw_ == o.tw_ && rows_ == o.rows_, Errc::bad_argument, "row counts disagree");
    Matrix r(*tw_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.a_[i * r.cols_ + j] = a_[i * cols_ + j];
        for (std::size_t j = 0; j < o.cols_; ++j) r.a_[i * r.cols_ + cols_ + j] = o.a_[i * o.cols_ + j];
    }
    return r;
}

Matrix Matrix::col_slice(std::size_t first, std::size_t last) const {
    require(first < last && last <= cols_, Errc::bad_argument, "bad column range");
    Matrix r(*tw_, rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = first; j < last; ++j) r.a_[i * r.cols_ + (j - first)] = a_[i * cols_ + j];
    return r;
}

Matrix Matrix::phi(int64_t s, OpCounter* ops) const {
    require(std::gcd((uint64_t)(((s % tw_->m()) + tw_->m()) % tw_->m()), (uint64_t)tw_->m()) == 1,
            Errc::bad_parameter_s, "s must be coprime to m");
    Matrix r(*tw_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
        r.a_[i] = tw_->sub(tw_->frob(a_[i], s), a_[i]);
        if (ops) {
            ++ops->frob;
            ++ops->add;
        }
    }
    return r;
}

std::string Matrix::byte_key() const {
    std::string key;
    key.reserve(a_.size() * 8 + 16);
    auto put = [&key](uint64_t v) {
        for (int b = 0; b < 8; ++b) key.push_back((char)((v >> (8 * b)) & 0xff));
    };
    put(rows_);
    put(cols_);
    for (uint64_t v : a_) put(v);
    return key;
}

RrefResult rref(const Matrix& m, OpCounter* ops) {
    const FieldTower& tw = m.tower();
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t sel = rank;
        while (sel < m.rows() && r.code_at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                uint64_t t = r.code_at(rank, j);
                r.set_code(rank, j, r.code_at(sel, j));
                r.set_code(sel, j, t);
            }
        uint64_t iv = tw.inv(r.code_at(rank, c));
        if (ops) ++ops->inv;
        for (std::size_t j = c; j < m.cols(); ++j) {
            r.set_code(rank, j, tw.mul(iv, r.code_at(rank, j)));
            if (ops) ++ops->mul;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank) continue;
            uint64_t f = r.code_at(i, c);
            if (!f) continue;
            for (std::size_t j = c; j < m.cols(); ++j) {
                r.set_code(i, j, tw.sub(r.code_at(i, j), tw.mul(f, r.code_at(rank, j))));
                if (ops) {
                    ++ops->mul;
                    ++ops->add;
                }
            }
        }
        pivots.push_back(c);
        ++rank;
    }
    return {std::move(r), rank, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Element determinant(const Matrix& m) {
    require(m.rows() == m.cols(), Errc::bad_argument, "determinant of a non-square matrix");
    const FieldTower& tw = m.tower();
    const std::size_t n = m.rows();
    std::vector<uint64_t> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.code_at(i, j);
    uint64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && a[sel * n + c] == 0) ++sel;
        if (sel == n) return tw.zero();
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[sel * n + j]);
            det = tw.neg(det);
        }
        det = tw.mul(det, a[c * n + c]);
        uint64_t iv = tw.inv(a[c * n + c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            uint64_t f = tw.mul(a[i * n + c], iv);
            if (!f) continue;
            for (std::size_t j = c; j < n; ++j)
                a[i * n + j] = tw.sub(a[i * n + j], tw.mul(f, a[c * n + j]));
        }
    }
    return tw.make(det);
}

Matrix inverse(const Matrix& m) {
    require(m.rows() == m.cols(), Errc::bad_argument, "inverse of a non-square matrix");
    auto res = rref(m.hjoin(Matrix::identity(m.tower(), m.rows())));
    // invertible iff the pivots stay inside the left block
    bool ok = res.rank == m.rows();
    for (std::size_t i = 0; ok && i < res.pivots.size(); ++i) ok = res.pivots[i] == i;
    require(ok, Errc::singular_system, "matrix is singular");
    return res.r.col_slice(m.cols(), 2 * m.cols());
}

std::size_t q_rank(std::span<const Element> v) {
    if (v.empty()) return 0;
    const FieldTower& tw = v[0].tower();
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(v.size());
    for (const auto& x : v) rows.push_back(tw.digits(x.code()));
    return fq_row_reduce(tw, rows).first;
}

Subspace q_support(std::span<const Element> v) {
    require(!v.empty(), Errc::bad_argument, "support of an empty vector");
    return Subspace(v[0].tower(), std::vector<Element>(v.begin(), v.end()));
}

Matrix moore_matrix(std::span<const Element> v, std::size_t k, int64_t s) {
    require(!v.empty(), Errc::bad_argument, "empty evaluation vector");
    require(k >= 1, Errc::bad_argument, "k must be positive");
    const FieldTower& tw = v[0].tower();
    require(std::gcd((uint64_t)(((s % tw.m()) + tw.m()) % tw.m()), (uint64_t)tw.m()) == 1,
            Errc::bad_parameter_s, "s must be coprime to m");
    Matrix m(tw, k, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m.set(0, j, v[j]);
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m.set_code(i, j, tw.frob(m.code_at(i - 1, j), s));
    return m;
}

namespace {

// determinant of the submatrix picked by (ri, cj), by Gaussian elimination
uint64_t minor_det(const Matrix& m, const std::vector<std::size_t>& ri,
                   const std::vector<std::size_t>& cj) {
    const FieldTower& tw = m.tower();
    const std::size_t t = ri.size();
    std::vector<uint64_t> a(t * t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) a[i * t + j] = m.code_at(ri[i], cj[j]);
    uint64_t det = 1;
    for (std::size_t c = 0; c < t; ++c) {
        std::size_t sel = c;
        while (sel < t && a[sel * t + c] == 0) ++sel;
        if (sel == t) return 0;
        if (sel != c) {
            for (std::size_t j = 0; j < t; ++j) std::swap(a[c * t + j], a[sel * t + j]);
            det = tw.neg(det);
        }
        det = tw.mul(det, a[c * t + c]);
        uint64_t iv = tw.inv(a[c * t + c]);
        for (std::size_t i = c + 1; i < t; ++i) {
            uint64_t f = tw.mul(a[i * t + c], iv);
            if (!f) continue;
            for (std::size_t j = c; j < t; ++j)
                a[i * t + j] = tw.sub(a[i * t + j], tw.mul(f, a[c * t + j]));
        }
    }
    return det;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (comb[i] + (k - i) <= n - 1 + 0) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

bool superregular(const Matrix& m) {
    require(m.rows() <= 6 && m.cols() <= 6, Errc::too_large,
            "superregularity check limited to 6x6");
    const std::size_t tmax = std::min(m.rows(), m.cols());
    for (std::size_t t = 1; t <= tmax; ++t) {
        std::vector<std::size_t> ri(t), cj(t);
        std::iota(ri.begin(), ri.end(), 0);
        do {
            std::iota(cj.begin(), cj.end(), 0);
            do {
                if (minor_det(m, ri, cj) == 0) return false;
            } while (next_combination(cj, m.cols()));
        } while (next_combination(ri, m.rows()));
    }
    return true;
}

BaseMatrix::BaseMatrix(uint64_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    require(rows > 0 && cols > 0, Errc::bad_argument, "matrix dimensions must be positive");
}

BaseMatrix BaseMatrix::from_rows(uint64_t q, const std::vector<std::vector<uint32_t>>& rows) {
    require(!rows.empty() && !rows[0].empty(), Errc::bad_argument, "empty row set");
    BaseMatrix m(q, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == m.cols_, Errc::bad_argument, "ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void BaseMatrix::set(std::size_t i, std::size_t j, uint32_t label) {
    require(label < q_, Errc::bad_argument, "label out of range");
    a_[i * cols_ + j] = label;
}

Matrix BaseMatrix::lift(const FieldTower& tw) const {
    require(tw.q() == q_, Errc::tower_mismatch, "tower has a different base field size");
    Matrix m(tw, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set_code(i, j, a_[i * cols_ + j]);
    return m;
}

bool BaseMatrix::operator==(const BaseMatrix& o) const {
    return q_ == o.q_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool BaseMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t c) { return c == 0; });
}

bool BaseMatrix::is_hankel() const {
    for (std::size_t i = 0; i + 1 < rows_; ++i)
        for (std::size_t j = 1; j < cols_; ++j)
            if (at(i, j) != at(i + 1, j - 1)) return false;
    return true;
}

bool BaseMatrix::is_toeplitz() const {
    for (std::size_t i = 0; i + 1 < rows_; ++i)
        for (std::size_t j = 0; j + 1 < cols_; ++j)
            if (at(i, j) != at(i + 1, j + 1)) return false;
    return true;
}

uint64_t gaussian_binomial(unsigned n, unsigned k, uint64_t q) {
    require(k <= n, Errc::bad_argument, "need 0 <= k <= n");
    // q-Pascal: G(n,k) = G(n-1,k-1) + q^k G(n-1,k)
    std::vector<unsigned __int128> row(n + 1, 0);
    row[0] = 1;
    const unsigned __int128 lim = ~(uint64_t)0;
    for (unsigned i = 1; i <= n; ++i) {
        for (unsigned j = std::min(i, n); j >= 1; --j) {
            unsigned __int128 qk = 1;
            for (unsigned t = 0; t < j; ++t) {
                qk *= q;
                require(qk <= lim, Errc::too_large, "gaussian binomial overflows");
            }
            unsigned __int128 v = row[j - 1] + qk * row[j];
            require(v <= lim, Errc::too_large, "gaussian binomial overflows");
            row[j] = v;
        }
    }
    return (uint64_t)row[k];
}

TqEnumerator::TqEnumerator(std::size_t k, std::size_t n, uint64_t q, uint64_t cap)
    : k_(k), n_(n), q_(q) {
    require(k >= 1 && k <= n, Errc::bad_argument, "need 1 <= k <= n");
    total_ = gaussian_binomial((unsigned)n, (unsigned)k, q);
    require(total_ <= cap, Errc::cap_exceeded, "T_q(k,n) larger than cap");
    pivots_.resize(k);
    std::iota(pivots_.begin(), pivots_.end(), 0);
    compute_free_positions();
}

void TqEnumerator::compute_free_positions() {
    free_pos_.clear();
    std::vector<bool> is_piv(n_, false);
    for (auto c : pivots_) is_piv[c] = true;
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = pivots_[i] + 1; j < n_; ++j)
            if (!is_piv[j]) free_pos_.push_back(i * n_ + j);
    odo_.assign(free_pos_.size(), 0);
    fresh_combo_ = true;
}

bool TqEnumerator::advance_pivots() {
    std::size_t i = k_;
    while (i-- > 0) {
        if (pivots_[i] + (k_ - i) <= n_ - 1) {
            ++pivots_[i];
            for (std::size_t j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
            compute_free_positions();
            return true;
        }
    }
    return false;
}

std::optional<BaseMatrix> TqEnumerator::next() {
    if (done_) return std::nullopt;
    if (!fresh_combo_) {
        // advance odometer; on wrap, move to the next pivot set
        std::size_t i = 0;
        for (; i < odo_.size(); ++i) {
            if (odo_[i] + 1 < q_) {
                ++odo_[i];
                std::fill(odo_.begin(), odo_.begin() + i, 0);
                break;
            }
        }
        if (i == odo_.size()) {
            if (!advance_pivots()) {
                done_ = true;
                return std::nullopt;
            }
        }
    }
    fresh_combo_ = false;
    BaseMatrix e(q_, k_, n_);
    for (std::size_t i = 0; i < k_; ++i) e.set(i, pivots_[i], 1);
    for (std::size_t t = 0; t < free_pos_.size(); ++t)
        e.set(free_pos_[t] / n_, free_pos_[t] % n_, odo_[t]);
    return e;
}

void for_each_Tq(std::size_t k, std::size_t n, uint64_t q, uint64_t cap,
                 const std::function<void(const BaseMatrix&)>& fn) {
    TqEnumerator en(k, n, q, cap);
    while (auto e = en.next()) fn(*e);
}

}  // namespace gab
