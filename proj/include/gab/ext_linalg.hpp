#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gab/field_tower.hpp"

namespace gab {

/// Counts F_{q^m} operations performed by instrumented routines.
struct OpCounter {
    uint64_t mul = 0;
    uint64_t add = 0;
    uint64_t inv = 0;
    uint64_t frob = 0;
    uint64_t total() const { return mul + add + inv + frob; }
};

/// Dense matrix over F_{q^m}; immutable value semantics (copy freely).
class Matrix {
  public:
    Matrix(const FieldTower& tw, std::size_t rows, std::size_t cols);
    static Matrix identity(const FieldTower& tw, std::size_t n);
    static Matrix from_rows(const FieldTower& tw,
                            const std::vector<std::vector<Element>>& rows);

    const FieldTower& tower() const { return *tw_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Element operator()(std::size_t i, std::size_t j) const {
        return Element(*tw_, a_[i * cols_ + j]);
    }
    uint64_t code_at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Element& x);
    void set_code(std::size_t i, std::size_t j, uint64_t code) { a_[i * cols_ + j] = code; }

    std::vector<Element> row(std::size_t i) const;
    std::vector<Element> col(std::size_t j) const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    /// Columns of `this` followed by columns of `o`.
    Matrix hjoin(const Matrix& o) const;
    Matrix col_slice(std::size_t first, std::size_t last) const;  // [first, last)

    /// Entrywise θ^s(X) - X.
    Matrix phi(int64_t s, OpCounter* ops = nullptr) const;

    /// Key with a stable byte representation, for row-space dedup maps.
    std::string byte_key() const;

  private:
    const FieldTower* tw_;
    std::size_t rows_, cols_;
    std::vector<uint64_t> a_;
};

struct RrefResult {
    Matrix r;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gaussian elimination (leftmost pivot column,
/// topmost nonzero row; arithmetic is exact so there is no pivot strategy).
RrefResult rref(const Matrix& m, OpCounter* ops = nullptr);

std::size_t rank(const Matrix& m);

Element determinant(const Matrix& m);

/// Inverse of a square matrix; throws singular_system.
Matrix inverse(const Matrix& m);

/// dim_{F_q} of the span of the entries.
std::size_t q_rank(std::span<const Element> v);
Subspace q_support(std::span<const Element> v);

/// k×n s-Moore matrix: row i is θ^{is} applied entrywise to v.
Matrix moore_matrix(std::span<const Element> v, std::size_t k, int64_t s);

/// True iff every minor of every size is nonzero. Guarded to 6×6.
bool superregular(const Matrix& m);

/// Matrix over F_q, stored as labels; lifts into any tower with that q.
class BaseMatrix {
  public:
    BaseMatrix(uint64_t q, std::size_t rows, std::size_t cols);
    static BaseMatrix from_rows(uint64_t q, const std::vector<std::vector<uint32_t>>& rows);

    uint64_t q() const { return q_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, uint32_t label);

    Matrix lift(const FieldTower& tw) const;
    bool operator==(const BaseMatrix& o) const;

    bool is_zero() const;
    bool is_hankel() const;    // constant anti-diagonals
    bool is_toeplitz() const;  // constant diagonals

  private:
    uint64_t q_;
    std::size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

/// Number of k-dimensional subspaces of F_q^n; exact, throws too_large on
/// uint64 overflow.
uint64_t gaussian_binomial(unsigned n, unsigned k, uint64_t q);

/// Enumerates T_q(k,n): all full-rank k×n matrices over F_q in reduced row
/// echelon form, each exactly once. Order: pivot-column sets lexicographic,
/// free entries in odometer order.
class TqEnumerator {
  public:
    TqEnumerator(std::size_t k, std::size_t n, uint64_t q, uint64_t cap = 1'000'000);

    uint64_t total() const { return total_; }
    /// Next matrix, or nullopt when exhausted.
    std::optional<BaseMatrix> next();

  private:
    std::size_t k_, n_;
    uint64_t q_, total_;
    std::vector<std::size_t> pivots_;      // current pivot-column combination
    std::vector<std::size_t> free_pos_;    // flattened free positions for pivots_
    std::vector<uint32_t> odo_;            // odometer over free entries
    bool done_ = false;
    bool fresh_combo_ = true;

    void compute_free_positions();
    bool advance_pivots();
};

/// Convenience: run fn over every E in T_q(k,n).
void for_each_Tq(std::size_t k, std::size_t n, uint64_t q, uint64_t cap,
                 const std::function<void(const BaseMatrix&)>& fn);

}  // namespace gab
