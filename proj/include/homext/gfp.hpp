#pragma once

// Arithmetic and dense linear algebra over a prime field GF(p).
// p is a runtime value; every routine takes the field explicitly.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "homext/error.hpp"

namespace homext {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

class PrimeField {
public:
    // p must be prime and below 2^16 so products fit in 32 bits.
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    Scalar add(Scalar a, Scalar b) const {
        Scalar s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
    Scalar inv(Scalar a) const;
    Scalar pow(Scalar a, std::uint64_t e) const;
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
    Scalar from_int(std::int64_t v) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

// Dense row-major matrix; acts on column vectors.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Mat identity(std::size_t n);
    static Mat from_columns(std::size_t rows, const std::vector<Vec>& cols);
    static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    void set_column(std::size_t j, const Vec& v);
    bool is_zero() const;

    bool operator==(const Mat& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec vec_add(const PrimeField& F, const Vec& a, const Vec& b);
Vec vec_sub(const PrimeField& F, const Vec& a, const Vec& b);
Vec vec_neg(const PrimeField& F, const Vec& a);
Vec vec_scale(const PrimeField& F, Scalar c, const Vec& a);
void vec_axpy(const PrimeField& F, Vec& y, Scalar c, const Vec& x);
Scalar dot(const PrimeField& F, const Vec& a, const Vec& b);

Vec matvec(const PrimeField& F, const Mat& A, const Vec& x);
Mat matmul(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_add(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_sub(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_scale(const PrimeField& F, Scalar c, const Mat& A);
Mat mat_pow(const PrimeField& F, const Mat& A, std::uint64_t e);
Mat transpose(const Mat& A);

struct Echelon {
    Mat reduced;                      // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Pivot on the first nonzero entry, rows processed top-down.
Echelon rref(const PrimeField& F, const Mat& M);
std::size_t rank(const PrimeField& F, const Mat& M);

// Basis of {v : Mv = 0}, itself in reduced echelon form with leading 1s.
std::vector<Vec> kernel(const PrimeField& F, const Mat& M);

// Some x with Mx = b; free variables are set to 0.
std::optional<Vec> solve(const PrimeField& F, const Mat& M, const Vec& b);
std::optional<Mat> inverse(const PrimeField& F, const Mat& M);

// Vector whose entries are polynomials in a formal scalar k.
class PolyVec {
public:
    PolyVec(std::size_t dim, std::size_t max_degree) : dim_(dim), max_degree_(max_degree) {}
    static PolyVec constant(const Vec& v, std::size_t max_degree);

    std::size_t dim() const { return dim_; }
    std::size_t max_degree() const { return max_degree_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Vec coeff(std::size_t d) const;
    void add_to_coeff(const PrimeField& F, std::size_t d, const Vec& v);
    Vec evaluate(const PrimeField& F, Scalar k) const;

    bool operator==(const PolyVec& o) const = default;

private:
    void trim();

    std::size_t dim_;
    std::size_t max_degree_;
    std::vector<Vec> coeffs_;
};

// The operator constant + k * linear.
struct LinearOp {
    Mat constant;
    Mat linear;
};

// Applies ops[0] first, then ops[1], ...; throws DegreeOverflow when an
// intermediate degree passes v.max_degree().
PolyVec polyvec_apply(const PrimeField& F, const std::vector<LinearOp>& ops, const PolyVec& v);

} // namespace homext
