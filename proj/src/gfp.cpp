#include "homext/gfp.hpp"

#include <string>

namespace homext {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::OddCharRequired: return "OddCharRequired";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::NotPIdeal: return "NotPIdeal";
    case ErrorCode::NonInvertiblePi0: return "NonInvertiblePi0";
    case ErrorCode::ZeroGamma: return "ZeroGamma";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p >= (1u << 16))
        throw Error(ErrorCode::PreconditionFailed, "field order " + std::to_string(p) + " is not a small prime");
}

Scalar PrimeField::inv(Scalar a) const {
    if (a % p_ == 0) throw Error(ErrorCode::ZeroInverse, "inverse of 0");
    return pow(a, p_ - 2);
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1 % p_, b = a % p_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Scalar PrimeField::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<Scalar>(m);
}

// ---- matrices ----

Mat Mat::identity(std::size_t n) {
    Mat I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Mat Mat::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Mat M(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) M.set_column(j, cols[j]);
    return M;
}

Mat Mat::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
    Mat M(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::DimMismatch, "row length");
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

Vec Mat::row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vec Mat::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw Error(ErrorCode::DimMismatch, "column length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Mat::is_zero() const {
    for (Scalar s : data_)
        if (s) return false;
    return true;
}

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

bool is_zero(const Vec& v) {
    for (Scalar s : v)
        if (s) return false;
    return true;
}

static void same_len(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "vector lengths differ");
}

Vec vec_add(const PrimeField& F, const Vec& a, const Vec& b) {
    same_len(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const PrimeField& F, const Vec& a, const Vec& b) {
    same_len(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return r;
}

Vec vec_neg(const PrimeField& F, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
}

Vec vec_scale(const PrimeField& F, Scalar c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

void vec_axpy(const PrimeField& F, Vec& y, Scalar c, const Vec& x) {
    same_len(y, x);
    if (c == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = F.add(y[i], F.mul(c, x[i]));
}

Scalar dot(const PrimeField& F, const Vec& a, const Vec& b) {
    same_len(a, b);
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

Vec matvec(const PrimeField& F, const Mat& A, const Vec& x) {
    if (A.cols() != x.size()) throw Error(ErrorCode::DimMismatch, "matvec");
    Vec r(A.rows(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < A.cols(); ++j) acc += static_cast<std::uint64_t>(A(i, j)) * x[j];
        r[i] = static_cast<Scalar>(acc % F.p());
    }
    return r;
}

Mat matmul(const PrimeField& F, const Mat& A, const Mat& B) {
    if (A.cols() != B.rows()) throw Error(ErrorCode::DimMismatch, "matmul");
    Mat C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < A.cols(); ++k) acc += static_cast<std::uint64_t>(A(i, k)) * B(k, j);
            C(i, j) = static_cast<Scalar>(acc % F.p());
        }
    return C;
}

static void same_shape(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw Error(ErrorCode::DimMismatch, "matrix shapes differ");
}

Mat mat_add(const PrimeField& F, const Mat& A, const Mat& B) {
    same_shape(A, B);
    Mat C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = F.add(A(i, j), B(i, j));
    return C;
}

Mat mat_sub(const PrimeField& F, const Mat& A, const Mat& B) {
    same_shape(A, B);
    Mat C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = F.sub(A(i, j), B(i, j));
    return C;
}

Mat mat_scale(const PrimeField& F, Scalar c, const Mat& A) {
    Mat C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = F.mul(c, A(i, j));
    return C;
}

Mat mat_pow(const PrimeField& F, const Mat& A, std::uint64_t e) {
    if (A.rows() != A.cols()) throw Error(ErrorCode::DimMismatch, "mat_pow on non-square");
    Mat R = Mat::identity(A.rows());
    for (std::uint64_t i = 0; i < e; ++i) R = matmul(F, R, A);
    return R;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

Echelon rref(const PrimeField& F, const Mat& M) {
    Echelon E{M, {}};
    Mat& R = E.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < R.cols() && row < R.rows(); ++col) {
        std::size_t piv = row;
        while (piv < R.rows() && R(piv, col) == 0) ++piv;
        if (piv == R.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R(piv, j), R(row, j));
        Scalar s = F.inv(R(row, col));
        for (std::size_t j = 0; j < R.cols(); ++j) R(row, j) = F.mul(s, R(row, j));
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (i == row || R(i, col) == 0) continue;
            Scalar f = R(i, col);
            for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) = F.sub(R(i, j), F.mul(f, R(row, j)));
        }
        E.pivots.push_back(col);
        ++row;
    }
    return E;
}

std::size_t rank(const PrimeField& F, const Mat& M) { return rref(F, M).pivots.size(); }

std::vector<Vec> kernel(const PrimeField& F, const Mat& M) {
    Echelon E = rref(F, M);
    std::size_t m = M.cols();
    std::vector<bool> is_pivot(m, false);
    for (std::size_t c : E.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        Vec v(m, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < E.pivots.size(); ++r) v[E.pivots[r]] = F.neg(E.reduced(r, f));
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;
    Echelon K = rref(F, Mat::from_rows(m, basis));
    std::vector<Vec> out;
    for (std::size_t r = 0; r < K.pivots.size(); ++r) out.push_back(K.reduced.row(r));
    return out;
}

std::optional<Vec> solve(const PrimeField& F, const Mat& M, const Vec& b) {
    if (M.rows() != b.size()) throw Error(ErrorCode::DimMismatch, "solve");
    Mat aug(M.rows(), M.cols() + 1);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
        aug(i, M.cols()) = b[i];
    }
    Echelon E = rref(F, aug);
    Vec x(M.cols(), 0);
    for (std::size_t r = 0; r < E.pivots.size(); ++r) {
        if (E.pivots[r] == M.cols()) return std::nullopt;
        x[E.pivots[r]] = E.reduced(r, M.cols());
    }
    return x;
}

std::optional<Mat> inverse(const PrimeField& F, const Mat& M) {
    if (M.rows() != M.cols()) throw Error(ErrorCode::DimMismatch, "inverse of non-square");
    std::size_t n = M.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n + i) = 1;
    }
    Echelon E = rref(F, aug);
    if (E.pivots.size() < n || E.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = E.reduced(i, n + j);
    return inv;
}

// ---- PolyVec ----

PolyVec PolyVec::constant(const Vec& v, std::size_t max_degree) {
    PolyVec P(v.size(), max_degree);
    P.coeffs_.push_back(v);
    P.trim();
    return P;
}

Vec PolyVec::coeff(std::size_t d) const {
    if (d < coeffs_.size()) return coeffs_[d];
    return Vec(dim_, 0);
}

void PolyVec::add_to_coeff(const PrimeField& F, std::size_t d, const Vec& v) {
    if (v.size() != dim_) throw Error(ErrorCode::DimMismatch, "PolyVec coefficient");
    if (is_zero(v)) return;
    if (d > max_degree_) throw Error(ErrorCode::DegreeOverflow, "degree " + std::to_string(d));
    if (coeffs_.size() <= d) coeffs_.resize(d + 1, Vec(dim_, 0));
    coeffs_[d] = vec_add(F, coeffs_[d], v);
    trim();
}

Vec PolyVec::evaluate(const PrimeField& F, Scalar k) const {
    Vec r(dim_, 0);
    for (std::size_t d = coeffs_.size(); d-- > 0;) {
        r = vec_scale(F, k, r);
        r = vec_add(F, r, coeffs_[d]);
    }
    return r;
}

void PolyVec::trim() {
    while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
}

PolyVec polyvec_apply(const PrimeField& F, const std::vector<LinearOp>& ops, const PolyVec& v) {
    PolyVec cur = v;
    for (const LinearOp& op : ops) {
        PolyVec next(cur.dim(), cur.max_degree());
        for (int d = 0; d <= cur.degree(); ++d) {
            Vec c = cur.coeff(static_cast<std::size_t>(d));
            next.add_to_coeff(F, static_cast<std::size_t>(d), matvec(F, op.constant, c));
            next.add_to_coeff(F, static_cast<std::size_t>(d) + 1, matvec(F, op.linear, c));
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace homext
