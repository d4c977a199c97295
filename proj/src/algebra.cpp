#include "homext/algebra.hpp"

#include <string>

namespace homext {

HomLieAlgebra::HomLieAlgebra(PrimeField field, std::size_t n, std::vector<Scalar> upper, Mat alpha,
                             std::vector<std::string> names)
    : field_(field), n_(n), upper_(std::move(upper)), alpha_(std::move(alpha)), names_(std::move(names)) {
    if (upper_.size() != n_ * (n_ ? n_ - 1 : 0) / 2 * n_)
        throw Error(ErrorCode::DimMismatch, "structure tensor size");
    if (alpha_.rows() != n_ || alpha_.cols() != n_) throw Error(ErrorCode::DimMismatch, "twist shape");
    for (Scalar& s : upper_) s %= field_.p();
    if (names_.empty())
        for (std::size_t i = 0; i < n_; ++i) names_.push_back("e" + std::to_string(i + 1));
    if (names_.size() != n_) throw Error(ErrorCode::DimMismatch, "basis name count");
    ad_.assign(n_, Mat(n_, n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) ad_[i](k, j) = structure(i, j, k);
}

HomLieAlgebra HomLieAlgebra::from_table(PrimeField field, std::size_t n, const BracketTable& table, Mat alpha,
                                        std::vector<std::string> names) {
    std::vector<Scalar> upper(n * (n ? n - 1 : 0) / 2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec v = table(i, j);
            if (v.size() != n) throw Error(ErrorCode::DimMismatch, "bracket table entry");
            for (std::size_t k = 0; k < n; ++k) upper[pair_index(n, i, j) * n + k] = v[k];
        }
    return HomLieAlgebra(field, n, std::move(upper), std::move(alpha), std::move(names));
}

Scalar HomLieAlgebra::structure(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return 0;
    if (i < j) return upper_[pair_index(n_, i, j) * n_ + k];
    return field_.neg(upper_[pair_index(n_, j, i) * n_ + k]);
}

void HomLieAlgebra::check_dim(const Vec& v) const {
    if (v.size() != n_) throw Error(ErrorCode::DimMismatch, "vector of length " + std::to_string(v.size()));
}

Mat HomLieAlgebra::ad(const Vec& x) const {
    check_dim(x);
    std::vector<std::uint64_t> acc(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) acc[r * n_ + c] += static_cast<std::uint64_t>(x[i]) * ad_[i](r, c);
    }
    Mat M(n_, n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) M(r, c) = static_cast<Scalar>(acc[r * n_ + c] % field_.p());
    return M;
}

Vec HomLieAlgebra::bracket(const Vec& x, const Vec& y) const {
    check_dim(x);
    check_dim(y);
    std::vector<std::uint64_t> acc(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        const Mat& a = ad_[i];
        for (std::size_t r = 0; r < n_; ++r) {
            std::uint64_t s = 0;
            for (std::size_t c = 0; c < n_; ++c) s += static_cast<std::uint64_t>(a(r, c)) * y[c];
            acc[r] += static_cast<std::uint64_t>(x[i]) * (s % field_.p());
        }
    }
    Vec out(n_);
    for (std::size_t r = 0; r < n_; ++r) out[r] = static_cast<Scalar>(acc[r] % field_.p());
    return out;
}

bool HomLieAlgebra::same_structure(const HomLieAlgebra& o) const {
    return field_ == o.field_ && n_ == o.n_ && upper_ == o.upper_ && alpha_ == o.alpha_;
}

HomLieAlgebra HomLieAlgebra::with_constant(std::size_t i, std::size_t j, std::size_t k, Scalar value) const {
    std::vector<Scalar> up = upper_;
    up.at(pair_index(n_, i, j) * n_ + k) = value % field_.p();
    return HomLieAlgebra(field_, n_, std::move(up), alpha_, names_);
}

HomLieAlgebra HomLieAlgebra::with_alpha(Mat alpha) const {
    return HomLieAlgebra(field_, n_, upper_, std::move(alpha), names_);
}

StructureBuilder::StructureBuilder(PrimeField field, std::size_t n)
    : field_(field), n_(n), upper_(n * (n ? n - 1 : 0) / 2 * n, 0) {}

void StructureBuilder::set(std::size_t i, std::size_t j, std::size_t k, std::int64_t c) {
    Scalar v = field_.from_int(c);
    if (i == j) {
        if (v != 0) throw Error(ErrorCode::PreconditionFailed, "[e_i, e_i] must vanish");
        return;
    }
    if (i < j) upper_[HomLieAlgebra::pair_index(n_, i, j) * n_ + k] = v;
    else upper_[HomLieAlgebra::pair_index(n_, j, i) * n_ + k] = field_.neg(v);
}

void StructureBuilder::set(std::size_t i, std::size_t j, const Vec& value) {
    for (std::size_t k = 0; k < n_; ++k) set(i, j, k, value.at(k));
}

HomLieAlgebra StructureBuilder::build(Mat alpha, std::vector<std::string> names) const {
    return HomLieAlgebra(field_, n_, upper_, std::move(alpha), std::move(names));
}

HomLieAlgebra StructureBuilder::build_untwisted(std::vector<std::string> names) const {
    return build(Mat::identity(n_), std::move(names));
}

Scalar BilinearForm::eval(const PrimeField& F, const Vec& x, const Vec& y) const {
    return dot(F, x, matvec(F, gram, y));
}

Subspace Subspace::span(const PrimeField& F, std::size_t ambient, const std::vector<Vec>& vectors) {
    if (vectors.empty()) return zero(ambient);
    Echelon E = rref(F, Mat::from_rows(ambient, vectors));
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < E.pivots.size(); ++r) basis.push_back(E.reduced.row(r));
    return Subspace(ambient, std::move(basis));
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < ambient; ++i) basis.push_back(unit_vec(ambient, i));
    return Subspace(ambient, std::move(basis));
}

bool Subspace::contains(const PrimeField& F, const Vec& v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::DimMismatch, "subspace membership");
    // Reduce v against the echelon basis.
    Vec r = v;
    for (const Vec& b : basis_) {
        std::size_t lead = 0;
        while (b[lead] == 0) ++lead;
        if (r[lead]) vec_axpy(F, r, F.neg(r[lead]), b);
    }
    return is_zero(r);
}

// ---- verifiers ----

Report verify_hom_lie(const HomLieAlgebra& A, Exec exec) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    Report rep;

    Check& alt = rep.add("alternating");
    for (std::size_t i = 0; i < n; ++i) {
        ++alt.evaluated;
        Vec v = A.bracket_basis(i, i);
        if (!is_zero(v)) alt.record({{i, i}, {}, v, Vec(n, 0)});
    }
    Check& anti = rep.add("antisymmetry");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++anti.evaluated;
            Vec a = A.bracket_basis(i, j), b = vec_neg(F, A.bracket_basis(j, i));
            if (a != b) anti.record({{i, j}, {}, a, b});
        }

    std::vector<Mat> ad_alpha(n);
    std::vector<Vec> alpha_e(n);
    for (std::size_t i = 0; i < n; ++i) {
        alpha_e[i] = A.alpha().column(i);
        ad_alpha[i] = A.ad(alpha_e[i]);
    }

    run_check(exec, rep.add("hom_jacobi"), n * n * n, [&](std::size_t t, std::vector<Failure>& out) {
        std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
        Vec s = matvec(F, ad_alpha[i], A.bracket_basis(j, k));
        s = vec_add(F, s, matvec(F, ad_alpha[j], A.bracket_basis(k, i)));
        s = vec_add(F, s, matvec(F, ad_alpha[k], A.bracket_basis(i, j)));
        if (!is_zero(s)) out.push_back({{i, j, k}, {}, s, Vec(n, 0)});
    });

    run_check(exec, rep.add("multiplicativity"), n * n, [&](std::size_t t, std::vector<Failure>& out) {
        std::size_t i = t / n, j = t % n;
        Vec lhs = A.twist(A.bracket_basis(i, j));
        Vec rhs = matvec(F, ad_alpha[i], alpha_e[j]);
        if (lhs != rhs) out.push_back({{i, j}, {}, lhs, rhs});
    });
    return rep;
}

Report verify_quadratic(const HomLieAlgebra& A, const BilinearForm& B, Exec exec) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    const Mat& G = B.gram;
    Report rep;
    if (G.rows() != n || G.cols() != n) throw Error(ErrorCode::DimMismatch, "Gram matrix shape");

    Check& sym = rep.add("symmetry");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++sym.evaluated;
            if (G(i, j) != G(j, i)) sym.record({{i, j}, {}, {G(i, j)}, {G(j, i)}});
        }

    Check& nd = rep.add("nondegeneracy");
    nd.evaluated = 1;
    std::size_t r = rank(F, G);
    if (r != n) nd.record({{}, {}, {static_cast<Scalar>(r)}, {static_cast<Scalar>(n)}});

    // B([e_i,e_j],e_k) = (G^T [e_i,e_j])_k and B(e_i,[e_j,e_k]) = (G [e_j,e_k])_i.
    std::vector<Vec> left(n * n), right(n * n);
    Mat Gt = transpose(G);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            left[i * n + j] = matvec(F, Gt, A.bracket_basis(i, j));
            right[i * n + j] = matvec(F, G, A.bracket_basis(i, j));
        }
    run_check(exec, rep.add("invariance"), n * n * n, [&](std::size_t t, std::vector<Failure>& out) {
        std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
        Scalar lhs = left[i * n + j][k];
        Scalar rhs = right[j * n + k][i];
        if (lhs != rhs) out.push_back({{i, j, k}, {}, {lhs}, {rhs}});
    });

    Check& asym = rep.add("alpha_symmetric");
    Mat GA = matmul(F, G, A.alpha());                  // B(e_i, alpha e_j)
    Mat AG = matmul(F, transpose(A.alpha()), G);       // B(alpha e_i, e_j)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ++asym.evaluated;
            if (AG(i, j) != GA(i, j)) asym.record({{i, j}, {}, {AG(i, j)}, {GA(i, j)}});
        }
    return rep;
}

Report verify_derivation(const HomLieAlgebra& A, const Derivation& D) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    Report rep;
    if (D.mat.rows() != n || D.mat.cols() != n) throw Error(ErrorCode::DimMismatch, "derivation shape");
    Mat DA = matmul(F, D.mat, A.alpha()), AD = matmul(F, A.alpha(), D.mat);
    Check& com = rep.add("commutes_with_alpha");
    com.evaluated = 1;
    if (DA != AD) com.record({{}, {}, {}, {}});

    Mat ak = A.alpha_power(D.degree);
    Check& rule = rep.add("derivation_rule");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ++rule.evaluated;
            Vec lhs = matvec(F, D.mat, A.bracket_basis(i, j));
            Vec rhs = vec_add(F, A.bracket(D.mat.column(i), ak.column(j)), A.bracket(ak.column(i), D.mat.column(j)));
            if (lhs != rhs) rule.record({{i, j}, {}, lhs, rhs});
        }
    return rep;
}

Subspace center(const HomLieAlgebra& A) {
    const std::size_t n = A.dim();
    Mat stacked(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) stacked(j * n + r, c) = A.ad_basis(j)(r, c);
    return Subspace::span(A.field(), n, kernel(A.field(), stacked));
}

Subspace orth(const PrimeField& F, const BilinearForm& B, const Subspace& S) {
    const std::size_t n = S.ambient();
    if (S.dim() == 0) return Subspace::full(n);
    std::vector<Vec> rows;
    for (const Vec& s : S.basis()) rows.push_back(matvec(F, B.gram, s));
    return Subspace::span(F, n, kernel(F, Mat::from_rows(n, rows)));
}

bool is_ideal(const HomLieAlgebra& A, const Subspace& S) {
    const PrimeField& F = A.field();
    for (const Vec& b : S.basis()) {
        if (!S.contains(F, A.twist(b))) return false;
        Mat adb = A.ad(b);
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (!S.contains(F, adb.column(j))) return false;
    }
    return true;
}

bool is_nondegenerate_ideal(const HomLieAlgebra& A, const BilinearForm& B, const Subspace& S) {
    if (!is_ideal(A, S)) return false;
    const PrimeField& F = A.field();
    std::size_t d = S.dim();
    Mat R(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) R(i, j) = B.eval(F, S.basis()[i], S.basis()[j]);
    return rank(F, R) == d;
}

bool d_invariant(const PrimeField& F, const BilinearForm& B, const Mat& D) {
    const std::size_t n = D.rows();
    // M(i,j) = B(D e_i, e_j)
    Mat M = matmul(F, transpose(D), B.gram);
    if (F.p() == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            if (M(i, i) != 0) return false;
            for (std::size_t j = i + 1; j < n; ++j)
                if (M(i, j) != M(j, i)) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (F.add(M(i, j), M(j, i)) != 0) return false;
    return true;
}

HomLieAlgebra change_basis(const HomLieAlgebra& A, const Mat& T, const Mat& T_inv) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    std::vector<Vec> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = T.column(i);
    auto table = [&](std::size_t i, std::size_t j) { return matvec(F, T_inv, A.bracket(cols[i], cols[j])); };
    Mat alpha = matmul(F, T_inv, matmul(F, A.alpha(), T));
    return HomLieAlgebra::from_table(F, n, table, alpha);
}

BilinearForm change_basis(const PrimeField& F, const BilinearForm& B, const Mat& T) {
    return BilinearForm{matmul(F, transpose(T), matmul(F, B.gram, T))};
}

} // namespace homext
