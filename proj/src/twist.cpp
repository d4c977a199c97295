#include "homext/twist.hpp"

namespace homext {

namespace {

void require_alpha(const HomLieAlgebra& g, const TwistData& t) {
    if (t.alpha.rows() != g.dim() || t.alpha.cols() != g.dim()) throw Error(ErrorCode::DimMismatch, "twist shape");
}

} // namespace

Report check_twist_data(const HomLieAlgebra& g, const BilinearForm& B, const TwistData& t) {
    require_alpha(g, t);
    const PrimeField& F = g.field();
    const std::size_t n = g.dim();
    const Mat& a = t.alpha;
    Report rep;
    rep.expect("trivial_input_twist", g.alpha() == Mat::identity(n));
    rep.merge(verify_hom_lie(g), "g.");
    rep.merge(verify_quadratic(g, B), "B.");
    rep.expect("alpha_symmetric", matmul(F, transpose(a), B.gram) == matmul(F, B.gram, a));
    Check& endo = rep.add("bracket_endomorphism");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++endo.evaluated;
            Vec lhs = matvec(F, a, g.bracket_basis(i, j));
            Vec rhs = g.bracket(a.column(i), a.column(j));
            if (lhs != rhs) endo.record({{i, j}, {}, lhs, rhs});
        }
    return rep;
}

std::pair<HomLieAlgebra, BilinearForm> twist_algebra_unchecked(const HomLieAlgebra& g, const BilinearForm& B,
                                                               const TwistData& t) {
    require_alpha(g, t);
    const PrimeField& F = g.field();
    auto table = [&](std::size_t i, std::size_t j) { return matvec(F, t.alpha, g.bracket_basis(i, j)); };
    HomLieAlgebra ga = HomLieAlgebra::from_table(F, g.dim(), table, t.alpha, g.basis_names());
    return {std::move(ga), BilinearForm{matmul(F, transpose(t.alpha), B.gram)}};
}

std::pair<HomLieAlgebra, BilinearForm> twist_algebra(const HomLieAlgebra& g, const BilinearForm& B, const TwistData& t) {
    Report pre = check_twist_data(g, B, t);
    if (!pre.ok()) throw PreconditionFailed("twist data", std::move(pre));
    auto out = twist_algebra_unchecked(g, B, t);
    Report post;
    post.merge(verify_hom_lie(out.first), "g_alpha.");
    post.merge(verify_quadratic(out.first, out.second), "B_alpha.");
    if (!post.ok()) throw PreconditionFailed("twisted algebra fails its axioms", std::move(post));
    return out;
}

PStructure twist_pmap(const HomLieAlgebra& g, const PStructure& P, const TwistData& t) {
    require_alpha(g, t);
    const PrimeField& F = g.field();
    Mat ap = mat_pow(F, t.alpha, F.p() - 1);
    PStructure out;
    for (const Vec& v : P.images) out.images.push_back(matvec(F, ap, v));
    return out;
}

Derivation twist_derivation_unchecked(const HomLieAlgebra& g, const Derivation& D, const TwistData& t) {
    require_alpha(g, t);
    return Derivation{matmul(g.field(), t.alpha, D.mat), 1};
}

Derivation twist_derivation(const HomLieAlgebra& g, const PStructure& P, const Derivation& D, const TwistData& t,
                            const VerifyMode& mode) {
    require_alpha(g, t);
    const PrimeField& F = g.field();
    const std::size_t n = g.dim();
    Report pre;
    pre.expect("trivial_input_twist", g.alpha() == Mat::identity(n));
    pre.expect("involutive", matmul(F, t.alpha, t.alpha) == Mat::identity(n));
    pre.expect("commutes_with_alpha", matmul(F, t.alpha, D.mat) == matmul(F, D.mat, t.alpha));
    pre.merge(verify_derivation(g, Derivation{D.mat, 0}), "D.");
    pre.merge(check_restricted_derivation(g, P, Derivation{D.mat, 0}, mode), "D.");
    auto w = solve_p_property(g, D.mat);
    pre.expect("p_property", w.has_value());
    if (!pre.ok()) throw PreconditionFailed("derivation to twist", std::move(pre));

    Derivation Da = twist_derivation_unchecked(g, D, t);
    auto ga = twist_algebra_unchecked(g, BilinearForm{Mat::identity(n)}, t).first;
    PStructure Pa = twist_pmap(g, P, t);
    Report post;
    post.merge(verify_derivation(ga, Da), "D_alpha.");
    post.merge(check_restricted_derivation(ga, Pa, Da, mode), "D_alpha.");
    post.expect("p_property_inherited", check_p_property(ga, Da.mat, *w));
    if (!post.ok()) throw PreconditionFailed("twisted derivation", std::move(post));
    return Da;
}

} // namespace homext
