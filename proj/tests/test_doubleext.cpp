#include <doctest.h>

#include <functional>

#include "homext/fixtures.hpp"

using namespace homext;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("heisenberg double extension brackets") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    ExtensionFrame fr = L.frame();
    REQUIRE(L.algebra.dim() == 8);
    // [e*, x] = Dx = x, [x, x*] = B(Dx, x*) e
    CHECK(L.algebra.bracket_basis(fr.e_star(), fr.v(0)) == unit_vec(8, fr.v(0)));
    Vec xx = L.algebra.bracket_basis(fr.v(0), fr.v(3));
    CHECK(xx[fr.e()] == 1);
    CHECK(L.algebra.bracket_basis(fr.e(), fr.v(1)) == Vec(8, 0));
    CHECK(verify_hom_lie(L.algebra).ok());
    CHECK(verify_quadratic(L.algebra, L.form).ok());
    CHECK(center(L.algebra).contains(L.base.field(), unit_vec(8, fr.e())));
}

TEST_CASE("heisenberg 2-map extends") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    CHECK(check_pextension_data(L, h.P, h.pext, VerifyMode::exhaustive()).ok());
    PStructure P = extend_pstructure(L, h.P, h.pext, VerifyMode::exhaustive());
    CHECK(verify_pstructure(L.algebra, P, VerifyMode::exhaustive()).ok());
    ExtensionFrame fr = L.frame();
    // e^[2] = u0 + m e with u0 = z
    Vec ee = unit_vec(8, fr.e());
    ee[fr.v(2)] = 1;
    CHECK(P.images[fr.e()] == ee);
}

TEST_CASE("abelian toy over GF(3) is an involutive extension") {
    AbelianToy toy = build_abelian_p3();
    CHECK(check_extension_data(toy.V, toy.B, toy.ext).ok());
    CHECK(is_involutive_twist(toy.V, toy.B, toy.ext));
    DoubleExtension L = double_extend(toy.V, toy.B, toy.ext);
    const PrimeField& F = L.base.field();
    CHECK(matmul(F, L.algebra.alpha(), L.algebra.alpha()) == Mat::identity(4));
    CHECK(verify_hom_lie(L.algebra).ok());
    CHECK(verify_quadratic(L.algebra, L.form).ok());

    DoubleExtensionData d = toy.ext;
    d.lambda0 = 0;
    CHECK_FALSE(is_involutive_twist(toy.V, toy.B, d));
}

TEST_CASE("bad extension data is rejected with named checks") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtensionData d = h.ext;
    d.D.mat(0, 1) = 1;  // Dy picks up x: no longer B-skew
    Report r = check_extension_data(h.V, h.B, d);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.find("D_invariant")->passed());
    CHECK_THROWS_AS(double_extend(h.V, h.B, d), PreconditionFailed);

    AbelianToy toy = build_abelian_p3();
    DoubleExtensionData e = toy.ext;
    e.estar_norm = 1;
    CHECK_FALSE(check_extension_data(toy.V, toy.B, e).find("estar_isotropic")->passed());

    DoubleExtensionData s = h.ext;
    s.x0 = Vec(5, 0);
    CHECK(code_of([&] { check_extension_data(h.V, h.B, s); }) == ErrorCode::DimMismatch);
}

TEST_CASE("a wrong p-property witness fails the p-extension checks") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    PExtensionData pe = h.pext;
    pe.xi = 0;
    CHECK_FALSE(check_pextension_data(L, h.P, pe).find("p_property")->passed());
    pe = h.pext;
    pe.u0 = unit_vec(6, 0);
    Report r = check_pextension_data(L, h.P, pe);
    CHECK_FALSE(r.find("u0_kernel")->passed());
    CHECK_FALSE(r.find("u0_central")->passed());
    CHECK_THROWS_AS(extend_pstructure(L, h.P, pe), PreconditionFailed);
}

TEST_CASE("reduce inverts double_extend") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    PStructure P = extend_pstructure(L, h.P, h.pext);
    ReduceResult rr = reduce(L.algebra, L.form, P, unit_vec(8, L.frame().e()));
    CHECK(rr.frame == Mat::identity(8));
    CHECK(rr.reduced.ext.data == h.ext);
    CHECK(rr.reduced.ext.base.same_structure(h.V));
    CHECK(rr.reduced.pdata == h.pext);
    CHECK(rr.reduced.pmap == P);
}

TEST_CASE("reduce works in a shuffled basis") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    const PrimeField& F = L.base.field();
    PStructure P = extend_pstructure(L, h.P, h.pext);
    // cyclic shift of the basis plus a shear
    Mat T(8, 8);
    for (std::size_t j = 0; j < 8; ++j) T((j + 3) % 8, j) = 1;
    T(1, 2) = 1;
    auto Ti = inverse(F, T);
    REQUIRE(Ti);
    HomLieAlgebra C = change_basis(L.algebra, T, *Ti);
    BilinearForm CB = change_basis(F, L.form, T);
    PStructure CP;
    for (std::size_t j = 0; j < 8; ++j) CP.images.push_back(matvec(F, *Ti, eval_p(L.algebra, P, T.column(j))));
    Vec e = matvec(F, *Ti, unit_vec(8, 7));
    ReduceResult rr = reduce(C, CB, CP, e);
    CHECK(check_extension_data(rr.reduced.ext.base, rr.reduced.ext.base_form, rr.reduced.ext.data).ok());
    CHECK(rr.reduced.ext.algebra.same_structure(rr.canonical));
    CHECK(rr.reduced.pmap == rr.canonical_pmap);
    CHECK(verify_pstructure(rr.reduced.ext.algebra, rr.reduced.pmap, VerifyMode::exhaustive()).ok());
}

TEST_CASE("reduce errors") {
    HeisenbergDual h = build_heisenberg_dual();
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    PStructure P = extend_pstructure(L, h.P, h.pext);
    CHECK(code_of([&] { reduce(L.algebra, L.form, P, Vec(8, 0)); }) == ErrorCode::NotCentral);
    CHECK(code_of([&] { reduce(L.algebra, L.form, P, unit_vec(8, 0)); }) == ErrorCode::NotCentral);
    PrimeField F(2);
    HomLieAlgebra one = StructureBuilder(F, 1).build_untwisted();
    PStructure P1{{Vec{0}}};
    CHECK(code_of([&] { reduce(one, BilinearForm{Mat::identity(1)}, P1, Vec{1}); }) == ErrorCode::DegenerateFrame);
    CHECK(code_of([&] { reduce(L.algebra, L.form, P, Vec(3, 0)); }) == ErrorCode::DimMismatch);
}

TEST_CASE("P is homogeneous of degree p on psl3_alpha D3") {
    TwistedPsl3 t = build_twisted_psl3();
    const PrimeField& F = t.V.field();
    const Mat& D = t.D[2].second.mat;
    Vec Pb(7, 0);
    for (std::size_t i = 0; i < 200; ++i) {
        SplitMix64 rng = SplitMix64::for_sample(23, i);
        Vec v = rng.vec(F, 7);
        Scalar k = static_cast<Scalar>(1 + i % 2);
        CHECK(eval_P(t.V, t.B, D, Pb, vec_scale(F, k, v)) == F.mul(F.pow(k, 3), eval_P(t.V, t.B, D, Pb, v)));
    }
}

TEST_CASE("psl3_alpha extension by D3 is restricted") {
    TwistedPsl3 t = build_twisted_psl3();
    auto [d, pe] = psl3_extension_data(t, 2);
    DoubleExtension L = double_extend(t.V, t.B, d);
    CHECK(verify_hom_lie(L.algebra).ok());
    CHECK(verify_quadratic(L.algebra, L.form).ok());
    PStructure P = extend_pstructure(L, t.P, pe);
    CHECK(verify_pstructure(L.algebra, P).ok());
}

TEST_CASE("extension by a one-dimensional algebra is the double extension") {
    HeisenbergDual h = build_heisenberg_dual();
    const PrimeField& F = h.V.field();
    AlgebraExtensionData x{StructureBuilder(F, 1).build_untwisted(), {h.D.mat}, BilinearForm{Mat(1, 1)}};
    CHECK(check_algebra_extension_data(h.V, h.B, x).ok());
    auto [A, B] = extend_by_algebra(h.V, h.B, x);
    DoubleExtension L = double_extend(h.V, h.B, h.ext);
    // A* comes first and A last, so e* and e trade places
    Mat S = Mat::identity(8);
    S(0, 0) = S(7, 7) = 0;
    S(0, 7) = S(7, 0) = 1;
    CHECK(change_basis(A, S, S).same_structure(L.algebra));
    CHECK(change_basis(F, B, S).gram == L.form.gram);

    AlgebraExtensionData bad = x;
    bad.phi[0](0, 1) = 1;
    CHECK_FALSE(check_algebra_extension_data(h.V, h.B, bad).find("phi_skew")->passed());
    CHECK_THROWS_AS(extend_by_algebra(h.V, h.B, bad), PreconditionFailed);
}
