#include <doctest.h>

#include "homext/fixtures.hpp"

using namespace homext;

namespace {

bool same_failures(const Report& a, const Report& b) {
    if (a.checks().size() != b.checks().size()) return false;
    for (std::size_t i = 0; i < a.checks().size(); ++i) {
        const Check &x = a.checks()[i], &y = b.checks()[i];
        if (x.name != y.name || x.evaluated != y.evaluated || x.failed != y.failed) return false;
        if (x.witnesses.size() != y.witnesses.size()) return false;
        for (std::size_t k = 0; k < x.witnesses.size(); ++k)
            if (x.witnesses[k].tuple != y.witnesses[k].tuple || x.witnesses[k].lhs != y.witnesses[k].lhs)
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("structure builder stores antisymmetric constants") {
    PrimeField F(5);
    StructureBuilder sb(F, 3);
    sb.set(2, 0, 1, 1);  // [e3, e1] = e2
    HomLieAlgebra A = sb.build_untwisted();
    CHECK(A.structure(0, 2, 1) == 4);
    CHECK(A.structure(2, 0, 1) == 1);
    CHECK(A.bracket(unit_vec(3, 0), unit_vec(3, 0)) == Vec{0, 0, 0});
    CHECK(A.basis_names() == std::vector<std::string>{"e1", "e2", "e3"});
}

TEST_CASE("heisenberg dual: brackets, center and axioms") {
    HeisenbergDual h = build_heisenberg_dual();
    const PrimeField& F = h.V.field();
    CHECK(h.V.bracket_basis(0, 1) == unit_vec(6, 2));
    CHECK(h.V.bracket_basis(0, 5) == unit_vec(6, 4));
    CHECK(h.V.bracket_basis(1, 5) == unit_vec(6, 3));
    CHECK(center(h.V) == Subspace::span(F, 6, {unit_vec(6, 2), unit_vec(6, 3), unit_vec(6, 4)}));
    CHECK(verify_hom_lie(h.V).ok());
    CHECK(verify_quadratic(h.V, h.B).ok());
    CHECK(verify_derivation(h.V, h.D).ok());
    CHECK(d_invariant(F, h.B, h.D.mat));
}

TEST_CASE("psl3 structure constants come from the matrix model") {
    Psl3 s = build_psl3();
    // [x1, y1] = h1 and [x1, x2] = x3
    CHECK(s.g.bracket_basis(1, 4) == unit_vec(7, 0));
    CHECK(s.g.bracket_basis(1, 2) == unit_vec(7, 3));
    // h2 = [x2, y2] equals h1 modulo scalars in characteristic 3
    CHECK(s.g.bracket_basis(2, 5) == unit_vec(7, 0));
    CHECK(s.B.gram == psl3_expected_gram());
    CHECK(verify_hom_lie(s.g).ok());
    CHECK(verify_quadratic(s.g, s.B).ok());
    for (const auto& [name, D] : s.D) {
        CAPTURE(name);
        CHECK(verify_derivation(s.g, D).ok());
        CHECK(d_invariant(s.g.field(), s.B, D.mat));
    }
}

TEST_CASE("a corrupted constant is reported with its Jacobi triple") {
    HeisenbergDual h = build_heisenberg_dual();
    // [x, y] = z + x breaks the Jacobi identity
    HomLieAlgebra M = h.V.with_constant(0, 1, 0, 1);
    Report r = verify_hom_lie(M);
    CHECK_FALSE(r.ok());
    const Check* j = r.find("hom_jacobi");
    REQUIRE(j);
    CHECK(j->failed > 0);
    REQUIRE_FALSE(j->witnesses.empty());
    CHECK(j->witnesses[0].tuple.size() == 3);
}

TEST_CASE("serial and parallel verification agree exactly") {
    TwistedPsl3 t = build_twisted_psl3();
    HomLieAlgebra M = t.V.with_constant(1, 2, 3, 2).with_constant(0, 4, 4, 1);
    CHECK(same_failures(verify_hom_lie(M, Exec::Serial), verify_hom_lie(M, Exec::Parallel)));
    CHECK(same_failures(verify_quadratic(M, t.B, Exec::Serial), verify_quadratic(M, t.B, Exec::Parallel)));
}

TEST_CASE("quadratic checks catch a bad form") {
    HeisenbergDual h = build_heisenberg_dual();
    BilinearForm B = h.B;
    B.gram(0, 1) = 1;
    Report r = verify_quadratic(h.V, B);
    CHECK_FALSE(r.find("symmetry")->passed());
    BilinearForm Z{Mat(6, 6)};
    CHECK_FALSE(verify_quadratic(h.V, Z).find("nondegeneracy")->passed());
}

TEST_CASE("d-invariance in characteristic 2 needs B(x, Dx) = 0") {
    PrimeField F(2);
    BilinearForm B{Mat::from_rows(2, {{0, 1}, {1, 0}})};
    CHECK(d_invariant(F, B, Mat::identity(2)));
    // B(x, Dx) for x = e1 + e2 and D = e1 -> e2 is 1
    CHECK_FALSE(d_invariant(F, B, Mat::from_rows(2, {{0, 0}, {1, 0}})));
}

TEST_CASE("change of basis round trip") {
    TwistedPsl3 t = build_twisted_psl3();
    const PrimeField& F = t.V.field();
    Mat T = Mat::identity(7);
    T(0, 3) = 1;
    T(2, 5) = 2;
    auto Ti = inverse(F, T);
    REQUIRE(Ti);
    HomLieAlgebra C = change_basis(t.V, T, *Ti);
    CHECK(verify_hom_lie(C).ok());
    HomLieAlgebra back = change_basis(C, *Ti, T);
    CHECK(back.same_structure(t.V));
    BilinearForm CB = change_basis(F, t.B, T);
    CHECK(verify_quadratic(C, CB).ok());
}

TEST_CASE("orthogonal complements and ideals") {
    HeisenbergDual h = build_heisenberg_dual();
    const PrimeField& F = h.V.field();
    Subspace Z = center(h.V);
    CHECK(is_ideal(h.V, Z));
    Subspace Zp = orth(F, h.B, Z);
    CHECK(Zp.dim() == 3);
    CHECK(Zp.contains(F, unit_vec(6, 2)));
    CHECK_FALSE(is_nondegenerate_ideal(h.V, h.B, Z));
    CHECK(is_nondegenerate_ideal(h.V, h.B, Subspace::full(6)));
}
