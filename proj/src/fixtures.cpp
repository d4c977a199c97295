#include "homext/fixtures.hpp"

#include <array>
#include <stdexcept>
#include <tuple>

namespace homext {

namespace {

Mat diag(const PrimeField& F, const std::vector<std::int64_t>& d) {
    Mat M(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) M(i, i) = F.from_int(d[i]);
    return M;
}

Mat symmetric_gram(const PrimeField& F, std::size_t n,
                   const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& entries) {
    Mat G(n, n);
    for (auto [i, j, v] : entries) {
        G(i, j) = F.from_int(v);
        G(j, i) = F.from_int(v);
    }
    return G;
}

// 3x3 matrices over GF(3), row-major.
using M3 = std::array<Scalar, 9>;

M3 m3_unit(std::size_t i, std::size_t j) {
    M3 m{};
    m[i * 3 + j] = 1;
    return m;
}

M3 m3_mul(const PrimeField& F, const M3& a, const M3& b) {
    M3 c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) c[i * 3 + j] = F.add(c[i * 3 + j], F.mul(a[i * 3 + k], b[k * 3 + j]));
    return c;
}

M3 m3_commutator(const PrimeField& F, const M3& a, const M3& b) {
    M3 ab = m3_mul(F, a, b), ba = m3_mul(F, b, a), c{};
    for (std::size_t i = 0; i < 9; ++i) c[i] = F.sub(ab[i], ba[i]);
    return c;
}

Scalar m3_trace(const PrimeField& F, const M3& a) { return F.add(F.add(a[0], a[4]), a[8]); }

struct Psl3Model {
    PrimeField F{3};
    std::vector<M3> basis;
    Mat coords;  // columns: basis matrices, then the identity

    Psl3Model() {
        M3 x1 = m3_unit(0, 1), x2 = m3_unit(1, 2), y1 = m3_unit(1, 0), y2 = m3_unit(2, 1);
        M3 x3 = m3_commutator(F, x1, x2), y3 = m3_commutator(F, y1, y2);
        M3 h1 = m3_commutator(F, x1, y1);
        basis = {h1, x1, x2, x3, y1, y2, y3};
        std::vector<Vec> cols;
        for (const M3& b : basis) cols.emplace_back(b.begin(), b.end());
        M3 id{};
        id[0] = id[4] = id[8] = 1;
        cols.emplace_back(id.begin(), id.end());
        coords = Mat::from_columns(9, cols);
    }

    // Coordinates modulo the scalar matrices.
    Vec reduce(const M3& m) const {
        auto x = solve(F, coords, Vec(m.begin(), m.end()));
        if (!x) throw std::logic_error("psl3 model: matrix outside sl3 + scalars");
        x->pop_back();
        return *x;
    }
};

Mat from_images(std::size_t n, const std::vector<std::tuple<std::size_t, std::int64_t, std::size_t>>& terms,
                const PrimeField& F) {
    // terms: (target, coefficient, source), so D e_source += c e_target
    Mat D(n, n);
    for (auto [tgt, c, src] : terms) D(tgt, src) = F.add(D(tgt, src), F.from_int(c));
    return D;
}

Scalar lam(const PrimeField& F, const Vec& x, std::size_t i) { return x[i - 1] % F.p(); }

Scalar poly3(const std::vector<std::pair<std::int64_t, std::array<std::size_t, 3>>>& monomials, const Vec& x) {
    PrimeField F(3);
    Scalar s = 0;
    for (const auto& [c, idx] : monomials) {
        Scalar t = F.from_int(c);
        for (std::size_t i : idx) t = F.mul(t, lam(F, x, i));
        s = F.add(s, t);
    }
    return s;
}

} // namespace

HeisenbergDual build_heisenberg_dual() {
    PrimeField F(2);
    const std::size_t n = 6;
    // x y z x* y* z*
    StructureBuilder sb(F, n);
    sb.set(0, 1, 2, 1);
    sb.set(0, 5, 4, 1);
    sb.set(1, 5, 3, 1);
    HomLieAlgebra V = sb.build_untwisted({"x", "y", "z", "x*", "y*", "z*"});
    BilinearForm B{symmetric_gram(F, n, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}})};
    PStructure P{std::vector<Vec>(n, Vec(n, 0))};
    P.images[2] = unit_vec(n, 2);
    Derivation D{diag(F, {1, 1, 0, 1, 1, 0}), 1};

    DoubleExtensionData ext;
    ext.D = D;
    ext.x0 = Vec(n, 0);
    PExtensionData pe;
    pe.xi = 1;
    pe.a0 = unit_vec(n, 2);
    pe.m = 1;
    pe.l = 1;
    pe.u0 = unit_vec(n, 2);
    pe.P_basis = Vec(n, 0);
    return {V, B, P, D, ext, pe};
}

Psl3 build_psl3() {
    Psl3Model model;
    const PrimeField& F = model.F;
    const std::size_t n = 7;
    auto table = [&](std::size_t i, std::size_t j) {
        return model.reduce(m3_commutator(F, model.basis[i], model.basis[j]));
    };
    HomLieAlgebra g = HomLieAlgebra::from_table(F, n, table, Mat::identity(n),
                                                {"h1", "x1", "x2", "x3", "y1", "y2", "y3"});
    Mat G(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = m3_trace(F, m3_mul(F, model.basis[i], model.basis[j]));
    if (!(G == psl3_expected_gram())) throw std::logic_error("psl3 model: trace form differs from the expected Gram");

    PStructure P{std::vector<Vec>(n, Vec(n, 0))};
    P.images[0] = unit_vec(n, 0);

    // h1 x1 x2 x3 y1 y2 y3 = 0..6
    std::vector<std::pair<std::string, Derivation>> D;
    D.emplace_back("D1", Derivation{from_images(n, {{4, 1, 3}, {6, 1, 1}}, F), 0});
    D.emplace_back("D2", Derivation{from_images(n, {{1, 2, 2}, {5, 1, 4}}, F), 0});
    D.emplace_back("D3", Derivation{from_images(n, {{1, 1, 1}, {3, 1, 3}, {4, 2, 4}, {6, 2, 6}}, F), 0});
    TwistData t{diag(F, {1, -1, -1, 1, -1, -1, 1})};
    return {g, BilinearForm{G}, P, D, t};
}

Mat psl3_expected_gram() {
    PrimeField F(3);
    // (-1) on h1, then x_i paired with y_i through diag(1, 1, -1).
    return symmetric_gram(F, 7, {{0, 0, -1}, {1, 4, 1}, {2, 5, 1}, {3, 6, -1}});
}

std::vector<Psl3TableRow> psl3_table() {
    const std::size_t n = 7;
    std::vector<Psl3TableRow> rows;
    rows.push_back({"D1", 0, Vec(n, 0), [](const Vec& x) {
                        return poly3({{1, {3, 3, 7}}, {2, {1, 5, 3}}, {1, {4, 5, 5}}}, x);
                    }});
    rows.push_back({"D2", 0, Vec(n, 0), [](const Vec& x) {
                        return poly3({{1, {4, 4, 6}}, {2, {1, 2, 4}}, {2, {2, 2, 3}}}, x);
                    }});
    rows.push_back({"D3", 1, Vec(n, 0), [](const Vec& x) {
                        return poly3({{1, {1, 2, 5}}, {1, {4, 6, 5}}, {2, {2, 3, 7}}, {1, {1, 4, 7}}}, x);
                    }});
    return rows;
}

Scalar psl3_P_D1(const Vec& x) { return poly3({{1, {1, 2, 4}}, {1, {2, 2, 3}}, {2, {4, 4, 6}}}, x); }

Scalar psl3_P_D2(const Vec& x) { return poly3({{2, {1, 3, 5}}, {1, {3, 3, 7}}, {1, {4, 5, 5}}}, x); }

TwistedPsl3 build_twisted_psl3() {
    Psl3 s = build_psl3();
    auto [V, B] = twist_algebra_unchecked(s.g, s.B, s.twist);
    PStructure P = twist_pmap(s.g, s.P, s.twist);
    std::vector<std::pair<std::string, Derivation>> D;
    for (const auto& [name, d] : s.D) D.emplace_back(name, twist_derivation_unchecked(s.g, d, s.twist));
    return {V, B, P, D};
}

std::pair<DoubleExtensionData, PExtensionData> psl3_extension_data(const TwistedPsl3& t, std::size_t k) {
    const std::size_t n = t.V.dim();
    DoubleExtensionData d;
    d.D = t.D.at(k).second;
    d.x0 = Vec(n, 0);
    PExtensionData pe;
    auto w = solve_p_property(t.V, d.D.mat);
    if (w) {
        pe.xi = w->xi;
        pe.a0 = w->a0;
    } else {
        pe.a0 = Vec(n, 0);
    }
    pe.m = 1;
    pe.l = 1;
    pe.u0 = Vec(n, 0);
    pe.P_basis = Vec(n, 0);
    return {d, pe};
}

Sl2Toy build_sl2_p5() {
    PrimeField F(5);
    // h e f
    StructureBuilder sb(F, 3);
    sb.set(0, 1, 1, 2);
    sb.set(0, 2, 2, -2);
    sb.set(1, 2, 0, 1);
    HomLieAlgebra g = sb.build_untwisted({"h", "e", "f"});
    BilinearForm B{symmetric_gram(F, 3, {{0, 0, 2}, {1, 2, 1}})};
    TwistData t{diag(F, {1, -1, -1})};
    auto [V, Bt] = twist_algebra_unchecked(g, B, t);
    PStructure P{std::vector<Vec>(3, Vec(3, 0))};
    P.images[0] = unit_vec(3, 0);
    PStructure Pt = twist_pmap(g, P, t);
    Derivation D = twist_derivation_unchecked(g, Derivation{g.ad(unit_vec(3, 0)), 0}, t);
    return {V, Bt, Pt, D};
}

AbelianToy build_abelian_p3() {
    PrimeField F(3);
    StructureBuilder sb(F, 2);
    HomLieAlgebra V = sb.build(diag(F, {-1, -1}), {"a", "b"});
    BilinearForm B{symmetric_gram(F, 2, {{0, 1, 1}})};
    PStructure P{std::vector<Vec>(2, Vec(2, 0))};
    DoubleExtensionData d;
    d.D = Derivation{diag(F, {1, -1}), 1};
    d.x0 = {1, 1};
    d.lambda = 1;
    d.lambda0 = 2;
    PExtensionData pe;
    pe.xi = 1;
    pe.a0 = Vec(2, 0);
    pe.m = 1;
    pe.l = 1;
    pe.u0 = Vec(2, 0);
    pe.P_basis = Vec(2, 0);
    return {V, B, P, d, pe};
}

} // namespace homext
