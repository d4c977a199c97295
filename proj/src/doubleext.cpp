#include "homext/doubleext.hpp"

#include <limits>
#include <optional>
#include <string>

namespace homext {

Vec ExtensionFrame::embed(const Vec& v_vec) const {
    if (v_vec.size() != n) throw Error(ErrorCode::DimMismatch, "embed");
    Vec r(dim(), 0);
    for (std::size_t i = 0; i < n; ++i) r[v(i)] = v_vec[i];
    return r;
}

Vec ExtensionFrame::project(const Vec& l_vec) const {
    if (l_vec.size() != dim()) throw Error(ErrorCode::DimMismatch, "project");
    return Vec(l_vec.begin() + 1, l_vec.begin() + 1 + static_cast<std::ptrdiff_t>(n));
}

namespace {

void require_shape(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d) {
    const std::size_t n = V.dim();
    if (B_V.gram.rows() != n || B_V.gram.cols() != n) throw Error(ErrorCode::DimMismatch, "B_V shape");
    if (d.D.mat.rows() != n || d.D.mat.cols() != n) throw Error(ErrorCode::DimMismatch, "D shape");
    if (d.x0.size() != n) throw Error(ErrorCode::DimMismatch, "x0 length");
}

Check& expect_mat(Report& rep, const std::string& name, const Mat& lhs, const Mat& rhs) {
    Check& c = rep.add(name);
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
        ++c.evaluated;
        Vec a = lhs.column(j), b = rhs.column(j);
        if (a != b) c.record({{j}, {}, a, b});
    }
    return c;
}

} // namespace

Report check_extension_data(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d) {
    require_shape(V, B_V, d);
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    const bool two = F.p() == 2;
    const Mat& D = d.D.mat;
    Report rep;
    rep.merge(verify_hom_lie(V), "V.");
    rep.merge(verify_quadratic(V, B_V), "B_V.");
    expect_mat(rep, "V_involutive", matmul(F, V.alpha(), V.alpha()), Mat::identity(n));
    rep.merge(verify_derivation(V, d.D), "D.");
    rep.expect("D_degree_one", d.D.degree == 1);
    rep.expect("D_invariant", d_invariant(F, B_V, D));

    // lambda D + ad x0 = D
    expect_mat(rep, "twist_derivation", mat_add(F, mat_scale(F, d.lambda, D), V.ad(d.x0)), D);
    Vec dx0 = matvec(F, D, d.x0);
    Vec adx0 = V.twist(dx0);
    rep.expect("twist_fixes_Dx0", two ? adx0 == dx0 : adx0 == vec_neg(F, dx0), adx0, dx0);
    Mat D2 = matmul(F, D, D);
    Mat aD2 = matmul(F, V.alpha(), D2), D2a = matmul(F, D2, V.alpha());
    expect_mat(rep, "D_squared", two ? mat_add(F, aD2, D2a) : mat_sub(F, aD2, D2a), V.ad(dx0));
    rep.expect("estar_isotropic", two || d.estar_norm == 0, {d.estar_norm}, {0});
    return rep;
}

DoubleExtension double_extend_unchecked(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d) {
    require_shape(V, B_V, d);
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    const ExtensionFrame fr{n};
    const std::size_t N = fr.dim();
    const Mat& D = d.D.mat;
    // B(D e_i, e_j)
    Mat BD = matmul(F, transpose(D), B_V.gram);

    auto table = [&](std::size_t i, std::size_t j) {
        Vec r(N, 0);
        if (i == fr.e() || j == fr.e()) return r;
        if (i == fr.e_star()) return fr.embed(D.column(j - 1));
        Vec b = fr.embed(V.bracket_basis(i - 1, j - 1));
        b[fr.e()] = BD(i - 1, j - 1);
        return b;
    };

    Mat alpha(N, N);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) alpha(fr.v(k), fr.v(j)) = V.alpha()(k, j);
        alpha(fr.e(), fr.v(j)) = dot(F, d.x0, B_V.gram.column(j));
    }
    alpha(fr.e_star(), fr.e_star()) = d.lambda % F.p();
    for (std::size_t k = 0; k < n; ++k) alpha(fr.v(k), fr.e_star()) = d.x0[k];
    alpha(fr.e(), fr.e_star()) = d.lambda0 % F.p();
    alpha(fr.e(), fr.e()) = d.lambda % F.p();

    std::vector<std::string> names{"e*"};
    for (const std::string& s : V.basis_names()) names.push_back(s);
    names.push_back("e");

    Mat G(N, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G(fr.v(i), fr.v(j)) = B_V.gram(i, j);
    G(fr.e_star(), fr.e()) = G(fr.e(), fr.e_star()) = 1;
    G(fr.e_star(), fr.e_star()) = d.estar_norm % F.p();

    return DoubleExtension{V, B_V, d, HomLieAlgebra::from_table(F, N, table, std::move(alpha), std::move(names)),
                           BilinearForm{std::move(G)}};
}

DoubleExtension double_extend(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d) {
    Report rep = check_extension_data(V, B_V, d);
    if (!rep.ok()) throw PreconditionFailed("double extension data", std::move(rep));
    return double_extend_unchecked(V, B_V, d);
}

bool is_involutive_twist(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d) {
    require_shape(V, B_V, d);
    const PrimeField& F = V.field();
    if (matmul(F, V.alpha(), V.alpha()) != Mat::identity(V.dim())) return false;
    if (F.mul(d.lambda, d.lambda) != 1) return false;
    // alpha^2(e*) = lambda^2 e* + (alpha_V x0 + lambda x0) + (2 lambda lambda0 + B(x0,x0)) e
    if (!is_zero(vec_add(F, V.twist(d.x0), vec_scale(F, d.lambda, d.x0)))) return false;
    Scalar c = F.add(F.mul(F.from_int(2), F.mul(d.lambda, d.lambda0)), B_V.eval(F, d.x0, d.x0));
    return c == 0;
}

Scalar eval_P(const HomLieAlgebra& V, const BilinearForm& B_V, const Mat& D, const Vec& P_basis, const Vec& v) {
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    if (P_basis.size() != n || v.size() != n) throw Error(ErrorCode::DimMismatch, "eval_P");
    const std::uint32_t p = F.p();
    Scalar r = 0;
    if (p == 2) {
        Mat BD = matmul(F, transpose(D), B_V.gram);
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            r = F.add(r, F.mul(F.mul(v[i], v[i]), P_basis[i]));
            for (std::size_t j = i + 1; j < n; ++j) r = F.add(r, F.mul(F.mul(v[i], v[j]), BD(i, j)));
        }
        return r;
    }
    Vec acc(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == 0) continue;
        Vec term(n, 0);
        term[j] = v[j];
        r = F.add(r, F.mul(F.pow(v[j], p), P_basis[j]));
        if (!is_zero(acc))
            for (Scalar s : compute_eta(V, B_V, D, acc, term)) r = F.add(r, s);
        acc[j] = v[j];
    }
    return r;
}

Report check_pextension_data(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe,
                             const VerifyMode& mode) {
    const HomLieAlgebra& V = L.base;
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    const Mat& D = L.data.D.mat;
    if (pe.a0.size() != n || pe.u0.size() != n || pe.P_basis.size() != n)
        throw Error(ErrorCode::DimMismatch, "p-extension data lengths");
    Report rep;
    rep.param("seed", mode.seed);
    rep.param("samples", mode.samples);
    rep.expect("lambda_one", L.data.lambda % F.p() == 1, {L.data.lambda}, {1});
    rep.merge(check_restricted_derivation(V, P_V, L.data.D, mode), "D.");
    rep.expect("p_property", check_p_property(V, D, PPropertyWitness{pe.xi, pe.a0}));
    Vec du0 = matvec(F, D, pe.u0);
    rep.expect("u0_kernel", is_zero(du0), du0, Vec(n, 0));

    Check& cen = rep.add("u0_central");
    for (std::size_t j = 0; j < n; ++j) {
        ++cen.evaluated;
        Vec y = F.p() == 2 ? V.alpha().column(j) : unit_vec(n, j);
        Vec b = V.bracket(pe.u0, y);
        if (!is_zero(b)) cen.record({{j}, {}, b, Vec(n, 0)});
    }

    // P(u+v) = P(u) + P(v) + B(Du, v) for p = 2, + sum eta_i(u, v) for p > 2.
    Check& pol = rep.add("P_polarization");
    auto polar = [&](const Vec& u, const Vec& v, std::vector<std::size_t> tuple) {
        ++pol.evaluated;
        Scalar lhs = eval_P(V, L.base_form, D, pe.P_basis, vec_add(F, u, v));
        Scalar rhs = F.add(eval_P(V, L.base_form, D, pe.P_basis, u), eval_P(V, L.base_form, D, pe.P_basis, v));
        if (F.p() == 2) rhs = F.add(rhs, L.base_form.eval(F, matvec(F, D, u), v));
        else
            for (Scalar s : compute_eta(V, L.base_form, D, u, v)) rhs = F.add(rhs, s);
        if (lhs != rhs) pol.record({std::move(tuple), {u, v}, {lhs}, {rhs}});
    };
    if (F.p() == 2) {
        // Both sides are quadratic in (u, v), so basis pairs decide it.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) polar(unit_vec(n, i), unit_vec(n, j), {i, j});
    } else {
        const std::uint64_t elems = space_size(F.p(), n);
        const std::uint64_t pairs =
            elems > std::numeric_limits<std::uint32_t>::max() ? std::numeric_limits<std::uint64_t>::max() : elems * elems;
        if (mode.enumerates(pairs)) {
            for (std::uint64_t t = 0; t < pairs; ++t)
                polar(element_at(F, n, t % elems), element_at(F, n, t / elems), {static_cast<std::size_t>(t)});
        } else {
            for (std::size_t i = 0; i < mode.samples; ++i) {
                SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
                Vec u = rng.vec(F, n);
                Vec v = rng.vec(F, n);
                polar(u, v, {i});
            }
        }
    }
    return rep;
}

PStructure extend_pstructure_unchecked(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe) {
    const std::size_t n = L.base.dim();
    if (P_V.images.size() != n) throw Error(ErrorCode::DimMismatch, "base p-structure");
    const ExtensionFrame fr = L.frame();
    const PrimeField& F = L.base.field();
    PStructure P;
    P.images.assign(fr.dim(), Vec(fr.dim(), 0));
    Vec& es = P.images[fr.e_star()];
    es = fr.embed(pe.a0);
    es[fr.e()] = pe.l % F.p();
    es[fr.e_star()] = pe.xi % F.p();
    for (std::size_t j = 0; j < n; ++j) {
        Vec img = fr.embed(P_V.images[j]);
        img[fr.e()] = pe.P_basis[j] % F.p();
        P.images[fr.v(j)] = std::move(img);
    }
    Vec& ee = P.images[fr.e()];
    ee = fr.embed(pe.u0);
    ee[fr.e()] = pe.m % F.p();
    return P;
}

PStructure extend_pstructure(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe,
                             const VerifyMode& mode) {
    Report rep = check_pextension_data(L, P_V, pe, mode);
    if (!rep.ok()) throw PreconditionFailed("p-extension data", std::move(rep));
    return extend_pstructure_unchecked(L, P_V, pe);
}

RestrictedExtension read_restricted(DoubleExtension ext, const PStructure& P) {
    const ExtensionFrame fr = ext.frame();
    const std::size_t n = fr.n;
    if (P.images.size() != fr.dim()) throw Error(ErrorCode::DimMismatch, "p-structure");
    PStructure PV;
    PExtensionData pe;
    pe.P_basis.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec& img = P.images[fr.v(j)];
        if (img[fr.e_star()] != 0) throw Error(ErrorCode::FrameMismatch, "p-map of V leaves E* + V");
        PV.images.push_back(fr.project(img));
        pe.P_basis[j] = img[fr.e()];
    }
    const Vec& es = P.images[fr.e_star()];
    pe.xi = es[fr.e_star()];
    pe.a0 = fr.project(es);
    pe.l = es[fr.e()];
    const Vec& ee = P.images[fr.e()];
    if (ee[fr.e_star()] != 0) throw Error(ErrorCode::FrameMismatch, "e^[p] has an e* component");
    pe.m = ee[fr.e()];
    pe.u0 = fr.project(ee);
    PStructure pmap = extend_pstructure_unchecked(ext, PV, pe);
    return RestrictedExtension{std::move(ext), std::move(PV), std::move(pe), std::move(pmap)};
}

ReduceResult reduce(const HomLieAlgebra& L, const BilinearForm& B_L, const PStructure& P_L, const Vec& e) {
    const PrimeField& F = L.field();
    const std::size_t N = L.dim();
    if (e.size() != N) throw Error(ErrorCode::DimMismatch, "central vector");
    if (B_L.gram.rows() != N || B_L.gram.cols() != N) throw Error(ErrorCode::DimMismatch, "form shape");
    if (P_L.images.size() != N) throw Error(ErrorCode::DimMismatch, "p-structure");
    if (N < 2) throw Error(ErrorCode::DegenerateFrame, "algebra too small to reduce");
    if (is_zero(e)) throw Error(ErrorCode::NotCentral, "zero vector");
    if (!center(L).contains(F, e)) throw Error(ErrorCode::NotCentral, "e is not central");
    if (B_L.eval(F, e, e) != 0) throw Error(ErrorCode::DegenerateFrame, "B(e, e) != 0");

    Subspace Eperp = orth(F, B_L, Subspace::span(F, N, {e}));
    if (!is_ideal(L, Eperp)) throw Error(ErrorCode::NotPIdeal, "e-orthogonal is not an ideal");
    for (const Vec& b : Eperp.basis())
        if (!Eperp.contains(F, eval_p(L, P_L, b)))
            throw Error(ErrorCode::NotPIdeal, "e-orthogonal is not closed under the p-map");

    Mat row = Mat::from_rows(N, {matvec(F, transpose(B_L.gram), e)});
    auto s = solve(F, row, Vec{1});
    if (!s) throw Error(ErrorCode::DegenerateFrame, "no e* with B(e*, e) = 1");
    Vec estar = *s;
    if (F.p() != 2) {
        Scalar half = F.inv(2);
        vec_axpy(F, estar, F.neg(F.mul(half, B_L.eval(F, estar, estar))), e);
    }

    Subspace Vs = orth(F, B_L, Subspace::span(F, N, {e, estar}));
    if (Vs.dim() + 2 != N) throw Error(ErrorCode::DegenerateFrame, "form is degenerate on the frame");
    const std::size_t n = N - 2;
    const ExtensionFrame fr{n};

    std::vector<Vec> cols{estar};
    for (const Vec& b : Vs.basis()) cols.push_back(b);
    cols.push_back(e);
    Mat T = Mat::from_columns(N, cols);
    auto Ti = inverse(F, T);
    if (!Ti) throw Error(ErrorCode::DegenerateFrame, "frame is not a basis");

    HomLieAlgebra C = change_basis(L, T, *Ti);
    BilinearForm CG = change_basis(F, B_L, T);
    PStructure CP;
    for (std::size_t j = 0; j < N; ++j) CP.images.push_back(matvec(F, *Ti, eval_p(L, P_L, cols[j])));

    // Names of V basis vectors that are input basis vectors carry over.
    std::vector<std::string> vnames;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& b = Vs.basis()[i];
        std::size_t nz = 0, at = 0;
        for (std::size_t k = 0; k < N; ++k)
            if (b[k] != 0) ++nz, at = k;
        vnames.push_back(nz == 1 && b[at] == 1 ? L.basis_names()[at] : "v" + std::to_string(i + 1));
    }

    Report shape;
    const Mat& A = C.alpha();
    Vec ae = A.column(fr.e());
    Scalar lambda = ae[fr.e()];
    ae[fr.e()] = 0;
    shape.expect("alpha_e_in_E", is_zero(ae), ae, Vec(N, 0));
    shape.expect("alpha_estar_lambda", A(fr.e_star(), fr.e_star()) == lambda, {A(fr.e_star(), fr.e_star())}, {lambda});
    if (!shape.ok()) throw PreconditionFailed("twist does not preserve the frame", std::move(shape));

    DoubleExtensionData d;
    d.lambda = lambda;
    d.lambda0 = A(fr.e(), fr.e_star());
    d.x0 = fr.project(A.column(fr.e_star()));
    d.estar_norm = CG.gram(fr.e_star(), fr.e_star());
    d.D.mat = Mat(n, n);
    Mat alphaV(n, n), GV(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        d.D.mat.set_column(j, fr.project(C.bracket_basis(fr.e_star(), fr.v(j))));
        alphaV.set_column(j, fr.project(A.column(fr.v(j))));
        for (std::size_t i = 0; i < n; ++i) GV(i, j) = CG.gram(fr.v(i), fr.v(j));
    }
    auto vtable = [&](std::size_t i, std::size_t j) { return fr.project(C.bracket_basis(fr.v(i), fr.v(j))); };
    HomLieAlgebra V = HomLieAlgebra::from_table(F, n, vtable, alphaV, vnames);
    BilinearForm BV{GV};

    DoubleExtension ext = double_extend_unchecked(V, BV, d);
    Report frame;
    std::optional<RestrictedExtension> R;
    try {
        R.emplace(read_restricted(std::move(ext), CP));
    } catch (const Error&) {
        frame.expect("frame_pmap", false);
        throw PreconditionFailed("p-map does not preserve the frame", std::move(frame));
    }
    const DoubleExtension& ex = R->ext;

    frame.expect("frame_bracket", ex.algebra.upper() == C.upper());
    frame.expect("frame_alpha", ex.algebra.alpha() == C.alpha());
    frame.expect("frame_form", ex.form.gram == CG.gram);
    frame.expect("frame_pmap", R->pmap == CP);
    if (!frame.ok()) throw PreconditionFailed("algebra is not a double extension in this frame", std::move(frame));

    return ReduceResult{std::move(*R), std::move(T), std::move(C), std::move(CG), std::move(CP)};
}

Report check_algebra_extension_data(const HomLieAlgebra& V, const BilinearForm& B_V, const AlgebraExtensionData& x) {
    const PrimeField& F = V.field();
    const std::size_t n = V.dim(), r = x.A.dim();
    if (x.phi.size() != r) throw Error(ErrorCode::DimMismatch, "phi count");
    for (const Mat& m : x.phi)
        if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimMismatch, "phi shape");
    if (!(x.A.field() == F)) throw Error(ErrorCode::DimMismatch, "field of A");

    Report rep;
    rep.merge(verify_hom_lie(V), "V.");
    rep.merge(verify_quadratic(V, B_V), "B_V.");
    expect_mat(rep, "V_involutive", matmul(F, V.alpha(), V.alpha()), Mat::identity(n));
    rep.merge(verify_hom_lie(x.A), "A.");
    expect_mat(rep, "A_involutive", matmul(F, x.A.alpha(), x.A.alpha()), Mat::identity(r));
    // sigma only has to be symmetric, invariant and alpha-symmetric.
    const Report sigma = verify_quadratic(x.A, x.sigma);
    for (const Check& c : sigma.checks()) {
        if (c.name == "nondegeneracy") continue;
        Check& d = rep.add("sigma." + c.name);
        d = c;
        d.name = "sigma." + c.name;
    }

    auto phi_of = [&](const Vec& a) {
        Mat m(n, n);
        for (std::size_t i = 0; i < r; ++i)
            if (a[i] != 0) m = mat_add(F, m, mat_scale(F, a[i], x.phi[i]));
        return m;
    };
    const Mat& aV = V.alpha();
    const Mat& G = B_V.gram;

    Check& skew = rep.add("phi_skew");
    for (std::size_t i = 0; i < r; ++i) {
        ++skew.evaluated;
        Mat s = mat_add(F, matmul(F, transpose(x.phi[i]), G), matmul(F, G, x.phi[i]));
        if (!s.is_zero()) skew.record({{i}, {}, {}, {}});
    }

    // phi(alpha_A a) = alpha_V phi(a) alpha_V
    Check& conj = rep.add("phi_twist");
    for (std::size_t i = 0; i < r; ++i) {
        ++conj.evaluated;
        if (phi_of(x.A.alpha().column(i)) != matmul(F, aV, matmul(F, x.phi[i], aV))) conj.record({{i}, {}, {}, {}});
    }

    // phi([a,b]) alpha_V = phi(alpha a) phi(b) - phi(alpha b) phi(a)
    Check& rep_rule = rep.add("phi_representation");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            ++rep_rule.evaluated;
            Mat lhs = matmul(F, phi_of(x.A.bracket_basis(i, j)), aV);
            Mat rhs = mat_sub(F, matmul(F, phi_of(x.A.alpha().column(i)), x.phi[j]),
                              matmul(F, phi_of(x.A.alpha().column(j)), x.phi[i]));
            if (lhs != rhs) rep_rule.record({{i, j}, {}, {}, {}});
        }

    // alpha_V phi(a)[x,y] = [phi(a) alpha_V x, y] + [x, phi(a) alpha_V y]
    Check& der = rep.add("phi_bracket");
    for (std::size_t a = 0; a < r; ++a) {
        Mat pa = matmul(F, x.phi[a], aV);
        Mat apa = matmul(F, aV, x.phi[a]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ++der.evaluated;
                Vec lhs = matvec(F, apa, V.bracket_basis(i, j));
                Vec rhs = vec_add(F, V.bracket(pa.column(i), unit_vec(n, j)), V.bracket(unit_vec(n, i), pa.column(j)));
                if (lhs != rhs) der.record({{a, i, j}, {}, lhs, rhs});
            }
    }
    return rep;
}

std::pair<HomLieAlgebra, BilinearForm> extend_by_algebra(const HomLieAlgebra& V, const BilinearForm& B_V,
                                                         const AlgebraExtensionData& x) {
    Report rep = check_algebra_extension_data(V, B_V, x);
    if (!rep.ok()) throw PreconditionFailed("algebra extension data", std::move(rep));
    const PrimeField& F = V.field();
    const std::size_t n = V.dim(), r = x.A.dim(), N = 2 * r + n;
    const bool two = F.p() == 2;
    auto f = [&](std::size_t i) { return i; };
    auto v = [&](std::size_t i) { return r + i; };
    auto a = [&](std::size_t i) { return r + n + i; };
    const Mat& G = B_V.gram;

    StructureBuilder sb(F, N);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            // (f_i o ad a_j)(a_k) = c^A_{j,k,i}; the char-0 sign is f o ad(a') - f' o ad(a).
            for (std::size_t k = 0; k < r; ++k) {
                Scalar c = x.A.structure(j, k, i);
                if (c == 0) continue;
                sb.set(f(i), a(j), f(k), two ? c : F.neg(c));
            }
            if (i < j)
                for (std::size_t k = 0; k < r; ++k) sb.set(a(i), a(j), a(k), x.A.structure(i, j, k));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec b = V.bracket_basis(i, j);
            for (std::size_t k = 0; k < n; ++k) sb.set(v(i), v(j), v(k), b[k]);
            // psi(x, x')(a_k) = B_V(phi(a_k) x, x')
            for (std::size_t k = 0; k < r; ++k) sb.set(v(i), v(j), f(k), dot(F, x.phi[k].column(i), G.column(j)));
        }
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            Vec img = x.phi[k].column(j);
            for (std::size_t t = 0; t < n; ++t) sb.set(a(k), v(j), v(t), img[t]);
        }

    Mat alpha(N, N);
    const Mat& aA = x.A.alpha();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            alpha(f(i), f(j)) = aA(j, i);
            alpha(a(i), a(j)) = aA(i, j);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) alpha(v(i), v(j)) = V.alpha()(i, j);

    std::vector<std::string> names;
    for (std::size_t i = 0; i < r; ++i) names.push_back(x.A.basis_names()[i] + "*");
    for (const std::string& s : V.basis_names()) names.push_back(s);
    for (const std::string& s : x.A.basis_names()) names.push_back(s);

    Mat GL(N, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) GL(v(i), v(j)) = G(i, j);
    for (std::size_t i = 0; i < r; ++i) {
        GL(f(i), a(i)) = GL(a(i), f(i)) = 1;
        for (std::size_t j = 0; j < r; ++j) GL(a(i), a(j)) = x.sigma.gram(i, j);
    }
    return {sb.build(std::move(alpha), std::move(names)), BilinearForm{std::move(GL)}};
}

} // namespace homext
