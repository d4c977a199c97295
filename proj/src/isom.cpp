#include "homext/isom.hpp"

#include <string>

namespace homext {

namespace {

Scalar halve(const PrimeField& F, Scalar a) { return F.mul(F.inv(2), a); }

std::vector<Vec> vectors_of(const PrimeField& F, std::size_t n, const VerifyMode& mode) {
    std::vector<Vec> out;
    for (std::size_t j = 0; j < n; ++j) out.push_back(unit_vec(n, j));
    const std::uint64_t space = space_size(F.p(), n);
    if (mode.enumerates(space)) {
        for (std::uint64_t i = 0; i < space; ++i) out.push_back(element_at(F, n, i));
    } else {
        for (std::size_t i = 0; i < mode.samples; ++i) {
            SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
            out.push_back(rng.vec(F, n));
        }
    }
    return out;
}

} // namespace

Mat build_adapted_iso(const DoubleExtension& L, const AdaptedIso& a) {
    const PrimeField& F = L.base.field();
    const ExtensionFrame fr = L.frame();
    const std::size_t n = fr.n;
    if (a.pi0.rows() != n || a.pi0.cols() != n || a.t.size() != n) throw Error(ErrorCode::DimMismatch, "adapted iso");
    if (a.gamma % F.p() == 0) throw Error(ErrorCode::ZeroGamma, "gamma must be nonzero");
    const Mat& G = L.base_form.gram;
    Mat pi(fr.dim(), fr.dim());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) pi(fr.v(i), fr.v(j)) = a.pi0(i, j);
        pi(fr.e(), fr.v(j)) = dot(F, a.t, G.column(j));
    }
    pi(fr.e(), fr.e()) = a.gamma % F.p();
    Scalar gi = F.inv(a.gamma % F.p());
    Vec pt = matvec(F, a.pi0, a.t);
    pi(fr.e_star(), fr.e_star()) = gi;
    if (F.p() == 2) {
        for (std::size_t i = 0; i < n; ++i) pi(fr.v(i), fr.e_star()) = F.mul(gi, pt[i]);
        pi(fr.e(), fr.e_star()) = a.nu % F.p();
    } else {
        for (std::size_t i = 0; i < n; ++i) pi(fr.v(i), fr.e_star()) = F.neg(F.mul(gi, pt[i]));
        pi(fr.e(), fr.e_star()) = F.neg(F.mul(gi, halve(F, L.base_form.eval(F, a.t, a.t))));
    }
    return pi;
}

AdaptedIso extract_adapted_iso(const DoubleExtension& L, const Mat& pi) {
    const PrimeField& F = L.base.field();
    const ExtensionFrame fr = L.frame();
    const std::size_t n = fr.n;
    if (pi.rows() != fr.dim() || pi.cols() != fr.dim()) throw Error(ErrorCode::DimMismatch, "pi shape");
    for (std::size_t j = 1; j < fr.dim(); ++j)
        if (pi(fr.e_star(), j) != 0) throw Error(ErrorCode::FrameMismatch, "pi(E + V) is not inside E~ + V");
    AdaptedIso a;
    a.gamma = pi(fr.e(), fr.e());
    if (a.gamma == 0) throw Error(ErrorCode::ZeroGamma, "pi(e) has no e~ component");
    a.pi0 = Mat(n, n);
    Vec row(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) a.pi0(i, j) = pi(fr.v(i), fr.v(j));
        row[j] = pi(fr.e(), fr.v(j));
    }
    auto t = solve(F, transpose(L.base_form.gram), row);
    if (!t) throw Error(ErrorCode::DegenerateFrame, "B_V does not determine t");
    a.t = *t;
    if (F.p() == 2) a.nu = pi(fr.e(), fr.e_star());
    return a;
}

DoubleExtension adapted_target(const DoubleExtension& L, const AdaptedIso& a) {
    const HomLieAlgebra& V = L.base;
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    if (a.pi0.rows() != n || a.pi0.cols() != n || a.t.size() != n) throw Error(ErrorCode::DimMismatch, "adapted iso");
    const bool two = F.p() == 2;
    const BilinearForm& B = L.base_form;
    const DoubleExtensionData& d = L.data;
    const Scalar g = a.gamma % F.p();
    if (g == 0) throw Error(ErrorCode::ZeroGamma, "gamma must be nonzero");
    auto inv = inverse(F, a.pi0);
    if (!inv) throw Error(ErrorCode::NonInvertiblePi0, "pi0 is singular");

    DoubleExtensionData dt;
    dt.D.mat = matmul(F, a.pi0, matmul(F, mat_add(F, mat_scale(F, g, d.D.mat), V.ad(a.t)), *inv));
    dt.lambda = d.lambda;
    const Vec at = V.twist(a.t), lt = vec_scale(F, d.lambda, a.t);
    dt.x0 = vec_add(F, matvec(F, a.pi0, two ? vec_add(F, at, lt) : vec_sub(F, at, lt)),
                    vec_scale(F, g, matvec(F, a.pi0, d.x0)));
    const Vec pt = matvec(F, a.pi0, a.t);
    // B(x~0, pi0 t) + g B(x0, t) = lambda~0 -/+ g^2 lambda0
    dt.lambda0 = F.add(F.add(B.eval(F, dt.x0, pt), F.mul(g, B.eval(F, d.x0, a.t))), F.mul(F.mul(g, g), d.lambda0));
    if (two) dt.estar_norm = F.mul(F.mul(g, g), F.sub(d.estar_norm, B.eval(F, a.t, a.t)));
    return double_extend_unchecked(V, B, dt);
}

PStructure pushforward_pmap(const HomLieAlgebra& A, const PStructure& P, const Mat& pi) {
    const PrimeField& F = A.field();
    auto inv = inverse(F, pi);
    if (!inv) throw Error(ErrorCode::NonInvertiblePi0, "pi is singular");
    PStructure out;
    for (std::size_t j = 0; j < A.dim(); ++j) out.images.push_back(matvec(F, pi, eval_p(A, P, inv->column(j))));
    return out;
}

Report check_adapted_conditions(const DoubleExtension& L, const DoubleExtension& Lt, const AdaptedIso& a) {
    const HomLieAlgebra& V = L.base;
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    const bool two = F.p() == 2;
    if (a.pi0.rows() != n || a.pi0.cols() != n || a.t.size() != n) throw Error(ErrorCode::DimMismatch, "adapted iso");
    const BilinearForm& B = L.base_form;
    const Mat& G = B.gram;
    const DoubleExtensionData& d = L.data;
    const DoubleExtensionData& dt = Lt.data;
    const Mat& P0 = a.pi0;
    const Scalar g = a.gamma % F.p();
    Report rep;

    rep.expect("same_base", V.same_structure(Lt.base) && G == Lt.base_form.gram);
    rep.expect("gamma_nonzero", g != 0);
    rep.expect("pi0_invertible", rank(F, P0) == n);
    rep.expect("pi0_twist", matmul(F, P0, V.alpha()) == matmul(F, V.alpha(), P0));
    Check& br = rep.add("pi0_bracket");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++br.evaluated;
            Vec lhs = matvec(F, P0, V.bracket_basis(i, j));
            Vec rhs = V.bracket(P0.column(i), P0.column(j));
            if (lhs != rhs) br.record({{i, j}, {}, lhs, rhs});
        }
    rep.expect("pi0_form", matmul(F, transpose(P0), matmul(F, G, P0)) == G);

    // D~ pi0 = pi0 (gamma D + ad t)
    Mat lhs = matmul(F, dt.D.mat, P0);
    Mat rhs = matmul(F, P0, mat_add(F, mat_scale(F, g, d.D.mat), V.ad(a.t)));
    Check& dr = rep.add("D_relation");
    for (std::size_t j = 0; j < n; ++j) {
        ++dr.evaluated;
        if (lhs.column(j) != rhs.column(j)) dr.record({{j}, {}, lhs.column(j), rhs.column(j)});
    }

    const Scalar Btt = B.eval(F, a.t, a.t);
    if (two && g != 0) {
        Scalar r = F.add(Btt, F.mul(F.inv(F.mul(g, g)), dt.estar_norm));
        rep.expect("estar_norm", d.estar_norm == r, {d.estar_norm}, {r});
    }
    rep.expect("lambda", d.lambda == dt.lambda, {dt.lambda}, {d.lambda});

    const Vec pt = matvec(F, P0, a.t);
    const Vec at = V.twist(a.t);
    Vec xl = matvec(F, P0, two ? vec_add(F, at, vec_scale(F, d.lambda, a.t)) : vec_sub(F, at, vec_scale(F, d.lambda, a.t)));
    Vec gx0 = vec_scale(F, g, matvec(F, P0, d.x0));
    Vec xr = two ? vec_add(F, gx0, dt.x0) : vec_sub(F, dt.x0, gx0);
    rep.expect("x0_relation", xl == xr, xl, xr);

    Scalar ll = F.add(B.eval(F, dt.x0, pt), F.mul(g, B.eval(F, d.x0, a.t)));
    Scalar g2l0 = F.mul(F.mul(g, g), d.lambda0);
    Scalar lr = two ? F.add(dt.lambda0, g2l0) : F.sub(dt.lambda0, g2l0);
    rep.expect("lambda0_relation", ll == lr, {ll}, {lr});

    Check& xf = rep.add("x0_form_relation");
    for (std::size_t j = 0; j < n; ++j) {
        ++xf.evaluated;
        Vec v = unit_vec(n, j);
        Scalar a1 = B.eval(F, dt.x0, P0.column(j));
        Scalar a2 = F.mul(g, B.eval(F, d.x0, v));
        Scalar l = two ? F.add(a1, a2) : F.sub(a1, a2);
        Vec av = V.twist(v);
        Vec lv = vec_scale(F, d.lambda, v);
        Scalar r = B.eval(F, a.t, two ? vec_add(F, av, lv) : vec_sub(F, av, lv));
        if (l != r) xf.record({{j}, {}, {l}, {r}});
    }
    return rep;
}

Report verify_adapted_iso(const DoubleExtension& L, const DoubleExtension& Lt, const Mat& pi, Exec exec) {
    const PrimeField& F = L.base.field();
    const ExtensionFrame fr = L.frame();
    const std::size_t N = fr.dim();
    if (pi.rows() != N || pi.cols() != N || Lt.algebra.dim() != N) throw Error(ErrorCode::DimMismatch, "adapted iso");
    const HomLieAlgebra& A = L.algebra;
    const HomLieAlgebra& At = Lt.algebra;
    Report rep;

    rep.expect("invertible", rank(F, pi) == N);
    std::vector<Vec> img(N);
    for (std::size_t j = 0; j < N; ++j) img[j] = pi.column(j);
    run_check(exec, rep.add("bracket"), N * N, [&](std::size_t t, std::vector<Failure>& out) {
        std::size_t i = t / N, j = t % N;
        Vec lhs = matvec(F, pi, A.bracket_basis(i, j));
        Vec rhs = At.bracket(img[i], img[j]);
        if (lhs != rhs) out.push_back({{i, j}, {}, lhs, rhs});
    });
    Mat Gp = matmul(F, transpose(pi), matmul(F, Lt.form.gram, pi));
    Check& form = rep.add("form");
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            ++form.evaluated;
            if (Gp(i, j) != L.form.gram(i, j)) form.record({{i, j}, {}, {Gp(i, j)}, {L.form.gram(i, j)}});
        }
    Mat pa = matmul(F, pi, A.alpha()), ap = matmul(F, At.alpha(), pi);
    Check& tw = rep.add("twist");
    for (std::size_t j = 0; j < N; ++j) {
        ++tw.evaluated;
        if (pa.column(j) != ap.column(j)) tw.record({{j}, {}, pa.column(j), ap.column(j)});
    }
    Check& flag = rep.add("flag");
    for (std::size_t j = 1; j < N; ++j) {
        ++flag.evaluated;
        if (pi(fr.e_star(), j) != 0) flag.record({{j}, {}, {pi(fr.e_star(), j)}, {0}});
    }
    return rep;
}

RestrictedIsoReport verify_restricted_iso(const RestrictedExtension& L, const RestrictedExtension& Lt, const Mat& pi,
                                          const VerifyMode& mode, Exec exec) {
    const PrimeField& F = L.ext.base.field();
    const ExtensionFrame fr = L.ext.frame();
    const std::size_t N = fr.dim(), n = fr.n;
    const std::uint32_t p = F.p();
    const bool two = p == 2;
    const HomLieAlgebra& A = L.ext.algebra;
    const HomLieAlgebra& At = Lt.ext.algebra;
    if (pi.rows() != N || pi.cols() != N || At.dim() != N) throw Error(ErrorCode::DimMismatch, "restricted iso");
    RestrictedIsoReport out;

    Report& dr = out.direct;
    dr.param("seed", mode.seed);
    dr.param("samples", mode.samples);
    const PMapEvaluator pL(A, L.pmap), pLt(At, Lt.pmap);
    Check& basis = dr.add("pmap_basis");
    for (std::size_t j = 0; j < N; ++j) {
        ++basis.evaluated;
        Vec lhs = matvec(F, pi, L.pmap.images[j]);
        Vec rhs = pLt(pi.column(j));
        if (lhs != rhs) basis.record({{j}, {}, lhs, rhs});
    }
    const std::uint64_t space = space_size(p, N);
    const bool en = mode.enumerates(space);
    dr.param("pmap_exhaustive", en);
    run_check(exec, dr.add("pmap_vectors"), en ? static_cast<std::size_t>(space) : mode.samples,
              [&](std::size_t i, std::vector<Failure>& o) {
                  Vec x;
                  if (en) x = element_at(F, N, i);
                  else {
                      SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
                      x = rng.vec(F, N);
                  }
                  Vec lhs = matvec(F, pi, pL(x));
                  Vec rhs = pLt(matvec(F, pi, x));
                  if (lhs != rhs) o.push_back({{i}, {x}, lhs, rhs});
              });

    Report& th = out.theorem;
    th.param("seed", mode.seed);
    th.param("samples", mode.samples);
    AdaptedIso a;
    try {
        a = extract_adapted_iso(L.ext, pi);
    } catch (const Error&) {
        th.expect("adapted_shape", false);
        return out;
    }
    th.expect("adapted_shape", build_adapted_iso(L.ext, a) == pi);
    th.merge(check_adapted_conditions(L.ext, Lt.ext, a), "adapted.");

    const HomLieAlgebra& V = L.ext.base;
    const BilinearForm& B = L.ext.base_form;
    const PExtensionData& d = L.pdata;
    const PExtensionData& dt = Lt.pdata;
    const Mat& D = L.ext.data.D.mat;
    const Mat& Dt = Lt.ext.data.D.mat;
    const Scalar g = a.gamma;
    const Scalar gi = F.inv(g);
    const Scalar gp = F.pow(g, p), gpi = F.inv(gp);
    const Mat& P0 = a.pi0;
    const Vec pt = matvec(F, P0, a.t);
    auto P = [&](const Vec& u) { return eval_P(V, B, D, d.P_basis, u); };
    auto Pt = [&](const Vec& u) { return eval_P(V, B, Dt, dt.P_basis, u); };

    const PMapEvaluator pV(V, L.base_pmap), pVt(V, Lt.base_pmap);
    Check& c0 = th.add("pi0_pmap");
    Check& cP = th.add("P_relation");
    const std::vector<Vec> us = vectors_of(F, n, mode);
    for (std::size_t i = 0; i < us.size(); ++i) {
        const Vec& u = us[i];
        Vec up = pV(u);
        Scalar btu = F.pow(B.eval(F, a.t, u), p);
        ++c0.evaluated;
        Vec lhs = matvec(F, P0, up);
        Vec rhs = vec_add(F, pVt(matvec(F, P0, u)), vec_scale(F, btu, dt.u0));
        if (lhs != rhs) c0.record({{i}, {u}, lhs, rhs});
        ++cP.evaluated;
        Scalar pl = Pt(matvec(F, P0, u));
        Scalar pr = F.add(F.mul(g, P(u)), B.eval(F, a.t, up));
        Scalar mt = F.mul(btu, dt.m);
        pr = two ? F.add(pr, mt) : F.sub(pr, mt);
        if (pl != pr) cP.record({{i}, {u}, {pl}, {pr}});
    }

    Scalar xr = F.mul(F.pow(g, p - 1), d.xi);
    th.expect("xi", dt.xi == xr, {dt.xi}, {xr});
    Scalar mr = F.mul(gpi, F.add(F.mul(g, d.m), B.eval(F, a.t, d.u0)));
    th.expect("m", dt.m == mr, {dt.m}, {mr});
    Vec ur = vec_scale(F, gpi, matvec(F, P0, d.u0));
    th.expect("u0", dt.u0 == ur, dt.u0, ur);

    const Vec ptp = eval_p(V, Lt.base_pmap, pt);
    Vec ar;
    Scalar lr;
    if (two) {
        // a0~ = g^2 (pi0 a0 + g^-1 xi pi0 t) + g^2 nu^2 u0~ + D~(pi0 t) + (pi0 t)^[2]
        ar = vec_scale(F, gp, vec_add(F, matvec(F, P0, d.a0), vec_scale(F, F.mul(gi, d.xi), pt)));
        ar = vec_add(F, ar, vec_scale(F, F.mul(gp, F.mul(a.nu, a.nu)), dt.u0));
        ar = vec_add(F, ar, matvec(F, Dt, pt));
        ar = vec_add(F, ar, ptp);
        // l~ = g^2 (B(t,a0) + g l + nu xi) + P~(pi0 t) + nu^2 m~
        lr = F.mul(gp, F.add(F.add(B.eval(F, a.t, d.a0), F.mul(g, d.l)), F.mul(a.nu, d.xi)));
        lr = F.add(lr, Pt(pt));
        lr = F.add(lr, F.mul(F.mul(a.nu, a.nu), dt.m));
    } else {
        const Scalar Btt = B.eval(F, a.t, a.t);
        const Scalar c = F.mul(F.pow(F.inv(2), p), F.pow(Btt, p));
        auto [sI, sII] = s_tilde(Lt.ext, vec_neg(F, pt));
        // a0~ = g^p (pi0 a0 - g^-1 xi pi0 t) + (B(t,t)/2)^p u0~ + (pi0 t)^[p] - sum Phi_I / i
        ar = vec_scale(F, gp, vec_sub(F, matvec(F, P0, d.a0), vec_scale(F, F.mul(gi, d.xi), pt)));
        ar = vec_add(F, ar, vec_scale(F, c, dt.u0));
        ar = vec_add(F, ar, ptp);
        ar = vec_sub(F, ar, sI);
        // l~ = g^p (B(t,a0) + g l - xi/(2g) B(t,t)) + P~(pi0 t) + (B(t,t)/2)^p m~ - sum Phi_II / i
        Scalar inner = F.add(B.eval(F, a.t, d.a0), F.mul(g, d.l));
        inner = F.sub(inner, F.mul(F.mul(d.xi, F.inv(F.mul(2, g))), Btt));
        lr = F.mul(gp, inner);
        lr = F.add(lr, Pt(pt));
        lr = F.add(lr, F.mul(c, dt.m));
        lr = F.sub(lr, sII);
    }
    th.expect("a0", dt.a0 == ar, dt.a0, ar);
    th.expect("l", dt.l == lr, {dt.l}, {lr});
    return out;
}

std::vector<Vec> phi_recursion(const HomLieAlgebra& A, const Vec& x, const Vec& y, std::size_t l) {
    if (l < 2) throw Error(ErrorCode::BadLevel, "Phi needs l >= 2");
    const PrimeField& F = A.field();
    std::vector<Vec> phi{A.bracket(y, x)};
    Vec ax = x, ay = y;
    for (std::size_t k = 3; k <= l; ++k) {
        ax = A.twist(ax);
        ay = A.twist(ay);
        // level k from level k-1, operators ad(alpha^{k-2} x), ad(alpha^{k-2} y)
        std::vector<Vec> next(k - 1);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            Vec v(A.dim(), 0);
            if (i < phi.size()) v = A.bracket(ay, phi[i]);
            if (i >= 1) v = vec_add(F, v, A.bracket(ax, phi[i - 1]));
            next[i] = std::move(v);
        }
        phi = std::move(next);
    }
    return phi;
}

std::vector<Vec> phi_tower(const HomLieAlgebra& A, const Vec& x, const Vec& y, std::size_t l) {
    if (l < 2) throw Error(ErrorCode::BadLevel, "Phi needs l >= 2");
    const PrimeField& F = A.field();
    std::vector<LinearOp> ops;
    Vec ax = x, ay = y;
    for (std::size_t k = 0; k + 2 <= l; ++k) {
        ops.push_back({A.ad(ay), A.ad(ax)});
        ax = A.twist(ax);
        ay = A.twist(ay);
    }
    PolyVec r = polyvec_apply(F, ops, PolyVec::constant(x, l - 1));
    std::vector<Vec> out;
    for (std::size_t i = 0; i + 1 < l; ++i) out.push_back(r.coeff(i));
    return out;
}

PhiSplit phi_split(const DoubleExtension& Lt, const Vec& y, std::size_t l) {
    if (l < 2) throw Error(ErrorCode::BadLevel, "Phi needs l >= 2");
    const HomLieAlgebra& V = Lt.base;
    const PrimeField& F = V.field();
    const std::size_t n = V.dim();
    if (y.size() != n) throw Error(ErrorCode::DimMismatch, "phi_split y");
    const Mat& Dt = Lt.data.D.mat;
    const BilinearForm& B = Lt.base_form;
    const Scalar lam = Lt.data.lambda;

    // alpha^k(e~*) = lam^k e~* + X_k + (.) e~ with X_0 = 0, X_{k+1} = lam^k x~0 + alpha_V X_k.
    Vec X(n, 0), ay = y;
    Scalar lk = 1;
    auto x_op = [&](const Vec& f) {  // ad(alpha^k e~*) on f in V: V part and e~ coefficient
        Vec v = vec_add(F, vec_scale(F, lk, matvec(F, Dt, f)), V.bracket(X, f));
        return std::pair<Vec, Scalar>{v, B.eval(F, matvec(F, Dt, X), f)};
    };
    auto y_op = [&](const Vec& f) {
        return std::pair<Vec, Scalar>{V.bracket(ay, f), B.eval(F, matvec(F, Dt, ay), f)};
    };

    PhiSplit s;
    s.I = {vec_neg(F, matvec(F, Dt, y))};  // [y, e~*] = -D~ y
    s.II = {0};
    for (std::size_t k = 3; k <= l; ++k) {
        X = vec_add(F, vec_scale(F, lk, Lt.data.x0), V.twist(X));
        lk = F.mul(lk, lam);
        ay = V.twist(ay);
        PhiSplit next;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            Vec v(n, 0);
            Scalar c = 0;
            if (i < s.I.size()) {
                auto [yv, yc] = y_op(s.I[i]);
                v = yv;
                c = yc;
            }
            if (i >= 1) {
                auto [xv, xc] = x_op(s.I[i - 1]);
                v = vec_add(F, v, xv);
                c = F.add(c, xc);
            }
            next.I.push_back(std::move(v));
            next.II.push_back(c);
        }
        s = std::move(next);
    }
    return s;
}

std::pair<Vec, Scalar> s_tilde(const DoubleExtension& Lt, const Vec& y) {
    const PrimeField& F = Lt.base.field();
    PhiSplit s = phi_split(Lt, y, F.p());
    Vec I(Lt.base.dim(), 0);
    Scalar II = 0;
    for (std::size_t i = 1; i < F.p(); ++i) {
        Scalar c = F.inv(static_cast<Scalar>(i));
        I = vec_add(F, I, vec_scale(F, c, s.I[i - 1]));
        II = F.add(II, F.mul(c, s.II[i - 1]));
    }
    return {I, II};
}

} // namespace homext
