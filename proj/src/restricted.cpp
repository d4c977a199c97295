#include "homext/restricted.hpp"

#include <limits>
#include <numeric>

namespace homext {

namespace {

std::vector<Mat> alpha_powers(const HomLieAlgebra& A, std::size_t upto) {
    std::vector<Mat> pw{Mat::identity(A.dim())};
    for (std::size_t k = 1; k <= upto; ++k) pw.push_back(matmul(A.field(), A.alpha(), pw.back()));
    return pw;
}

std::vector<Vec> compute_s_with(const HomLieAlgebra& A, const std::vector<Mat>& pw, const Vec& x, const Vec& y) {
    const PrimeField& F = A.field();
    const std::size_t p = F.p();
    std::vector<LinearOp> ops;
    for (std::size_t j = 0; j + 2 <= p; ++j)
        ops.push_back({A.ad(matvec(F, pw[j], y)), A.ad(matvec(F, pw[j], x))});
    PolyVec r = polyvec_apply(F, ops, PolyVec::constant(x, p - 1));
    std::vector<Vec> s;
    for (std::size_t i = 1; i < p; ++i) s.push_back(vec_scale(F, F.inv(static_cast<Scalar>(i)), r.coeff(i - 1)));
    return s;
}

Vec eval_p_with(const HomLieAlgebra& A, const std::vector<Mat>& pw, const PStructure& P, const Vec& x,
                const std::vector<std::size_t>* order) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    if (x.size() != n) throw Error(ErrorCode::DimMismatch, "eval_p");
    Vec acc(n, 0), accp(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t j = order ? (*order)[t] : t;
        Scalar lam = x[j];
        if (lam == 0) continue;
        Vec term(n, 0);
        term[j] = lam;
        Vec next = vec_add(F, accp, vec_scale(F, F.pow(lam, F.p()), P.images[j]));
        if (!is_zero(acc))
            for (const Vec& s : compute_s_with(A, pw, acc, term)) next = vec_add(F, next, s);
        accp = std::move(next);
        acc[j] = lam;
    }
    return accp;
}

long r1_defect_with(const HomLieAlgebra& A, const std::vector<Mat>& pw, const Vec& x, const Vec& xp) {
    const PrimeField& F = A.field();
    const std::size_t p = F.p();
    Mat lhs = matmul(F, A.ad(xp), pw[p - 1]);
    Mat rhs = A.ad(x);
    for (std::size_t k = 1; k < p; ++k) rhs = matmul(F, A.ad(matvec(F, pw[k], x)), rhs);
    if (lhs == rhs) return -1;
    for (std::size_t j = 0; j < A.dim(); ++j)
        if (lhs.column(j) != rhs.column(j)) return static_cast<long>(j);
    return -1;
}

Vec p_tower_with(const HomLieAlgebra& A, const std::vector<Mat>& pw, const Vec& x, const Vec& v) {
    const PrimeField& F = A.field();
    Vec r = v;
    for (std::size_t k = 1; k < F.p(); ++k) r = A.bracket(matvec(F, pw[k], x), r);
    return r;
}

void check_images(const HomLieAlgebra& A, const PStructure& P) {
    if (P.images.size() != A.dim()) throw Error(ErrorCode::DimMismatch, "p-structure image count");
    for (const Vec& v : P.images)
        if (v.size() != A.dim()) throw Error(ErrorCode::DimMismatch, "p-structure image length");
}

} // namespace

bool VerifyMode::enumerates(std::uint64_t space) const {
    switch (kind) {
    case Kind::Auto: return space <= kExhaustiveLimit;
    case Kind::Exhaustive: return space <= (1ULL << 24);
    case Kind::Sampled: return false;
    }
    return false;
}

std::vector<Vec> compute_s(const HomLieAlgebra& A, const Vec& x, const Vec& y) {
    return compute_s_with(A, alpha_powers(A, A.p()), x, y);
}

Vec sum_s(const HomLieAlgebra& A, const Vec& x, const Vec& y) {
    Vec r(A.dim(), 0);
    for (const Vec& s : compute_s(A, x, y)) r = vec_add(A.field(), r, s);
    return r;
}

Vec eval_p(const HomLieAlgebra& A, const PStructure& P, const Vec& x) {
    check_images(A, P);
    return eval_p_with(A, alpha_powers(A, A.p()), P, x, nullptr);
}

Vec eval_p_ordered(const HomLieAlgebra& A, const PStructure& P, const Vec& x, const std::vector<std::size_t>& order) {
    check_images(A, P);
    if (order.size() != A.dim()) throw Error(ErrorCode::DimMismatch, "fold order");
    return eval_p_with(A, alpha_powers(A, A.p()), P, x, &order);
}

PMapEvaluator::PMapEvaluator(const HomLieAlgebra& A, const PStructure& P)
    : A_(A), P_(P), pw_(alpha_powers(A, A.p())) {
    check_images(A, P);
}

Vec PMapEvaluator::operator()(const Vec& x) const { return eval_p_with(A_, pw_, P_, x, nullptr); }

Vec p_tower(const HomLieAlgebra& A, const Vec& x, const Vec& v) {
    return p_tower_with(A, alpha_powers(A, A.p()), x, v);
}

long r1_defect(const HomLieAlgebra& A, const Vec& x, const Vec& xp) {
    return r1_defect_with(A, alpha_powers(A, A.p()), x, xp);
}

Report verify_pstructure(const HomLieAlgebra& A, const PStructure& P, const VerifyMode& mode, Exec exec) {
    check_images(A, P);
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    const auto pw = alpha_powers(A, F.p());
    Report rep;
    rep.param("seed", mode.seed);
    rep.param("samples", mode.samples);

    Check& basis = rep.add("R1_basis");
    for (std::size_t j = 0; j < n; ++j) {
        ++basis.evaluated;
        Vec e = unit_vec(n, j);
        long col = r1_defect_with(A, pw, e, P.images[j]);
        if (col >= 0) basis.record({{j, static_cast<std::size_t>(col)}, {}, P.images[j], {}});
    }

    const std::uint64_t elems = space_size(F.p(), n);
    const bool enum_elems = mode.enumerates(elems);
    const std::uint64_t pairs = elems > std::numeric_limits<std::uint32_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                                                    : elems * elems;
    const bool enum_pairs = mode.enumerates(pairs);
    rep.param("R1_exhaustive", enum_elems);
    rep.param("R3_exhaustive", enum_pairs);

    auto sample_x = [&](std::size_t i) {
        if (enum_elems) return element_at(F, n, i);
        SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
        return rng.vec(F, n);
    };

    std::size_t count = enum_elems ? static_cast<std::size_t>(elems) : mode.samples;
    run_check(exec, rep.add("R1"), count, [&](std::size_t i, std::vector<Failure>& out) {
        Vec x = sample_x(i);
        Vec xp = eval_p_with(A, pw, P, x, nullptr);
        long col = r1_defect_with(A, pw, x, xp);
        if (col >= 0) out.push_back({{i, static_cast<std::size_t>(col)}, {x}, xp, {}});
    });

    std::size_t pcount = enum_pairs ? static_cast<std::size_t>(pairs) : mode.samples;
    run_check(exec, rep.add("R3"), pcount, [&](std::size_t i, std::vector<Failure>& out) {
        Vec x, y;
        if (enum_pairs) {
            x = element_at(F, n, i % elems);
            y = element_at(F, n, i / elems);
        } else {
            SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
            x = rng.vec(F, n);
            y = rng.vec(F, n);
        }
        Vec lhs = eval_p_with(A, pw, P, vec_add(F, x, y), nullptr);
        Vec rhs = vec_add(F, eval_p_with(A, pw, P, x, nullptr), eval_p_with(A, pw, P, y, nullptr));
        for (const Vec& s : compute_s_with(A, pw, x, y)) rhs = vec_add(F, rhs, s);
        if (lhs != rhs) out.push_back({{i}, {x, y}, lhs, rhs});
    });

    std::size_t r2count = std::min<std::size_t>(count, mode.samples);
    run_check(exec, rep.add("R2"), r2count, [&](std::size_t i, std::vector<Failure>& out) {
        SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
        Vec x = rng.vec(F, n);
        Scalar k = rng.scalar(F);
        Vec lhs = eval_p_with(A, pw, P, vec_scale(F, k, x), nullptr);
        Vec rhs = vec_scale(F, F.pow(k, F.p()), eval_p_with(A, pw, P, x, nullptr));
        if (lhs != rhs) out.push_back({{i, k}, {x}, lhs, rhs});
    });
    return rep;
}

Report check_restricted_derivation(const HomLieAlgebra& A, const PStructure& P, const Derivation& D,
                                   const VerifyMode& mode, Exec exec) {
    check_images(A, P);
    const PrimeField& F = A.field();
    const std::size_t n = A.dim();
    const auto pw = alpha_powers(A, F.p());
    Report rep;
    rep.param("seed", mode.seed);
    rep.param("samples", mode.samples);

    auto condition = [&](const Vec& x, std::vector<std::size_t> tuple, std::vector<Failure>& out) {
        Vec lhs = matvec(F, D.mat, eval_p_with(A, pw, P, x, nullptr));
        Vec rhs = p_tower_with(A, pw, x, matvec(F, D.mat, x));
        if (lhs != rhs) out.push_back({std::move(tuple), {x}, lhs, rhs});
    };

    run_check(Exec::Serial, rep.add("restricted_basis"), n,
              [&](std::size_t j, std::vector<Failure>& out) { condition(unit_vec(n, j), {j}, out); });

    const std::uint64_t elems = space_size(F.p(), n);
    const bool enum_elems = mode.enumerates(elems);
    std::size_t count = enum_elems ? static_cast<std::size_t>(elems) : mode.samples;
    run_check(exec, rep.add("restricted_vectors"), count, [&](std::size_t i, std::vector<Failure>& out) {
        Vec x;
        if (enum_elems) x = element_at(F, n, i);
        else {
            SplitMix64 rng = SplitMix64::for_sample(mode.seed, i);
            x = rng.vec(F, n);
        }
        condition(x, {i}, out);
    });
    return rep;
}

bool is_restricted_derivation(const HomLieAlgebra& A, const PStructure& P, const Derivation& D,
                              const VerifyMode& mode) {
    return check_restricted_derivation(A, P, D, mode).ok();
}

bool check_p_property(const HomLieAlgebra& A, const Mat& D, const PPropertyWitness& w) {
    const PrimeField& F = A.field();
    const std::size_t p = F.p();
    if (w.a0.size() != A.dim()) throw Error(ErrorCode::DimMismatch, "witness a0");
    Mat ap = A.alpha_power(p - 1);
    Mat lhs = mat_pow(F, D, p);
    Mat rhs = mat_add(F, mat_scale(F, w.xi, matmul(F, D, ap)), matmul(F, A.ad(w.a0), ap));
    return lhs == rhs && is_zero(matvec(F, D, w.a0));
}

std::optional<PPropertyWitness> solve_p_property(const HomLieAlgebra& A, const Mat& D) {
    const PrimeField& F = A.field();
    const std::size_t n = A.dim(), p = F.p();
    Mat ap = A.alpha_power(p - 1);
    Mat Dp = mat_pow(F, D, p);
    Mat DA = matmul(F, D, ap);
    // Column i of the system: flattened ad(e_i) alpha^{p-1}, then D e_i.
    Mat M(n * n + n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat c = matmul(F, A.ad_basis(i), ap);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) M(r * n + s, i) = c(r, s);
        for (std::size_t r = 0; r < n; ++r) M(n * n + r, i) = D(r, i);
    }
    for (Scalar xi = 0; xi < p; ++xi) {
        Mat T = mat_sub(F, Dp, mat_scale(F, xi, DA));
        Vec b(n * n + n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) b[r * n + s] = T(r, s);
        if (auto a0 = solve(F, M, b)) return PPropertyWitness{xi, *a0};
    }
    return std::nullopt;
}

std::vector<Scalar> compute_eta(const HomLieAlgebra& A, const BilinearForm& B, const Mat& D, const Vec& u,
                                const Vec& v) {
    const PrimeField& F = A.field();
    const std::size_t p = F.p();
    if (p == 2) throw Error(ErrorCode::OddCharRequired, "eta is defined for p > 2");
    auto pw = alpha_powers(A, p);
    std::vector<LinearOp> ops;
    for (std::size_t j = 0; j + 3 <= p; ++j) ops.push_back({A.ad(matvec(F, pw[j], v)), A.ad(matvec(F, pw[j], u))});
    PolyVec W = polyvec_apply(F, ops, PolyVec::constant(u, p - 1));
    // B(D alpha^{p-2}(lambda u + v), W(lambda)) = sum_d c_d lambda^d
    Vec du = matvec(F, D, matvec(F, pw[p - 2], u));
    Vec dv = matvec(F, D, matvec(F, pw[p - 2], v));
    std::vector<Scalar> eta;
    for (std::size_t i = 1; i < p; ++i) {
        std::size_t d = i - 1;
        Scalar c = B.eval(F, dv, W.coeff(d));
        if (d >= 1) c = F.add(c, B.eval(F, du, W.coeff(d - 1)));
        eta.push_back(F.mul(F.inv(static_cast<Scalar>(i)), c));
    }
    return eta;
}

} // namespace homext
