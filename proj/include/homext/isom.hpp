#pragma once

// Adapted isomorphisms between two double extensions of the same V, the
// restricted-isomorphism criteria, and the Phi expansion of s_i(e~*, y).

#include <optional>
#include <utility>
#include <vector>

#include "homext/doubleext.hpp"

namespace homext {

// pi(u) = pi0 u + B(t,u) e~, pi(e) = gamma e~, and
//   p = 2: pi(e*) = gamma^-1 (e~* + pi0 t) + nu e~
//   p > 2: pi(e*) = gamma^-1 (e~* - pi0 t - B(t,t)/2 e~)   (nu unused)
struct AdaptedIso {
    Mat pi0;
    Scalar gamma = 1;
    Vec t;
    Scalar nu = 0;
    bool operator==(const AdaptedIso&) const = default;
};

Mat build_adapted_iso(const DoubleExtension& L, const AdaptedIso& a);

// Parameters of a matrix of the adapted shape; FrameMismatch when pi moves
// E + V off E~ + V, ZeroGamma when pi(e) has no e~ component.
AdaptedIso extract_adapted_iso(const DoubleExtension& L, const Mat& pi);

// The double extension Lt that the adapted data maps L onto: D~, x~0,
// lambda~0 and (p = 2) B(e~*, e~*) solved from the adapted conditions.
// The remaining conditions are left to check_adapted_conditions.
DoubleExtension adapted_target(const DoubleExtension& L, const AdaptedIso& a);

// x~^[p] = pi((pi^-1 x~)^[p]) on the basis of the target; A and P are the source.
PStructure pushforward_pmap(const HomLieAlgebra& A, const PStructure& P, const Mat& pi);

// The conditions on (pi0, gamma, t) under which the built matrix is an
// adapted isomorphism L -> Lt.
Report check_adapted_conditions(const DoubleExtension& L, const DoubleExtension& Lt, const AdaptedIso& a);

// Bracket, form, twist and flag conditions checked directly on pi.
Report verify_adapted_iso(const DoubleExtension& L, const DoubleExtension& Lt, const Mat& pi,
                          Exec exec = Exec::Parallel);

struct RestrictedIsoReport {
    Report direct;   // pi(x^[p]) = pi(x)^[p]
    Report theorem;  // closed-form relations between the two data sets
};

RestrictedIsoReport verify_restricted_iso(const RestrictedExtension& L, const RestrictedExtension& Lt, const Mat& pi,
                                          const VerifyMode& mode = {}, Exec exec = Exec::Parallel);

// Phi^l_1 .. Phi^l_{l-1}: coefficients of k^{i-1} in
// ad(alpha^{l-2}(kx+y)) ... ad(kx+y)(x), by recursion on l (l >= 2).
std::vector<Vec> phi_recursion(const HomLieAlgebra& A, const Vec& x, const Vec& y, std::size_t l);
// Same coefficients read off the expanded operator product.
std::vector<Vec> phi_tower(const HomLieAlgebra& A, const Vec& x, const Vec& y, std::size_t l);

// Phi^l_i(e~*, y) for y in V split as I + II e~, computed inside V.
struct PhiSplit {
    std::vector<Vec> I;
    std::vector<Scalar> II;
};
PhiSplit phi_split(const DoubleExtension& Lt, const Vec& y, std::size_t l);

// sum_i s_i(e~*, y) = sum_i Phi^p_i / i, as (V part, e~ coefficient).
std::pair<Vec, Scalar> s_tilde(const DoubleExtension& Lt, const Vec& y);

} // namespace homext
