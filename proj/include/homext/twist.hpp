#pragma once

// Yau twists: a quadratic Lie algebra (g, [.,.], B) and a B-symmetric
// bracket endomorphism alpha give the Hom-Lie algebra
// (g, alpha o [.,.], alpha, B(alpha ., .)).

#include <utility>

#include "homext/algebra.hpp"
#include "homext/restricted.hpp"

namespace homext {

struct TwistData {
    Mat alpha;
};

// Trivial input twist, Lie and quadratic input, alpha symmetric for B and a
// bracket endomorphism.
Report check_twist_data(const HomLieAlgebra& g, const BilinearForm& B, const TwistData& t);

// Throws PreconditionFailed when check_twist_data fails or when the output
// does not pass verify_hom_lie / verify_quadratic.
std::pair<HomLieAlgebra, BilinearForm> twist_algebra(const HomLieAlgebra& g, const BilinearForm& B, const TwistData& t);
std::pair<HomLieAlgebra, BilinearForm> twist_algebra_unchecked(const HomLieAlgebra& g, const BilinearForm& B,
                                                               const TwistData& t);

// x^[p]_alpha = alpha^{p-1}(x^[p]) on the basis.
PStructure twist_pmap(const HomLieAlgebra& g, const PStructure& P, const TwistData& t);

// alpha o D as an alpha-derivation of g_alpha. Requires D restricted for P on
// the untwisted g, alpha D = D alpha, alpha^2 = id and a p-property witness;
// the twisted derivation is re-verified on (g_alpha, P_alpha).
Derivation twist_derivation(const HomLieAlgebra& g, const PStructure& P, const Derivation& D, const TwistData& t,
                            const VerifyMode& mode = {});
Derivation twist_derivation_unchecked(const HomLieAlgebra& g, const Derivation& D, const TwistData& t);

} // namespace homext
