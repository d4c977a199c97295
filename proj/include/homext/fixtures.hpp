#pragma once

// Worked fixtures: the p = 2 double of the Heisenberg algebra, psl(3) over
// GF(3) with its Yau twist, and two small toys used by the Phi tests.

#include <functional>
#include <string>
#include <vector>

#include "homext/doubleext.hpp"
#include "homext/twist.hpp"

namespace homext {

// p = 2, basis (x, y, z, x*, y*, z*).
struct HeisenbergDual {
    HomLieAlgebra V;
    BilinearForm B;
    PStructure P;
    Derivation D;
    DoubleExtensionData ext;  // D filled in, x0 = 0, lambda = 1, lambda0 = 0
    PExtensionData pext;      // xi = 1, a0 = z, u0 = z, m = l = 1, P_basis = 0
};
HeisenbergDual build_heisenberg_dual();

// psl(3) over GF(3) as a Lie algebra (alpha = id), basis
// (h1, x1, x2, x3, y1, y2, y3), with the trace form, the 3-map h1 -> h1,
// three derivations and the involution alpha = diag(1,-1,-1,1,-1,-1,1).
struct Psl3 {
    HomLieAlgebra g;
    BilinearForm B;
    PStructure P;
    std::vector<std::pair<std::string, Derivation>> D;  // D1, D2, D3 (degree 0)
    TwistData twist;
};
Psl3 build_psl3();

// The expected Gram matrix of the trace form in the basis above.
Mat psl3_expected_gram();

// Reference (xi, a0, P) for each derivation. P is the polynomial in the
// coordinates (lambda_1 .. lambda_7) as tabulated.
struct Psl3TableRow {
    std::string name;
    Scalar xi;
    Vec a0;
    std::function<Scalar(const Vec&)> P;
};
std::vector<Psl3TableRow> psl3_table();

// The P actually induced by alpha o D1 and alpha o D2 on the twisted algebra.
Scalar psl3_P_D1(const Vec& x);
Scalar psl3_P_D2(const Vec& x);

// psl(3)_alpha with its form and 3-map, and alpha o Dk for each k.
struct TwistedPsl3 {
    HomLieAlgebra V;
    BilinearForm B;
    PStructure P;
    std::vector<std::pair<std::string, Derivation>> D;
};
TwistedPsl3 build_twisted_psl3();

// Extension data over psl(3)_alpha for a derivation: x0 = 0, lambda = 1,
// lambda0 = 0, (xi, a0) from solve_p_property, m = l = 1, u0 = 0, P_basis = 0.
std::pair<DoubleExtensionData, PExtensionData> psl3_extension_data(const TwistedPsl3& t, std::size_t k);

// sl2 over GF(5) twisted by diag(1,-1,-1), trace-type form, h^[5] = h and
// D = alpha o ad h.
struct Sl2Toy {
    HomLieAlgebra V;
    BilinearForm B;
    PStructure P;
    Derivation D;
};
Sl2Toy build_sl2_p5();

// Abelian plane over GF(3), B(a,b) = 1, alpha = -id, D = diag(1,-1),
// x0 = (1,1), lambda0 = 2, zero 3-map.
struct AbelianToy {
    HomLieAlgebra V;
    BilinearForm B;
    PStructure P;
    DoubleExtensionData ext;
    PExtensionData pext;
};
AbelianToy build_abelian_p3();

} // namespace homext
