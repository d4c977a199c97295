#pragma once

// One-dimensional double extensions L = E* + V + E, the extension of a
// p-structure from V to L, the converse reduction, and the extension of V
// by a whole involutive algebra A.

#include <utility>
#include <vector>

#include "homext/algebra.hpp"
#include "homext/restricted.hpp"

namespace homext {

struct DoubleExtensionData {
    Derivation D;
    Vec x0;
    Scalar lambda = 1;
    Scalar lambda0 = 0;
    // B(e*, e*). Free for p = 2; must be 0 for p > 2.
    Scalar estar_norm = 0;
    bool operator==(const DoubleExtensionData& o) const {
        return D.mat == o.D.mat && D.degree == o.D.degree && x0 == o.x0 && lambda == o.lambda &&
               lambda0 == o.lambda0 && estar_norm == o.estar_norm;
    }
};

struct PExtensionData {
    Scalar xi = 0;
    Vec a0;
    Scalar m = 0;
    Scalar l = 0;
    Vec u0;
    Vec P_basis;
    bool operator==(const PExtensionData&) const = default;
};

// Basis layout of L: e* first, then V, then e.
struct ExtensionFrame {
    std::size_t n;  // dim V

    std::size_t dim() const { return n + 2; }
    std::size_t e_star() const { return 0; }
    std::size_t v(std::size_t i) const { return 1 + i; }
    std::size_t e() const { return n + 1; }
    Vec embed(const Vec& v_vec) const;   // V -> L
    Vec project(const Vec& l_vec) const; // L -> V component
    bool in_v(const Vec& l_vec) const { return l_vec[e_star()] == 0 && l_vec[e()] == 0; }
};

struct DoubleExtension {
    HomLieAlgebra base;
    BilinearForm base_form;
    DoubleExtensionData data;
    HomLieAlgebra algebra;
    BilinearForm form;

    ExtensionFrame frame() const { return ExtensionFrame{base.dim()}; }
};

Report check_extension_data(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d);

// Throws PreconditionFailed when check_extension_data fails.
DoubleExtension double_extend(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d);

// Builds L without validating the data (for counterexamples and mutation tests).
DoubleExtension double_extend_unchecked(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d);

bool is_involutive_twist(const HomLieAlgebra& V, const BilinearForm& B_V, const DoubleExtensionData& d);

// Value of the quadratic map P on v in V.
Scalar eval_P(const HomLieAlgebra& V, const BilinearForm& B_V, const Mat& D, const Vec& P_basis, const Vec& v);

// Conditions on the p-extension data; mode drives the sampled parts.
Report check_pextension_data(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe,
                             const VerifyMode& mode = {});

PStructure extend_pstructure(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe,
                             const VerifyMode& mode = {});
// Image table only, no precondition checks.
PStructure extend_pstructure_unchecked(const DoubleExtension& L, const PStructure& P_V, const PExtensionData& pe);

struct RestrictedExtension {
    DoubleExtension ext;
    PStructure base_pmap;
    PExtensionData pdata;
    PStructure pmap;
};

// Reads the p-extension data off a p-map given in the frame of ext; throws
// FrameMismatch when the images do not have the extension shape. pmap is
// rebuilt from the data, so it equals P only on that shape.
RestrictedExtension read_restricted(DoubleExtension ext, const PStructure& P);

struct ReduceResult {
    RestrictedExtension reduced;
    Mat frame;                // columns: e*, V basis, e in the input coordinates
    HomLieAlgebra canonical;  // input algebra rewritten in that frame
    BilinearForm canonical_form;
    PStructure canonical_pmap;
};

// Errors: NotCentral, DegenerateFrame, NotPIdeal, PreconditionFailed.
ReduceResult reduce(const HomLieAlgebra& L, const BilinearForm& B_L, const PStructure& P_L, const Vec& e);

struct AlgebraExtensionData {
    HomLieAlgebra A;
    std::vector<Mat> phi;  // phi[a] acts on V
    BilinearForm sigma;
};

Report check_algebra_extension_data(const HomLieAlgebra& V, const BilinearForm& B_V, const AlgebraExtensionData& x);

// L = A* + V + A in that basis order; the A* basis is dual to the A basis.
std::pair<HomLieAlgebra, BilinearForm> extend_by_algebra(const HomLieAlgebra& V, const BilinearForm& B_V,
                                                         const AlgebraExtensionData& x);

} // namespace homext
