#pragma once

// p-structures (R1-R3), the s_i and eta_i polarization terms, restricted
// derivations and the p-property.

#include <optional>
#include <vector>

#include "homext/algebra.hpp"
#include "homext/sampler.hpp"

namespace homext {

struct PStructure {
    std::vector<Vec> images;  // images[j] = e_j^[p]
    bool operator==(const PStructure&) const = default;
};

struct PPropertyWitness {
    Scalar xi = 0;
    Vec a0;
    bool operator==(const PPropertyWitness&) const = default;
};

// Auto enumerates whenever the space has at most kExhaustiveLimit points
// and samples otherwise. Exhaustive enumerates element spaces up to 2^24
// points (pair spaces fall back to sampling past that). Sampled always
// samples.
struct VerifyMode {
    enum class Kind { Auto, Exhaustive, Sampled };
    Kind kind = Kind::Auto;
    std::uint64_t seed = kDefaultSeed;
    std::size_t samples = kDefaultSamples;

    static VerifyMode automatic(std::uint64_t seed = kDefaultSeed, std::size_t samples = kDefaultSamples) {
        return {Kind::Auto, seed, samples};
    }
    static VerifyMode exhaustive() { return {Kind::Exhaustive, kDefaultSeed, kDefaultSamples}; }
    static VerifyMode sampled(std::uint64_t seed, std::size_t samples) { return {Kind::Sampled, seed, samples}; }

    // True when a space of the given size is enumerated rather than sampled.
    bool enumerates(std::uint64_t space) const;
};

// s_1 .. s_{p-1}.
std::vector<Vec> compute_s(const HomLieAlgebra& A, const Vec& x, const Vec& y);
Vec sum_s(const HomLieAlgebra& A, const Vec& x, const Vec& y);

// Ascending-index fold of R2/R3 over the coordinates of x.
Vec eval_p(const HomLieAlgebra& A, const PStructure& P, const Vec& x);
// Same fold in a caller-chosen coordinate order.
Vec eval_p_ordered(const HomLieAlgebra& A, const PStructure& P, const Vec& x, const std::vector<std::size_t>& order);

// eval_p with the twist powers computed once, for repeated evaluation.
// Holds references to A and P.
class PMapEvaluator {
public:
    PMapEvaluator(const HomLieAlgebra& A, const PStructure& P);
    Vec operator()(const Vec& x) const;

private:
    const HomLieAlgebra& A_;
    const PStructure& P_;
    std::vector<Mat> pw_;
};

// ad(alpha^{p-1} x) o ... o ad(alpha x) applied to v.
Vec p_tower(const HomLieAlgebra& A, const Vec& x, const Vec& v);
// R1 for one x with a given x^[p]; returns the first failing column or -1.
long r1_defect(const HomLieAlgebra& A, const Vec& x, const Vec& xp);

Report verify_pstructure(const HomLieAlgebra& A, const PStructure& P, const VerifyMode& mode = {},
                         Exec exec = Exec::Parallel);

Report check_restricted_derivation(const HomLieAlgebra& A, const PStructure& P, const Derivation& D,
                                   const VerifyMode& mode = {}, Exec exec = Exec::Parallel);
bool is_restricted_derivation(const HomLieAlgebra& A, const PStructure& P, const Derivation& D,
                              const VerifyMode& mode = {});

bool check_p_property(const HomLieAlgebra& A, const Mat& D, const PPropertyWitness& w);
// First witness in (xi ascending, free variables zero) order.
std::optional<PPropertyWitness> solve_p_property(const HomLieAlgebra& A, const Mat& D);

// eta_1 .. eta_{p-1}; throws OddCharRequired for p = 2.
std::vector<Scalar> compute_eta(const HomLieAlgebra& A, const BilinearForm& B, const Mat& D, const Vec& u,
                                const Vec& v);

} // namespace homext
