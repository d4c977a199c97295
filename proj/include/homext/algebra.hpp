#pragma once

// Hom-Lie algebras given by structure constants, bilinear forms,
// derivations, subspaces, and the axiom checkers built on them.

#include <functional>
#include <string>
#include <vector>

#include "homext/gfp.hpp"
#include "homext/parallel.hpp"
#include "homext/report.hpp"

namespace homext {

// (g, [.,.], alpha). Only c[i][j][.] with i<j is stored; c[i][i] = 0 and
// c[j][i] = -c[i][j], so alternation and antisymmetry hold by construction.
class HomLieAlgebra {
public:
    using BracketTable = std::function<Vec(std::size_t, std::size_t)>;

    HomLieAlgebra(PrimeField field, std::size_t n, std::vector<Scalar> upper, Mat alpha,
                  std::vector<std::string> names = {});

    // Reads [e_i, e_j] for i<j from the table.
    static HomLieAlgebra from_table(PrimeField field, std::size_t n, const BracketTable& table, Mat alpha,
                                    std::vector<std::string> names = {});

    static std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }

    const PrimeField& field() const { return field_; }
    std::uint32_t p() const { return field_.p(); }
    std::size_t dim() const { return n_; }
    const std::vector<Scalar>& upper() const { return upper_; }
    const Mat& alpha() const { return alpha_; }
    const std::vector<std::string>& basis_names() const { return names_; }

    Scalar structure(std::size_t i, std::size_t j, std::size_t k) const;
    Vec bracket(const Vec& x, const Vec& y) const;
    Vec bracket_basis(std::size_t i, std::size_t j) const { return ad_[i].column(j); }
    // Column j is [e_i, e_j].
    const Mat& ad_basis(std::size_t i) const { return ad_[i]; }
    Mat ad(const Vec& x) const;
    Vec twist(const Vec& x) const { return matvec(field_, alpha_, x); }
    Mat alpha_power(std::size_t k) const { return mat_pow(field_, alpha_, k); }

    // Same field, tensor and twist; names are not compared.
    bool same_structure(const HomLieAlgebra& o) const;

    // Copy with one stored constant replaced (i<j).
    HomLieAlgebra with_constant(std::size_t i, std::size_t j, std::size_t k, Scalar value) const;
    HomLieAlgebra with_alpha(Mat alpha) const;

private:
    void check_dim(const Vec& v) const;

    PrimeField field_;
    std::size_t n_;
    std::vector<Scalar> upper_;
    Mat alpha_;
    std::vector<std::string> names_;
    std::vector<Mat> ad_;
};

// Accumulates constants; set(i,j,...) with i>j stores the negation.
class StructureBuilder {
public:
    StructureBuilder(PrimeField field, std::size_t n);
    void set(std::size_t i, std::size_t j, std::size_t k, std::int64_t c);
    void set(std::size_t i, std::size_t j, const Vec& value);
    HomLieAlgebra build(Mat alpha, std::vector<std::string> names = {}) const;
    HomLieAlgebra build_untwisted(std::vector<std::string> names = {}) const;

private:
    PrimeField field_;
    std::size_t n_;
    std::vector<Scalar> upper_;
};

struct BilinearForm {
    Mat gram;
    Scalar eval(const PrimeField& F, const Vec& x, const Vec& y) const;
};

struct Derivation {
    Mat mat;
    unsigned degree = 1;
};

// Row-reduced basis; two subspaces are equal iff their bases are.
class Subspace {
public:
    static Subspace span(const PrimeField& F, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace zero(std::size_t ambient) { return Subspace(ambient, {}); }
    static Subspace full(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    bool contains(const PrimeField& F, const Vec& v) const;
    bool operator==(const Subspace& o) const = default;

private:
    Subspace(std::size_t ambient, std::vector<Vec> basis) : ambient_(ambient), basis_(std::move(basis)) {}
    std::size_t ambient_;
    std::vector<Vec> basis_;
};

Report verify_hom_lie(const HomLieAlgebra& A, Exec exec = Exec::Parallel);
Report verify_quadratic(const HomLieAlgebra& A, const BilinearForm& B, Exec exec = Exec::Parallel);
// alpha^k-derivation rule on basis pairs and commutation with alpha.
Report verify_derivation(const HomLieAlgebra& A, const Derivation& D);

Subspace center(const HomLieAlgebra& A);
Subspace orth(const PrimeField& F, const BilinearForm& B, const Subspace& S);
bool is_ideal(const HomLieAlgebra& A, const Subspace& S);
bool is_nondegenerate_ideal(const HomLieAlgebra& A, const BilinearForm& B, const Subspace& S);
bool d_invariant(const PrimeField& F, const BilinearForm& B, const Mat& D);

// Same algebra in the basis given by the columns of T (old coordinates).
HomLieAlgebra change_basis(const HomLieAlgebra& A, const Mat& T, const Mat& T_inv);
BilinearForm change_basis(const PrimeField& F, const BilinearForm& B, const Mat& T);

} // namespace homext
