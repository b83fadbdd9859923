#pragma once

#include <string>
#include <vector>

#include "dslice/algebra.hpp"
#include "dslice/constructions.hpp"

namespace dslice {

// One subgroup G_i <= Z^{a_i} per colour, each spanned by the columns of a
// basis matrix and required to be a direct summand.
struct IsotropicFamily {
    std::vector<IntMatrix> bases;  // per colour: a_i rows, rank(G_i) columns

    long rank(int i) const { return bases[static_cast<size_t>(i)].cols(); }
};

// Full column rank spanning a direct summand (all Smith factors 1).
bool spans_direct_summand(const IntMatrix& basis);

// B_i^T A_ij B_j = 0 for all pairs of colours, every G_i a direct summand.
bool is_isotropic_family(const ColouredBoundarySeifertMatrix& a, const IsotropicFamily& g);

// Both families isotropic and G_i^- + G_i^+ = Z^{a_i} for every colour
// (concatenated bases unimodular).
bool is_doubly_isotropic(const ColouredBoundarySeifertMatrix& a, const IsotropicFamily& gplus,
                         const IsotropicFamily& gminus);

// For a knot block (A - A^T invertible): doubly isotropic forces hyperbolic,
// i.e. both summands of half rank, isotropic and complementary.
bool knot_block_hyperbolic_check(const IntMatrix& a, const IntMatrix& gplus,
                                 const IntMatrix& gminus);

inline constexpr long kIsotropySizeBound = 12;

struct IsotropySearchResult {
    enum class Status { found, none_within_bound, certified_none } status =
        Status::none_within_bound;
    IsotropicFamily gplus, gminus;
    // for certified_none: which invariant obstruction closed the case;
    // for none_within_bound: scope notes (bound searched, budget)
    std::string note;
};

// Bounded brute-force search for a complementary isotropic pair with basis
// entries in [-coeff_bound, coeff_bound]. `none_within_bound` is explicitly
// not a proof of non-existence; `certified_none` is (signature or
// determinant obstruction). Throws std::length_error above the size bound.
IsotropySearchResult search_doubly_isotropic(const ColouredBoundarySeifertMatrix& a,
                                             long coeff_bound);

}  // namespace dslice
