#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dslice/algebra.hpp"
#include "dslice/laurent.hpp"

namespace dslice {

// The 2^mu generalised Seifert matrices A^eps of a C-complex, keyed by sign
// strings like "-+" (one character per colour). Satisfies A^{-eps} =
// (A^eps)^T; beta0 is the number of connected components of the C-complex.
struct GeneralizedSeifertCollection {
    int mu = 1;
    long size = 0;
    long beta0 = 1;
    std::map<std::string, IntMatrix> matrices;
    // Optional: per-colour block sizes when the collection comes from a
    // coloured boundary Seifert matrix (lets the isotropy search recover the
    // block structure). Empty when unknown.
    std::vector<long> block_sizes;

    static std::string key_for(const std::vector<int>& signs);
    static std::string opposite_key(const std::string& key);

    // Builds the mu = 1 collection {A^- = a, A^+ = a^T}.
    static GeneralizedSeifertCollection from_seifert(const IntMatrix& a);

    // Completes missing sign vectors via transposes and checks all invariants;
    // throws std::invalid_argument on malformed data.
    void complete_and_validate();
    const IntMatrix& matrix(const std::string& key) const;
};

// H(t1..tmu) = sum_eps prod_i (1 - t_i^{eps_i}) A^eps.
LaurentMatrix assemble_cmatrix(const GeneralizedSeifertCollection& g);

struct SigValue {
    long value = 0;
    bool certified = true;
};

// Multivariable signature at a torus point. Returns 0 (certified) when some
// coordinate equals 1; exact when every coordinate is a half turn; numeric
// with a certification flag otherwise.
SigValue signature_at(const LaurentMatrix& h, const TorusPoint& w,
                      double tol = kDefaultSignatureTol);

// Multivariable nullity eta = null(H(w)) + beta0 - 1. Throws when some
// coordinate equals 1 (the nullity lives on the open torus).
SigValue nullity_at(const LaurentMatrix& h, long beta0, const TorusPoint& w,
                    double tol = kDefaultSignatureTol);

// Levine-Tristram signature of (1-w)A + (1-conj(w))A^T at w =
// exp(2*pi*i*p/q). Exact at half and quarter turns, numeric elsewhere.
SigValue lt_signature(const IntMatrix& a, TorusPoint::Angle w,
                      double tol = kDefaultSignatureTol);

// Alexander nullity beta(L) = (N - generic_rank(H)) + beta0 - 1, for H
// assembled from a C-complex of the link.
long alexander_nullity(const LaurentMatrix& h, long beta0);

// Torsion Alexander polynomial, one variable: the product of the nonzero
// invariant factors of tA - A^T, i.e. the gcd of its r x r minors (r the
// generic rank), canonically normalised. Never zero.
LaurentPoly torsion_alexander_1var(const IntMatrix& a);

// H1 of the double branched cover presented by A + A^T.
AbelianGroupClass branched_cover_from_seifert(const IntMatrix& a);

// Q/Z-valued linking form on coker(presentation), pairing
// lambda([x],[y]) = y^T M^{-1} x mod Z. Requires det != 0.
class LinkingFormOnCoker {
public:
    static LinkingFormOnCoker make(const IntMatrix& presentation);

    const IntMatrix& presentation() const { return pres_; }
    const AbelianGroupClass& group() const { return group_; }
    // invariant factors > 1 (coordinates of the reduced form)
    const std::vector<mpz_class>& reduced_factors() const { return ds_; }
    // pairing of two vectors in reduced coordinates, as a rational mod 1
    mpq_class pair_reduced(const std::vector<mpz_class>& x,
                           const std::vector<mpz_class>& y) const;
    // lift a reduced-coordinate vector back to presentation coordinates
    std::vector<mpz_class> lift(const std::vector<mpz_class>& reduced) const;

private:
    IntMatrix pres_;
    AbelianGroupClass group_;
    std::vector<mpz_class> ds_;
    std::vector<long> kept_;   // positions of ds_ in the SNF diagonal
    RatMatrix gram_;           // (U M U^T)^{-1} restricted to kept coordinates
    IntMatrix u_inverse_;
};

inline constexpr long kMetaboliserOrderBound = 10000;

// Brute-force metaboliser search: a subgroup G with |G|^2 = |group| and
// vanishing restricted pairing. `none` is certified (the enumeration is
// exhaustive); groups larger than the order bound report `inconclusive`.
struct MetaboliserResult {
    enum class Status { found, none, inconclusive } status = Status::none;
    // generators in reduced coordinates and lifted presentation coordinates
    std::vector<std::vector<mpz_class>> basis_reduced;
    std::vector<std::vector<mpz_class>> basis;
};

MetaboliserResult metaboliser_search(const LinkingFormOnCoker& l);

}  // namespace dslice
