#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dslice/algebra.hpp"
#include "dslice/diagram.hpp"
#include "dslice/invariants.hpp"

namespace dslice {

struct PretzelParams {
    std::vector<long> twists;
    std::string provenance;

    static PretzelParams parse(const std::string& text);  // "P(2,-2,2)"
    std::string to_string() const;
};

// Issa's folding at parameter level: insert (-a_j, a_j) after position j
// (1-based). The output records that double sliceness is inherited.
PretzelParams fold_pretzel(const PretzelParams& p, long j);

// Standard pretzel diagram: twist columns joined in a necklace. For all-even
// pretzels the components are oriented antiparallel through every column
// (the orientation inherited through the folding construction).
PDCode pretzel_pd(const PretzelParams& p);

// Seifert matrix of the flat two-disc surface of an all-even pretzel, in the
// folding orientation. The surface is planar, so the matrix is symmetric;
// its correctness contract is |det(V + V^T)| = Goeritz determinant of
// pretzel_pd and lt_signature(V, -1) = murasugi_signature(pretzel_pd).
IntMatrix pretzel_even_seifert(const PretzelParams& p);

// Coloured boundary Seifert matrix: mu^2 integer blocks A_ij with A_ij of
// shape a_i x a_j and A_ij = A_ji^T for i != j.
struct ColouredBoundarySeifertMatrix {
    int mu = 1;
    std::vector<long> block_sizes;
    std::vector<IntMatrix> blocks;  // row-major, blocks[i*mu+j]

    const IntMatrix& block(int i, int j) const;
    IntMatrix& block(int i, int j);
    long total_size() const;
    void validate() const;

    static ColouredBoundarySeifertMatrix zero(int mu, std::vector<long> sizes);
    // The blocks glued into one (sum a_i) x (sum a_i) integer matrix.
    IntMatrix assembled() const;
};

// Generalised Seifert matrices of the boundary C-complex: off-diagonal
// blocks are independent of eps, the i-th diagonal block is A_ii when
// eps_i = -1 and A_ii^T when eps_i = +1. beta0 is the block count.
GeneralizedSeifertCollection boundary_to_gsm(const ColouredBoundarySeifertMatrix& b);

using CircleSignatureFn = std::function<SigValue(TorusPoint::Angle)>;

// Signature of the parallel-oriented (2,0)-cable at w: sigma_K(w^2).
// Throws when w = 1.
SigValue cable_signature(const CircleSignatureFn& sigma_k, TorusPoint::Angle w);

}  // namespace dslice
