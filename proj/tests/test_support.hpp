#pragma once

// Shared test fixtures: a braid-closure PD generator and small diagram
// surgeries. Everything here is an independent construction path used to
// cross-check the library, so it deliberately avoids the library's own
// diagram generators.

#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "dslice/constructions.hpp"
#include "dslice/diagram.hpp"

namespace dslice_test {

inline dslice::IntMatrix random_int_matrix(std::mt19937& rng, long rows, long cols, long lo,
                                           long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    dslice::IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

inline dslice::IntMatrix random_unimodular(std::mt19937& rng, long n, long coef_bound = 1,
                                           int ops = 8) {
    dslice::IntMatrix u = dslice::IntMatrix::identity(n);
    if (n == 0) return u;
    std::uniform_int_distribution<long> pick(0, n - 1);
    std::uniform_int_distribution<long> coef(-coef_bound, coef_bound);
    for (int k = 0; k < ops; ++k) {
        long i = pick(rng), j = pick(rng);
        if (i == j) continue;
        mpz_class c = coef(rng);
        for (long t = 0; t < n; ++t) u.at(i, t) += c * u.at(j, t);
    }
    return u;
}

// A doubly isotropic coloured boundary Seifert matrix with a known witness:
// hyperbolic block layout per colour pair, then unimodular conjugation per
// colour.
struct Planted {
    dslice::ColouredBoundarySeifertMatrix a;
    std::vector<dslice::IntMatrix> gminus, gplus;  // witness bases per colour
};

inline Planted planted_doubly_isotropic(std::mt19937& rng, int mu,
                                        const std::vector<long>& sizes,
                                        const std::vector<long>& minus_ranks,
                                        long entry_bound = 2, long conj_bound = 1) {
    using dslice::ColouredBoundarySeifertMatrix;
    using dslice::IntMatrix;
    using dslice::RatMatrix;
    Planted out;
    out.a = ColouredBoundarySeifertMatrix::zero(mu, sizes);
    for (int i = 0; i < mu; ++i)
        for (int j = i; j < mu; ++j) {
            long rm_i = minus_ranks[static_cast<size_t>(i)];
            long rm_j = minus_ranks[static_cast<size_t>(j)];
            long rp_i = sizes[static_cast<size_t>(i)] - rm_i;
            long rp_j = sizes[static_cast<size_t>(j)] - rm_j;
            IntMatrix blk(sizes[static_cast<size_t>(i)], sizes[static_cast<size_t>(j)]);
            IntMatrix p = random_int_matrix(rng, rm_i, rp_j, -entry_bound, entry_bound);
            IntMatrix q = random_int_matrix(rng, rp_i, rm_j, -entry_bound, entry_bound);
            for (long r = 0; r < rm_i; ++r)
                for (long c = 0; c < rp_j; ++c) blk.at(r, rm_j + c) = p.at(r, c);
            for (long r = 0; r < rp_i; ++r)
                for (long c = 0; c < rm_j; ++c) blk.at(rm_i + r, c) = q.at(r, c);
            out.a.block(i, j) = blk;
            if (i != j) out.a.block(j, i) = blk.transpose();
        }
    for (int i = 0; i < mu; ++i) {
        long n = sizes[static_cast<size_t>(i)];
        IntMatrix u = random_unimodular(rng, n, conj_bound);
        for (int j = 0; j < mu; ++j) out.a.block(i, j) = u.transpose() * out.a.block(i, j);
        for (int j = 0; j < mu; ++j) out.a.block(j, i) = out.a.block(j, i) * u;
        RatMatrix ui = RatMatrix(u).inverse();
        long rm = minus_ranks[static_cast<size_t>(i)];
        IntMatrix bm(n, rm), bp(n, n - rm);
        for (long r = 0; r < n; ++r) {
            for (long c = 0; c < rm; ++c) bm.at(r, c) = ui.at(r, c).get_num();
            for (long c = rm; c < n; ++c) bp.at(r, c - rm) = ui.at(r, c).get_num();
        }
        out.gminus.push_back(bm);
        out.gplus.push_back(bp);
    }
    out.a.validate();
    return out;
}

// Closure of a braid word on `strands` strands. Letters: +i means the strand
// moving from position i+1 crosses over towards position i (a positive
// crossing for downward-oriented strands), -i the mirror. Positions are
// 1-based; every strand must cross somewhere.
inline dslice::PDCode braid_closure_pd(int strands, const std::vector<int>& word) {
    if (strands < 2) throw std::invalid_argument("need at least two strands");
    struct Crossing {
        bool positive;
        long port[4];  // NW, NE, SW, SE (provisional arc ids)
    };
    long next_arc = 0;
    std::vector<long> cur(static_cast<size_t>(strands));
    for (int j = 0; j < strands; ++j) cur[static_cast<size_t>(j)] = next_arc++;
    std::vector<long> top = cur;

    std::vector<Crossing> xs;
    for (int letter : word) {
        int i = std::abs(letter) - 1;
        if (i < 0 || i + 1 >= strands) throw std::invalid_argument("bad braid letter");
        Crossing c;
        c.positive = letter > 0;
        c.port[0] = cur[static_cast<size_t>(i)];      // NW
        c.port[1] = cur[static_cast<size_t>(i) + 1];  // NE
        c.port[2] = next_arc++;                       // SW
        c.port[3] = next_arc++;                       // SE
        cur[static_cast<size_t>(i)] = c.port[2];      // NE strand lands left
        cur[static_cast<size_t>(i) + 1] = c.port[3];  // NW strand lands right
        xs.push_back(c);
    }

    // closure: bottom arc of each position is the top arc again
    std::vector<long> parent(static_cast<size_t>(next_arc));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](long x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
        return x;
    };
    for (int j = 0; j < strands; ++j) {
        long a = find(cur[static_cast<size_t>(j)]);
        long b = find(top[static_cast<size_t>(j)]);
        if (a == b) throw std::invalid_argument("braid has a crossingless strand");
        parent[static_cast<size_t>(a)] = b;
    }

    // successor along the orientation: NW -> SE, NE -> SW at every crossing
    std::map<long, long> succ;
    for (const auto& c : xs) {
        succ[find(c.port[0])] = find(c.port[3]);
        succ[find(c.port[1])] = find(c.port[2]);
    }
    // consecutive labels along each component
    std::map<long, long> label;
    long next_label = 1;
    for (const auto& [a, b] : succ) {
        (void)b;
        if (label.count(a)) continue;
        long x = a;
        while (!label.count(x)) {
            label[x] = next_label++;
            x = succ.at(x);
        }
    }

    std::vector<dslice::PDCode::Crossing> out;
    for (const auto& c : xs) {
        long nw = label.at(find(c.port[0]));
        long ne = label.at(find(c.port[1]));
        long sw = label.at(find(c.port[2]));
        long se = label.at(find(c.port[3]));
        if (c.positive)
            out.push_back({{nw, sw, se, ne}});  // under NW->SE, ccw from NW
        else
            out.push_back({{ne, nw, sw, se}});  // under NE->SW, ccw from NE
    }
    return dslice::PDCode::from_crossings(out);
}

// Connected sum: splice arc `x` of a into arc `y` of b. Both records keep
// their orientations; determinants multiply and signatures add.
inline dslice::PDCode pd_connected_sum(const dslice::PDCode& a, long arc_a,
                                       const dslice::PDCode& b, long arc_b) {
    using dslice::PDCode;
    long shift = 0;
    for (long l : a.arc_labels()) shift = std::max(shift, l);

    // locate in/out occurrences of the spliced arcs
    auto roles = [](const PDCode& pd, long arc) {
        // returns {in_occurrence, out_occurrence} as (crossing, slot)
        std::pair<std::pair<long, int>, std::pair<long, int>> r{{-1, -1}, {-1, -1}};
        for (long k = 0; k < pd.num_crossings(); ++k) {
            const auto& x = pd.crossings()[static_cast<size_t>(k)];
            for (int s = 0; s < 4; ++s) {
                if (x.arc[s] != arc) continue;
                bool incoming =
                    s == 0 || (s != 2 && s == pd.over_in_slot(k));
                if (incoming)
                    r.first = {k, s};
                else if (s == 2 || s == 1 || s == 3)
                    r.second = {k, s};
            }
        }
        if (r.first.first < 0 || r.second.first < 0)
            throw std::invalid_argument("arc does not have both endpoints at crossings");
        return r;
    };
    auto ra = roles(a, arc_a);
    auto rb = roles(b, arc_b);

    std::vector<PDCode::Crossing> xs;
    for (long k = 0; k < a.num_crossings(); ++k) xs.push_back(a.crossings()[static_cast<size_t>(k)]);
    for (long k = 0; k < b.num_crossings(); ++k) {
        PDCode::Crossing c = b.crossings()[static_cast<size_t>(k)];
        for (int s = 0; s < 4; ++s) c.arc[s] += shift;
        xs.push_back(c);
    }
    // a's strand now runs into b's arc and returns: at a's in-occurrence the
    // strand arrives as before; b's out-occurrence feeds a's continuation.
    // splice: a_out stays arc_a; b_in becomes arc_a; b_out stays arc_b+shift;
    // a_in becomes arc_b+shift.
    xs[static_cast<size_t>(a.num_crossings() + rb.first.first)]
        .arc[rb.first.second] = arc_a;
    xs[static_cast<size_t>(ra.first.first)].arc[ra.first.second] = arc_b + shift;
    return PDCode::from_crossings(xs);
}

// Reidemeister-2 poke: a new unknotted circle passes under arc `x` twice
// with opposite crossing signs. The link type gains a split unknot, but the
// diagram stays connected.
inline dslice::PDCode pd_poke(const dslice::PDCode& pd, long arc_x) {
    using dslice::PDCode;
    long top = 0;
    for (long l : pd.arc_labels()) top = std::max(top, l);
    long lp = top + 1;   // middle piece of the poked arc
    long lpp = top + 2;  // final piece
    long c1 = top + 3;   // outer circle arc
    long c2 = top + 4;   // fingertip arc

    // relabel the head occurrence of arc_x to lpp
    std::vector<PDCode::Crossing> xs;
    for (long k = 0; k < pd.num_crossings(); ++k) xs.push_back(pd.crossings()[static_cast<size_t>(k)]);
    bool done = false;
    for (long k = 0; k < pd.num_crossings() && !done; ++k)
        for (int s = 0; s < 4 && !done; ++s) {
            if (xs[static_cast<size_t>(k)].arc[s] != arc_x) continue;
            bool incoming = s == 0 || (s != 2 && s == pd.over_in_slot(k));
            if (incoming) {
                xs[static_cast<size_t>(k)].arc[s] = lpp;
                done = true;
            }
        }
    if (!done) throw std::invalid_argument("arc has no head to poke");
    // crossing A: circle (under, northbound) meets the knot arc (over, east)
    xs.push_back({{c1, lp, c2, arc_x}});
    // crossing B: circle heads south again
    xs.push_back({{c2, lp, c1, lpp}});
    return PDCode::from_crossings(xs);
}

}  // namespace dslice_test
