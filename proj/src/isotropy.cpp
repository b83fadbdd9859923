#include "dslice/isotropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "dslice/invariants.hpp"
#include "dslice/laurent.hpp"

namespace dslice {

bool spans_direct_summand(const IntMatrix& basis) {
    if (basis.cols() == 0) return true;
    SmithResult s = smith_normal_form(basis);
    if (s.rank != basis.cols()) return false;
    return std::all_of(s.factors.begin(), s.factors.end(),
                       [](const mpz_class& d) { return d == 1; });
}

namespace {

bool pairing_vanishes(const IntMatrix& a, const IntMatrix& bi, const IntMatrix& bj) {
    IntMatrix prod = bi.transpose() * a * bj;
    return prod.is_zero();
}

IntMatrix concat_cols(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (long j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

}  // namespace

bool is_isotropic_family(const ColouredBoundarySeifertMatrix& a, const IsotropicFamily& g) {
    a.validate();
    if (static_cast<int>(g.bases.size()) != a.mu)
        throw std::invalid_argument("family must supply one basis per colour");
    for (int i = 0; i < a.mu; ++i) {
        const IntMatrix& b = g.bases[static_cast<size_t>(i)];
        if (b.rows() != a.block_sizes[static_cast<size_t>(i)])
            throw std::invalid_argument("basis shape mismatch");
        if (!spans_direct_summand(b)) return false;
    }
    for (int i = 0; i < a.mu; ++i)
        for (int j = 0; j < a.mu; ++j)
            if (!pairing_vanishes(a.block(i, j), g.bases[static_cast<size_t>(i)],
                                  g.bases[static_cast<size_t>(j)]))
                return false;
    return true;
}

bool is_doubly_isotropic(const ColouredBoundarySeifertMatrix& a, const IsotropicFamily& gplus,
                         const IsotropicFamily& gminus) {
    if (!is_isotropic_family(a, gplus) || !is_isotropic_family(a, gminus)) return false;
    for (int i = 0; i < a.mu; ++i) {
        const IntMatrix& bp = gplus.bases[static_cast<size_t>(i)];
        const IntMatrix& bm = gminus.bases[static_cast<size_t>(i)];
        if (bp.cols() + bm.cols() != a.block_sizes[static_cast<size_t>(i)]) return false;
        IntMatrix cat = concat_cols(bm, bp);
        if (cat.rows() != cat.cols()) return false;
        mpz_class d = cat.rows() == 0 ? mpz_class(1) : cat.det();
        if (d != 1 && d != -1) return false;
    }
    return true;
}

bool knot_block_hyperbolic_check(const IntMatrix& a, const IntMatrix& gplus,
                                 const IntMatrix& gminus) {
    if (a.rows() != a.cols()) throw std::invalid_argument("block must be square");
    IntMatrix skew = a - a.transpose();
    if (skew.rows() > 0 && skew.det() == 0)
        throw std::invalid_argument("A - A^T is singular; not a knot block");
    long n = a.rows();
    if (gplus.cols() * 2 != n || gminus.cols() * 2 != n) return false;
    if (!spans_direct_summand(gplus) || !spans_direct_summand(gminus)) return false;
    if (!pairing_vanishes(a, gplus, gplus) || !pairing_vanishes(a, gminus, gminus)) return false;
    IntMatrix cat = concat_cols(gminus, gplus);
    mpz_class d = cat.det();
    return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// Bounded search.
// ---------------------------------------------------------------------------

namespace {

// primitive candidate vectors with entries in [-bound, bound], first nonzero
// entry positive, ordered by max-norm then lexicographically
std::vector<std::vector<long>> candidate_vectors(long dim, long bound) {
    std::vector<std::vector<long>> out;
    std::vector<long> v(static_cast<size_t>(dim), -bound);
    if (dim == 0) return out;
    for (;;) {
        long g = 0;
        bool seen_nonzero = false;
        bool first_positive = false;
        for (long x : v) {
            g = std::gcd(g, std::abs(x));
            if (!seen_nonzero && x != 0) {
                seen_nonzero = true;
                first_positive = x > 0;
            }
        }
        if (seen_nonzero && first_positive && g == 1) out.push_back(v);
        long pos = dim - 1;
        for (;;) {
            if (++v[static_cast<size_t>(pos)] <= bound) break;
            v[static_cast<size_t>(pos)] = -bound;
            if (--pos < 0) break;
        }
        if (pos < 0) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        long ma = 0, mb = 0;
        for (long x : a) ma = std::max(ma, std::abs(x));
        for (long x : b) mb = std::max(mb, std::abs(x));
        if (ma != mb) return ma < mb;
        return a < b;
    });
    return out;
}

struct SearchCtx {
    const ColouredBoundarySeifertMatrix* a = nullptr;
    long bound = 1;
    long budget = 0;
    bool exhausted_budget = false;
    std::vector<std::vector<std::vector<long>>> cands;  // per colour
    std::vector<std::vector<long>> rank_minus;          // target ranks to try per colour
    std::vector<IntMatrix> bminus, bplus;
    bool found = false;

    IntMatrix cols_to_matrix(long dim, const std::vector<std::vector<long>>& cols) const {
        IntMatrix m(dim, static_cast<long>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (long i = 0; i < dim; ++i) m.at(i, static_cast<long>(j)) = cols[j][static_cast<size_t>(i)];
        return m;
    }
};

// Does adding the next column keep the partial family isotropic? `family`
// holds completed per-colour bases of the same sign; `partial` the columns
// chosen so far in colour `ci`.
bool extension_ok(const SearchCtx& ctx, const std::vector<IntMatrix>& family, int ci,
                  const std::vector<std::vector<long>>& partial_cols) {
    long dim = ctx.a->block_sizes[static_cast<size_t>(ci)];
    IntMatrix b = ctx.cols_to_matrix(dim, partial_cols);
    // self block, both sides
    if (!pairing_vanishes(ctx.a->block(ci, ci), b, b)) return false;
    // against previously completed colours of the same family
    for (int j = 0; j < ci; ++j) {
        if (!pairing_vanishes(ctx.a->block(ci, j), b, family[static_cast<size_t>(j)])) return false;
        if (!pairing_vanishes(ctx.a->block(j, ci), family[static_cast<size_t>(j)], b)) return false;
    }
    return spans_direct_summand(b);
}

bool grow_family(SearchCtx& ctx, std::vector<IntMatrix>& family, int ci,
                 const std::vector<long>& ranks,
                 std::vector<std::vector<long>>& partial, size_t cand_from,
                 const std::function<bool()>& on_family_done);

bool next_colour(SearchCtx& ctx, std::vector<IntMatrix>& family, int ci,
                 const std::vector<long>& ranks, const std::function<bool()>& on_family_done) {
    if (ci == ctx.a->mu) return on_family_done();
    std::vector<std::vector<long>> partial;
    return grow_family(ctx, family, ci, ranks, partial, 0, on_family_done);
}

bool grow_family(SearchCtx& ctx, std::vector<IntMatrix>& family, int ci,
                 const std::vector<long>& ranks,
                 std::vector<std::vector<long>>& partial, size_t cand_from,
                 const std::function<bool()>& on_family_done) {
    long dim = ctx.a->block_sizes[static_cast<size_t>(ci)];
    if (static_cast<long>(partial.size()) == ranks[static_cast<size_t>(ci)]) {
        family[static_cast<size_t>(ci)] = ctx.cols_to_matrix(dim, partial);
        return next_colour(ctx, family, ci + 1, ranks, on_family_done);
    }
    const auto& cands = ctx.cands[static_cast<size_t>(ci)];
    for (size_t c = cand_from; c < cands.size(); ++c) {
        if (--ctx.budget < 0) {
            ctx.exhausted_budget = true;
            return false;
        }
        partial.push_back(cands[c]);
        if (extension_ok(ctx, family, ci, partial)) {
            if (grow_family(ctx, family, ci, ranks, partial, c + 1, on_family_done)) return true;
        }
        partial.pop_back();
        if (ctx.exhausted_budget) return false;
    }
    return false;
}

}  // namespace

IsotropySearchResult search_doubly_isotropic(const ColouredBoundarySeifertMatrix& a,
                                             long coeff_bound) {
    a.validate();
    if (a.total_size() > kIsotropySizeBound)
        throw std::length_error("total size exceeds the isotropy search bound");
    if (coeff_bound < 1) throw std::invalid_argument("coefficient bound must be positive");

    IsotropySearchResult res;

    // Invariant obstructions give certified non-existence.
    {
        GeneralizedSeifertCollection g = boundary_to_gsm(a);
        LaurentMatrix h = assemble_cmatrix(g);
        TorusPoint w = TorusPoint::all_minus_one(a.mu);
        SigValue s = signature_at(h, w);
        if (s.value != 0) {
            res.status = IsotropySearchResult::Status::certified_none;
            res.note = "signature of the C-complex matrix at (-1,...,-1) is " +
                       std::to_string(s.value) + " != 0";
            return res;
        }
    }
    for (int i = 0; i < a.mu; ++i) {
        const IntMatrix& blk = a.block(i, i);
        if (blk.rows() == 0) continue;
        IntMatrix skew = blk - blk.transpose();
        mpz_class sd = skew.det();
        if (sd == 1 || sd == -1) {
            mpz_class det_sym = abs((blk + blk.transpose()).det());
            if (mpz_perfect_square_p(det_sym.get_mpz_t()) == 0) {
                res.status = IsotropySearchResult::Status::certified_none;
                res.note = "knot block " + std::to_string(i + 1) + " has |det(A + A^T)| = " +
                           det_sym.get_str() + ", not a perfect square";
                return res;
            }
        }
    }

    SearchCtx ctx;
    ctx.a = &a;
    ctx.bound = coeff_bound;
    ctx.budget = 3000000;
    for (int i = 0; i < a.mu; ++i) {
        long dim = a.block_sizes[static_cast<size_t>(i)];
        if (std::pow(2.0 * coeff_bound + 1.0, static_cast<double>(dim)) > 2e6) {
            res.status = IsotropySearchResult::Status::none_within_bound;
            res.note = "candidate space too large for exhaustive coverage at this bound; "
                       "not a proof of non-existence";
            return res;
        }
        ctx.cands.push_back(candidate_vectors(dim, coeff_bound));
    }

    // admissible rank splits per colour (knot blocks force half rank)
    std::vector<std::vector<long>> rank_options;
    for (int i = 0; i < a.mu; ++i) {
        const IntMatrix& blk = a.block(i, i);
        long n = blk.rows();
        std::vector<long> opts;
        IntMatrix skew = blk - blk.transpose();
        mpz_class sd = n == 0 ? mpz_class(1) : skew.det();
        if (n > 0 && (sd == 1 || sd == -1)) {
            opts.push_back(n / 2);
        } else {
            for (long r = 0; r <= n; ++r) opts.push_back(r);
        }
        rank_options.push_back(opts);
    }

    // iterate over rank vectors for the minus family (plus family gets the
    // complementary ranks)
    std::vector<size_t> choice(static_cast<size_t>(a.mu), 0);
    for (;;) {
        std::vector<long> rm(static_cast<size_t>(a.mu)), rp(static_cast<size_t>(a.mu));
        for (int i = 0; i < a.mu; ++i) {
            rm[static_cast<size_t>(i)] = rank_options[static_cast<size_t>(i)][choice[static_cast<size_t>(i)]];
            rp[static_cast<size_t>(i)] = a.block_sizes[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)];
        }

        std::vector<IntMatrix> fm(static_cast<size_t>(a.mu)), fp(static_cast<size_t>(a.mu));
        bool ok = next_colour(ctx, fm, 0, rm, [&]() {
            // minus family complete; search the plus family with
            // complementarity per colour
            return next_colour(ctx, fp, 0, rp, [&]() {
                for (int i = 0; i < a.mu; ++i) {
                    IntMatrix cat = concat_cols(fm[static_cast<size_t>(i)], fp[static_cast<size_t>(i)]);
                    if (cat.rows() != cat.cols()) return false;
                    mpz_class d = cat.rows() == 0 ? mpz_class(1) : cat.det();
                    if (d != 1 && d != -1) return false;
                }
                return true;
            });
        });
        if (ok) {
            res.status = IsotropySearchResult::Status::found;
            res.gminus.bases = fm;
            res.gplus.bases = fp;
            if (!is_doubly_isotropic(a, res.gplus, res.gminus))
                throw std::logic_error("isotropy search returned an invalid witness");
            res.note = "witness found with coefficient bound " + std::to_string(coeff_bound);
            return res;
        }
        if (ctx.exhausted_budget) break;

        size_t pos = 0;
        for (; pos < choice.size(); ++pos) {
            if (++choice[pos] < rank_options[pos].size()) break;
            choice[pos] = 0;
        }
        if (pos == choice.size()) break;
    }

    res.status = IsotropySearchResult::Status::none_within_bound;
    std::ostringstream os;
    os << "no pair with basis entries in [-" << coeff_bound << "," << coeff_bound
       << "] for this matrix";
    if (ctx.exhausted_budget) os << " (search budget exhausted before full coverage)";
    os << "; not a proof of non-existence";
    res.note = os.str();
    return res;
}

}  // namespace dslice
