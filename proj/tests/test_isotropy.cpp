#include <doctest.h>

#include <random>

#include "dslice/isotropy.hpp"
#include "test_support.hpp"

using namespace dslice;
using dslice_test::planted_doubly_isotropic;

namespace {

ColouredBoundarySeifertMatrix single_block(const IntMatrix& a) {
    ColouredBoundarySeifertMatrix b = ColouredBoundarySeifertMatrix::zero(1, {a.rows()});
    b.block(0, 0) = a;
    return b;
}

IsotropicFamily family_of(const std::vector<IntMatrix>& bases) { return IsotropicFamily{bases}; }

IntMatrix col_vec(std::vector<long> entries) {
    IntMatrix m(static_cast<long>(entries.size()), 1);
    for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<long>(i), 0) = entries[i];
    return m;
}

}  // namespace

TEST_CASE("isotropic family recognition") {
    ColouredBoundarySeifertMatrix a = single_block(IntMatrix::from_rows({{0, 1}, {0, 0}}));

    // the trivial collection is always isotropic
    CHECK(is_isotropic_family(a, family_of({IntMatrix(2, 0)})));

    CHECK(is_isotropic_family(a, family_of({col_vec({1, 0})})));

    ColouredBoundarySeifertMatrix one = single_block(IntMatrix::from_rows({{1}}));
    CHECK_FALSE(is_isotropic_family(one, family_of({col_vec({1})})));

    // non-summands are rejected: 2 * e1 spans an index-two sublattice
    CHECK_FALSE(is_isotropic_family(a, family_of({col_vec({2, 0})})));
    CHECK_FALSE(spans_direct_summand(col_vec({2, 0})));
    CHECK(spans_direct_summand(col_vec({1, 0})));
    CHECK(spans_direct_summand(IntMatrix(3, 0)));
}

TEST_CASE("doubly isotropic recognition") {
    ColouredBoundarySeifertMatrix a = single_block(IntMatrix::from_rows({{0, 1}, {0, 0}}));
    IsotropicFamily gplus = family_of({col_vec({1, 0})});
    IsotropicFamily gminus = family_of({col_vec({0, 1})});
    CHECK(is_doubly_isotropic(a, gplus, gminus));
    CHECK_FALSE(is_doubly_isotropic(a, gplus, gplus));

    ColouredBoundarySeifertMatrix tref =
        single_block(IntMatrix::from_rows({{-1, 1}, {0, -1}}));
    CHECK_FALSE(is_doubly_isotropic(tref, gplus, gminus));
}

TEST_CASE("knot block hyperbolic check") {
    IntMatrix a = IntMatrix::from_rows({{0, 1}, {0, 0}});
    CHECK(knot_block_hyperbolic_check(a, col_vec({1, 0}), col_vec({0, 1})));

    IntMatrix b = IntMatrix::from_rows({{0, 2}, {1, 0}});
    CHECK(knot_block_hyperbolic_check(b, col_vec({1, 0}), col_vec({0, 1})));

    // half-rank condition: a 1-dim summand with a wrong-size complement
    IntMatrix big(4, 4);
    big.at(0, 2) = 1;
    big.at(1, 3) = 1;
    big.at(2, 0) = 0;
    IntMatrix g1(4, 1);
    g1.at(0, 0) = 1;
    IntMatrix g3(4, 3);
    g3.at(1, 0) = 1;
    g3.at(2, 1) = 1;
    g3.at(3, 2) = 1;
    CHECK_FALSE(knot_block_hyperbolic_check(big, g1, g3));

    IntMatrix singular = IntMatrix::from_rows({{0, 0}, {0, 0}});
    CHECK_THROWS_AS(knot_block_hyperbolic_check(singular, col_vec({1, 0}), col_vec({0, 1})),
                    std::invalid_argument);
}

TEST_CASE("search on the stated examples") {
    ColouredBoundarySeifertMatrix a = single_block(IntMatrix::from_rows({{0, 1}, {0, 0}}));
    IsotropySearchResult r = search_doubly_isotropic(a, 1);
    REQUIRE(r.status == IsotropySearchResult::Status::found);
    CHECK(is_doubly_isotropic(a, r.gplus, r.gminus));

    ColouredBoundarySeifertMatrix one = single_block(IntMatrix::from_rows({{1}}));
    IsotropySearchResult r1 = search_doubly_isotropic(one, 2);
    CHECK(r1.status == IsotropySearchResult::Status::certified_none);

    ColouredBoundarySeifertMatrix tref =
        single_block(IntMatrix::from_rows({{-1, 1}, {0, -1}}));
    IsotropySearchResult r2 = search_doubly_isotropic(tref, 2);
    CHECK(r2.status == IsotropySearchResult::Status::certified_none);

    ColouredBoundarySeifertMatrix big = single_block(IntMatrix(16, 16));
    CHECK_THROWS_AS(search_doubly_isotropic(big, 1), std::length_error);
}

TEST_CASE("found witnesses make the assembled matrix hyperbolic") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 6; ++trial) {
        int mu = 1 + trial % 2;
        std::vector<long> sizes(static_cast<size_t>(mu), 2);
        std::vector<long> rm(static_cast<size_t>(mu), 1);
        auto pl = planted_doubly_isotropic(rng, mu, sizes, rm, 2, 1);
        IsotropySearchResult r = search_doubly_isotropic(pl.a, 2);
        if (r.status != IsotropySearchResult::Status::found) continue;  // bound too small
        CHECK(is_doubly_isotropic(pl.a, r.gplus, r.gminus));
        // stacked bases are orthogonal metabolisers of the assembled pairing
        IntMatrix whole = pl.a.assembled();
        long n = whole.rows();
        for (const auto& fam : {r.gminus, r.gplus}) {
            long cols = 0;
            for (const auto& b : fam.bases) cols += b.cols();
            IntMatrix stacked(n, cols);
            long coff = 0, roff = 0;
            for (const auto& b : fam.bases) {
                for (long i = 0; i < b.rows(); ++i)
                    for (long j = 0; j < b.cols(); ++j) stacked.at(roff + i, coff + j) = b.at(i, j);
                roff += b.rows();
                coff += b.cols();
            }
            CHECK((stacked.transpose() * whole * stacked).is_zero());
        }
    }
}

TEST_CASE("planted hyperbolic inputs are recovered") {
    std::mt19937 rng(67);
    int found = 0, total = 0;
    for (int trial = 0; trial < 8; ++trial) {
        auto pl = planted_doubly_isotropic(rng, 1, {2}, {1}, 2, 1);
        ++total;
        IsotropySearchResult r = search_doubly_isotropic(pl.a, 2);
        if (r.status == IsotropySearchResult::Status::found) {
            ++found;
            CHECK(is_doubly_isotropic(pl.a, r.gplus, r.gminus));
        } else {
            // the planted witness must still verify, so only the bound failed
            CHECK(is_doubly_isotropic(pl.a, IsotropicFamily{pl.gplus},
                                      IsotropicFamily{pl.gminus}));
        }
    }
    CHECK(found >= total / 2);
}

TEST_CASE("certified none is basis independent") {
    std::mt19937 rng(73);
    IntMatrix tref = IntMatrix::from_rows({{-1, 1}, {0, -1}});
    for (int trial = 0; trial < 5; ++trial) {
        IntMatrix u = dslice_test::random_unimodular(rng, 2, 1);
        ColouredBoundarySeifertMatrix a = single_block(u.transpose() * tref * u);
        CHECK(search_doubly_isotropic(a, 2).status ==
              IsotropySearchResult::Status::certified_none);
    }
}
