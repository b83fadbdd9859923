#include <doctest.h>

#include "dslice/diagram.hpp"
#include "test_support.hpp"

using namespace dslice;
using dslice_test::braid_closure_pd;

namespace {

const char* kHopfPositive = "X(3,1,4,2);X(1,3,2,4)";
// standard 6-arc trefoil tuples; all crossings negative in our convention
const char* kTrefoilLeft = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";

}  // namespace

TEST_CASE("parsing basics") {
    PDCode unknot = PDCode::parse("");
    CHECK(unknot.num_crossings() == 0);
    CHECK(unknot.num_components() == 1);

    PDCode hopf = PDCode::parse(kHopfPositive);
    CHECK(hopf.num_crossings() == 2);
    CHECK(hopf.num_components() == 2);
    CHECK(hopf.num_arcs() == 4);

    // bracket form and separators
    PDCode hopf2 = PDCode::parse("PD[X[3,1,4,2], X[1,3,2,4]]");
    CHECK(hopf2.to_string() == hopf.to_string());

    CHECK_THROWS_AS(PDCode::parse("X(1,1,2,2);X(1,3,2,4)"), pd_parse_error);
    CHECK_THROWS_AS(PDCode::parse("X(1,2,3)"), pd_parse_error);
    CHECK_THROWS_AS(PDCode::parse("Y(1,2,3,4)"), pd_parse_error);
    // arc label used three times
    try {
        PDCode::parse("X(1,2,1,2);X(1,4,2,3)");
        CHECK(false);
    } catch (const pd_parse_error& e) {
        CHECK(std::string(e.what()).find("arc multiplicity") != std::string::npos);
    }
}

TEST_CASE("round trip of the canonical text form") {
    PDCode hopf = PDCode::parse(kHopfPositive);
    CHECK(hopf.to_string() == kHopfPositive);
    CHECK(PDCode::parse(hopf.to_string()).to_string() == kHopfPositive);
}

TEST_CASE("crossing signs and linking numbers") {
    PDCode hopf = PDCode::parse(kHopfPositive);
    CHECK(hopf.crossing_sign(0) == 1);
    CHECK(hopf.crossing_sign(1) == 1);
    IntMatrix lk = linking_matrix(hopf);
    CHECK(lk.at(0, 1) == 1);
    CHECK(lk.at(1, 0) == 1);
    CHECK(lk.at(0, 0) == 0);

    PDCode neg = hopf.mirrored();
    IntMatrix lk2 = linking_matrix(neg);
    CHECK(lk2.at(0, 1) == -1);

    // split unlink made of two kinked circles
    PDCode unlink = PDCode::parse("X(1,2,2,1);X(3,4,4,3)");
    CHECK(unlink.num_components() == 2);
    CHECK(unlink.num_split_pieces() == 2);
    CHECK(linking_matrix(unlink).is_zero());
}

TEST_CASE("reversing all crossings negates the linking matrix") {
    PDCode l = braid_closure_pd(3, {1, 1, 2, 2, 1, 1});
    IntMatrix lk = linking_matrix(l);
    IntMatrix lkm = linking_matrix(l.mirrored());
    CHECK(lkm == lk.negate());
}

TEST_CASE("Goeritz determinants of the basic links") {
    CHECK(link_determinant(PDCode::parse("")) == 1);
    CHECK(goeritz_matrix(PDCode::parse("")).rows() == 0);

    PDCode hopf = PDCode::parse(kHopfPositive);
    IntMatrix g = goeritz_matrix(hopf);
    CHECK(g.rows() == 1);
    CHECK(abs(g.at(0, 0)) == 2);
    CHECK(link_determinant(hopf) == 2);
    CHECK(branched_cover_group_pd(hopf).to_string() == "Z/2");

    PDCode tref = PDCode::parse(kTrefoilLeft);
    CHECK(link_determinant(tref) == 3);
    CHECK(branched_cover_group_pd(tref).to_string() == "Z/3");

    PDCode kink = PDCode::parse("X(1,2,2,1)");
    CHECK(link_determinant(kink) == 1);
    CHECK(murasugi_signature(kink) == 0);
    PDCode kink2 = kink.mirrored();
    CHECK(link_determinant(kink2) == 1);
    CHECK(murasugi_signature(kink2) == 0);

    PDCode fig8 = braid_closure_pd(3, {1, -2, 1, -2});
    CHECK(fig8.num_components() == 1);
    CHECK(link_determinant(fig8) == 5);
    CHECK(murasugi_signature(fig8) == 0);
}

TEST_CASE("Murasugi signatures match the classical values") {
    PDCode hopf = PDCode::parse(kHopfPositive);
    CHECK(murasugi_signature(hopf) == -1);
    CHECK(murasugi_signature(hopf.mirrored()) == 1);

    PDCode tref_left = PDCode::parse(kTrefoilLeft);
    CHECK(murasugi_signature(tref_left) == 2);
    CHECK(murasugi_signature(tref_left.mirrored()) == -2);

    // positive (2,4)-torus link with parallel orientations
    PDCode t24 = braid_closure_pd(2, {1, 1, 1, 1});
    CHECK(t24.num_components() == 2);
    CHECK(linking_matrix(t24).at(0, 1) == 2);
    CHECK(link_determinant(t24) == 4);
    CHECK(murasugi_signature(t24) == -3);

    PDCode tref_right = braid_closure_pd(2, {1, 1, 1});
    CHECK(link_determinant(tref_right) == 3);
    CHECK(murasugi_signature(tref_right) == -2);
}

TEST_CASE("Borromean rings from the braid closure") {
    PDCode borr = braid_closure_pd(3, {1, -2, 1, -2, 1, -2});
    CHECK(borr.num_components() == 3);
    CHECK(linking_matrix(borr).is_zero());
    CHECK(link_determinant(borr) == 16);
    AbelianGroupClass g = branched_cover_group_pd(borr);
    CHECK(g.to_string() == "Z/4 + Z/4");
    CHECK(murasugi_signature(borr) == 0);
}

TEST_CASE("Goeritz determinant is independent of colour and deleted region") {
    std::vector<PDCode> samples = {
        PDCode::parse(kHopfPositive),
        PDCode::parse(kTrefoilLeft),
        braid_closure_pd(3, {1, -2, 1, -2}),
        braid_closure_pd(3, {1, -2, 1, -2, 1, -2}),
        braid_closure_pd(2, {1, 1, 1, 1}),
        braid_closure_pd(3, {1, 1, 2, 2}),
    };
    for (const auto& pd : samples) {
        mpz_class d = link_determinant(pd);
        long sig = murasugi_signature(pd);
        for (bool flip : {false, true}) {
            IntMatrix g = detail::goeritz_matrix_opts(pd, flip, -1);
            CHECK(abs(g.det()) == d);
            CHECK(detail::murasugi_signature_opts(pd, flip) == sig);
            // any deleted region gives the same determinant
            for (long r = 0; r <= g.rows(); ++r) {
                IntMatrix gr = detail::goeritz_matrix_opts(pd, flip, r);
                CHECK(abs(gr.det()) == d);
            }
        }
    }
}

TEST_CASE("split diagrams direct-sum") {
    PDCode split = PDCode::parse("X(1,2,2,1);X(3,4,4,3)");
    CHECK(link_determinant(split) == 0);
    AbelianGroupClass g = branched_cover_group_pd(split);
    CHECK(g.free_rank == 1);
    CHECK(g.invariant_factors.empty());
    CHECK(murasugi_signature(split) == 0);

    // trefoil next to a kinked unknot
    PDCode split2 = PDCode::parse("X(1,4,2,5);X(3,6,4,1);X(5,2,6,3);X(7,8,8,7)");
    CHECK(split2.num_split_pieces() == 2);
    CHECK(link_determinant(split2) == 0);
    AbelianGroupClass g2 = branched_cover_group_pd(split2);
    CHECK(g2.free_rank == 1);
    CHECK(g2.invariant_factors == std::vector<mpz_class>{3});
    CHECK(murasugi_signature(split2) == 2);
}

TEST_CASE("connected sums multiply determinants and add signatures") {
    PDCode tref = PDCode::parse(kTrefoilLeft);
    PDCode fig8 = braid_closure_pd(3, {1, -2, 1, -2});
    PDCode sum = dslice_test::pd_connected_sum(tref, 1, fig8, 1);
    CHECK(sum.num_components() == 1);
    CHECK(link_determinant(sum) == 15);
    CHECK(murasugi_signature(sum) == 2);
}
