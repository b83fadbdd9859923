#include <doctest.h>

#include "dslice/catalog.hpp"
#include "dslice/obstruct.hpp"

using namespace dslice;

namespace {

const CatalogFile& catalog() {
    static CatalogFile cat = load_catalog(std::string(DSLICE_DATA_DIR) + "/catalog.ndjson");
    return cat;
}

const LinkRecord& rec(const std::string& name) {
    const LinkRecord* r = catalog().find(name);
    REQUIRE(r != nullptr);
    return *r;
}

const CriterionResult& crit(const ObstructionReport& rep, const std::string& id) {
    for (const auto& c : rep.criteria)
        if (c.id == id) return c;
    REQUIRE(false);
    static CriterionResult dummy;
    return dummy;
}

IntMatrix lk3(long a, long b, long c) {
    IntMatrix m(3, 3);
    m.at(0, 1) = m.at(1, 0) = a;
    m.at(0, 2) = m.at(2, 0) = b;
    m.at(1, 2) = m.at(2, 1) = c;
    return m;
}

}  // namespace

TEST_CASE("linking criterion") {
    CHECK_FALSE(linking_criterion(lk3(-1, 1, 0)));
    CHECK_FALSE(linking_criterion(lk3(1, -1, 2)));
    CHECK(linking_criterion(lk3(0, 0, 0)));
    CHECK(linking_criterion(lk3(1, -1, 1)));
    CHECK(linking_criterion(lk3(-5, 5, -5)));
    CHECK(linking_criterion(lk3(2, 2, -2)));   // distinguished pair may sit anywhere
    CHECK_FALSE(linking_criterion(lk3(1, 1, 1)));

    IntMatrix two(2, 2);
    CHECK(linking_criterion(two));
    two.at(0, 1) = two.at(1, 0) = 3;
    CHECK_FALSE(linking_criterion(two));

    CHECK_THROWS_AS(linking_criterion(IntMatrix(4, 4)), std::invalid_argument);
}

TEST_CASE("signature grid contains the paper's sample points") {
    auto grid = signature_grid(1, 24);
    bool has_sixth = false, has_twelfth = false, has_half = false;
    for (const auto& w : grid) {
        if (w.angles[0].p == 1 && w.angles[0].q == 6) has_sixth = true;
        if (w.angles[0].p == 1 && w.angles[0].q == 12) has_twelfth = true;
        if (w.angles[0].p == 1 && w.angles[0].q == 2) has_half = true;
    }
    CHECK(has_sixth);
    CHECK(has_twelfth);
    CHECK(has_half);
    // half-turn points are present even for odd grid orders
    auto odd = signature_grid(2, 3);
    bool found = false;
    for (const auto& w : odd)
        if (w.all_half_turns() && !w.has_unit_coordinate()) found = true;
    CHECK(found);
}

TEST_CASE("trefoil is obstructed with genus bound two") {
    ObstructionReport rep = run_obstructions(rec("3_1"));
    CHECK(rep.obstructed);
    CHECK(rep.verdict == "obstructed");
    CHECK(rep.genus_lower_bound == 2);
    CHECK(crit(rep, "S").status == CriterionStatus::obstructed);
    CHECK(crit(rep, "D").status == CriterionStatus::obstructed);
    CHECK(crit(rep, "F").status == CriterionStatus::obstructed);
    CHECK(genus_lower_bound(rec("3_1")) == 2);
}

TEST_CASE("the Borromean rings resist every abelian test") {
    ObstructionReport rep = run_obstructions(rec("L6a4{0,0}"));
    CHECK_FALSE(rep.obstructed);
    CHECK(rep.verdict == "no abelian obstruction");
    CHECK(crit(rep, "D").status == CriterionStatus::passed);
    CHECK(crit(rep, "L").status == CriterionStatus::passed);
    CHECK(crit(rep, "S").status == CriterionStatus::passed);
    bool disclaimer = false;
    for (const auto& n : rep.notes)
        if (n.find("not a double-sliceness certificate") != std::string::npos) disclaimer = true;
    CHECK(disclaimer);
}

TEST_CASE("L11n247 is obstructed by the double branched cover") {
    ObstructionReport rep = run_obstructions(rec("L11n247{0,0}"));
    CHECK(rep.obstructed);
    const CriterionResult& d = crit(rep, "D");
    CHECK(d.status == CriterionStatus::obstructed);
    CHECK(d.witness.find("Z/17") != std::string::npos);
}

TEST_CASE("L9a45 is obstructed by the double branched cover but passes linking") {
    ObstructionReport rep = run_obstructions(rec("L9a45{0,0}"));
    CHECK(rep.obstructed);
    CHECK(crit(rep, "D").status == CriterionStatus::obstructed);
    CHECK(crit(rep, "D").witness.find("Z/2 + Z/18") != std::string::npos);
    CHECK(crit(rep, "L").status == CriterionStatus::passed);
    CHECK(crit(rep, "S").status == CriterionStatus::passed);
}

TEST_CASE("linking table records are obstructed by (L)") {
    for (const char* name : {"L8a19{0,0}", "L8a19{1,1}", "L9a46{0,0}", "L9a46{1,1}"}) {
        ObstructionReport rep = run_obstructions(rec(name));
        CHECK(rep.obstructed);
        CHECK(crit(rep, "L").status == CriterionStatus::obstructed);
        // the published selection profile: vanishing Murasugi signature
        CHECK(crit(rep, "S").status == CriterionStatus::passed);
    }
    for (const char* name : {"L8n3{1,0}", "L8n3{0,1}", "L9a48{1,0}", "L9a48{0,1}"}) {
        ObstructionReport rep = run_obstructions(rec(name));
        CHECK(rep.obstructed);
        CHECK(crit(rep, "L").status == CriterionStatus::obstructed);
    }
}

TEST_CASE("the weak unlink colouring passes and the strong Hopf colouring fails") {
    ObstructionReport u2 = run_obstructions(rec("U2"));
    CHECK_FALSE(u2.obstructed);

    ObstructionReport u2s = run_obstructions(rec("U2:strong"));
    CHECK_FALSE(u2s.obstructed);
    CHECK(crit(u2s, "L'").status == CriterionStatus::passed);
    CHECK(crit(u2s, "N").status == CriterionStatus::passed);

    ObstructionReport hopf = run_obstructions(rec("L2a1"));
    CHECK(hopf.obstructed);
    CHECK(crit(hopf, "L").status == CriterionStatus::obstructed);

    ObstructionReport hopf2 = run_obstructions(rec("L2a1:strong"));
    CHECK(hopf2.obstructed);
    CHECK(crit(hopf2, "L'").status == CriterionStatus::obstructed);
    // the Alexander nullity bound also fires: beta = 0 < mu - 1 = 1
    CHECK(crit(hopf2, "A").status == CriterionStatus::obstructed);
}

TEST_CASE("known-open fixtures report no abelian obstruction") {
    for (const char* name : {"L9a53{0,0}", "L9n21{0,0}", "L9n21{1,0}", "L9n21{1,1}",
                             "L9n25{0,0}"}) {
        ObstructionReport rep = run_obstructions(rec(name));
        CHECK_FALSE(rep.obstructed);
        for (const auto& c : rep.criteria) CHECK(c.status == CriterionStatus::skipped);
    }
}

TEST_CASE("obstruction is monotone when data is added") {
    LinkRecord seifert_only = rec("3_1");
    seifert_only.pd.reset();
    seifert_only.linking.reset();
    ObstructionReport partial = run_obstructions(seifert_only);
    CHECK(partial.obstructed);

    LinkRecord pd_only = rec("3_1");
    pd_only.seifert.reset();
    ObstructionReport pd_rep = run_obstructions(pd_only);
    CHECK(pd_rep.obstructed);
    CHECK(crit(pd_rep, "S").status == CriterionStatus::obstructed);  // Goeritz path

    ObstructionReport full = run_obstructions(rec("3_1"));
    CHECK(full.obstructed);
}

TEST_CASE("genus bound is monotone under grid refinement") {
    for (const char* name : {"3_1", "8_20", "L6n1{0,0}"}) {
        long coarse = genus_lower_bound(rec(name), 12);
        long fine = genus_lower_bound(rec(name), 24);
        CHECK(fine >= coarse);
    }
    CHECK(genus_lower_bound(rec("unknot")) == 0);
    CHECK(genus_lower_bound(rec("L6n1{0,0}")) == 0);
    CHECK(genus_lower_bound(rec("8_20"), 24) == 1);

    LinkRecord no_data = rec("L6a4{0,0}");
    CHECK_THROWS_AS(genus_lower_bound(no_data), std::invalid_argument);
}

TEST_CASE("at q = 2 the genus bound is the Murasugi-path value") {
    for (const char* name : {"3_1", "4_1", "6_1", "L6n1{0,0}"}) {
        const LinkRecord& r = rec(name);
        long bound = genus_lower_bound(r, 2);
        long mur = std::abs(lt_signature(*r.seifert, {1, 2}).value);
        CHECK(bound == mur);
    }
}

TEST_CASE("nullity agrees between the two Hopf colourings at shared points") {
    const LinkRecord& weak = rec("L2a1");
    const LinkRecord& strong = rec("L2a1:strong");
    auto weak_cm = weak.cmatrix();
    auto strong_cm = strong.cmatrix();
    REQUIRE(weak_cm);
    REQUIRE(strong_cm);
    for (long j : {1L, 5L, 12L, 19L}) {
        SigValue one_var = nullity_at(weak_cm->first, weak_cm->second,
                                      TorusPoint(std::vector<TorusPoint::Angle>{{j, 24}}));
        SigValue diag = nullity_at(strong_cm->first, strong_cm->second,
                                   TorusPoint(std::vector<TorusPoint::Angle>{{j, 24}, {j, 24}}));
        if (one_var.certified && diag.certified) CHECK(one_var.value == diag.value);
    }
    // and for the unlink records
    const LinkRecord& u = rec("U2");
    const LinkRecord& us = rec("U2:strong");
    auto ucm = u.cmatrix();
    auto uscm = us.cmatrix();
    REQUIRE(ucm);
    REQUIRE(uscm);
    SigValue a = nullity_at(ucm->first, ucm->second, TorusPoint::all_minus_one(1));
    SigValue b = nullity_at(uscm->first, uscm->second, TorusPoint::all_minus_one(2));
    CHECK(a.value == 1);
    CHECK(b.value == 1);
}

TEST_CASE("report table rendering") {
    ObstructionReport rep = run_obstructions(rec("3_1"));
    std::string table = rep.to_table();
    CHECK(table.find("3_1") != std::string::npos);
    CHECK(table.find("verdict: obstructed") != std::string::npos);
    CHECK(table.find("[S]") != std::string::npos);
}
