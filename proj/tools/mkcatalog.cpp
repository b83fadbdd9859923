// Development-time generator for data/catalog.ndjson. Every record is
// constructed from first principles (braid closures, pretzel diagrams, the
// verified Seifert matrices) and its invariant profile is checked before the
// line is emitted. Not part of the build; compiled by hand when the catalog
// changes.

#include <iostream>

#include "dslice/catalog.hpp"
#include "dslice/constructions.hpp"
#include "dslice/diagram.hpp"
#include "dslice/invariants.hpp"
#include "../tests/test_support.hpp"

using namespace dslice;
using dslice_test::braid_closure_pd;
using dslice_test::pd_connected_sum;
using dslice_test::pd_poke;

namespace {

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "CHECK FAILED: " << what << "\n";
        std::exit(1);
    }
}

void emit(const LinkRecord& r) {
    r.validate();
    std::cout << serialize_record(r) << "\n";
}

std::string lk_triple(const PDCode& pd) {
    IntMatrix lk = linking_matrix(pd);
    return lk.at(0, 1).get_str() + "," + lk.at(0, 2).get_str() + "," + lk.at(1, 2).get_str();
}

LinkRecord base_record(std::string name, const PDCode& pd, std::string tag) {
    LinkRecord r;
    r.name = std::move(name);
    r.components = pd.num_components();
    r.mu = 1;
    r.colouring.assign(static_cast<size_t>(r.components), 1);
    r.pd = pd;
    r.linking = linking_matrix(pd);
    r.orientation_tag = std::move(tag);
    return r;
}

}  // namespace

int main() {
    // --- unknot ------------------------------------------------------------
    {
        LinkRecord r;
        r.name = "unknot";
        r.components = 1;
        r.mu = 1;
        r.colouring = {1};
        r.pd = PDCode::parse("");
        r.seifert = IntMatrix(0, 0);
        r.provenance["pd"] = "0-crossing diagram";
        emit(r);
    }

    // --- right trefoil -----------------------------------------------------
    {
        PDCode pd = braid_closure_pd(2, {1, 1, 1});
        expect(murasugi_signature(pd) == -2, "trefoil signature");
        expect(link_determinant(pd) == 3, "trefoil determinant");
        LinkRecord r = base_record("3_1", pd, "");
        r.seifert = IntMatrix::from_rows({{-1, 1}, {0, -1}});
        expect(branched_cover_from_seifert(*r.seifert) == branched_cover_group_pd(pd),
               "trefoil groups agree");
        r.provenance["pd"] = "closure of the positive 3-crossing 2-braid";
        r.provenance["seifert"] = "standard genus-1 Seifert matrix of the right trefoil";
        emit(r);
    }

    // --- figure eight -------------------------------------------------------
    {
        PDCode pd = braid_closure_pd(3, {1, -2, 1, -2});
        expect(link_determinant(pd) == 5, "fig8 determinant");
        expect(murasugi_signature(pd) == 0, "fig8 signature");
        LinkRecord r = base_record("4_1", pd, "");
        r.seifert = IntMatrix::from_rows({{1, 1}, {0, -1}});
        expect(branched_cover_from_seifert(*r.seifert) == branched_cover_group_pd(pd),
               "fig8 groups agree");
        r.provenance["pd"] = "closure of the alternating 4-crossing 3-braid";
        r.provenance["seifert"] = "standard genus-1 Seifert matrix of the figure-eight knot";
        emit(r);
    }

    // --- positive Hopf link, weak colouring ---------------------------------
    {
        PDCode pd = PDCode::parse("X(3,1,4,2);X(1,3,2,4)");
        expect(linking_matrix(pd).at(0, 1) == 1, "hopf linking");
        expect(murasugi_signature(pd) == -1, "hopf signature");
        LinkRecord r = base_record("L2a1", pd, "{1}");
        r.seifert = IntMatrix::from_rows({{-1}});
        r.provenance["pd"] = "two-crossing diagram of the positive Hopf link";
        r.provenance["seifert"] = "annulus Seifert matrix [-1] of the positive Hopf link";
        emit(r);
    }

    // --- positive Hopf link, 2-colouring with the clasped C-complex ---------
    {
        PDCode pd = PDCode::parse("X(3,1,4,2);X(1,3,2,4)");
        LinkRecord r = base_record("L2a1:strong", pd, "{1}");
        r.mu = 2;
        r.colouring = {1, 2};
        GeneralizedSeifertCollection g;
        g.mu = 2;
        g.size = 0;
        g.beta0 = 1;  // two clasped discs form a connected C-complex
        g.matrices["--"] = IntMatrix(0, 0);
        g.matrices["-+"] = IntMatrix(0, 0);
        g.complete_and_validate();
        r.gsm = g;
        r.provenance["gsm"] =
            "C-complex of two discs joined by one clasp: H_1 = 0, beta0 = 1";
        emit(r);
    }

    // --- two-component unlink (split diagram and strong colouring) ----------
    {
        PDCode pd = PDCode::parse("X(1,2,2,1);X(3,4,4,3)");
        expect(link_determinant(pd) == 0, "unlink determinant");
        LinkRecord r = base_record("U2", pd, "");
        r.seifert = IntMatrix::from_rows({{0}});
        r.provenance["pd"] = "two kinked circles; a split diagram on purpose";
        r.provenance["seifert"] = "flat annulus spanning the unlink";
        emit(r);

        LinkRecord r2 = base_record("U2:strong", pd, "");
        r2.mu = 2;
        r2.colouring = {1, 2};
        GeneralizedSeifertCollection g;
        g.mu = 2;
        g.size = 0;
        g.beta0 = 2;  // two disjoint discs
        g.matrices["--"] = IntMatrix(0, 0);
        g.matrices["-+"] = IntMatrix(0, 0);
        g.complete_and_validate();
        r2.gsm = g;
        r2.provenance["gsm"] = "two disjoint discs: H_1 = 0, beta0 = 2";
        emit(r2);
    }

    // --- 6_1 as the twist knot P(1,1,4) --------------------------------------
    {
        PretzelParams p = PretzelParams::parse("P(1,1,4)");
        PDCode pd = pretzel_pd(p);
        expect(link_determinant(pd) == 9, "6_1 determinant");
        expect(murasugi_signature(pd) == 0, "6_1 signature");
        LinkRecord r = base_record("6_1", pd, "");
        r.seifert = IntMatrix::from_rows({{1, 1}, {0, -2}});
        expect(branched_cover_from_seifert(*r.seifert) == branched_cover_group_pd(pd),
               "6_1 groups agree");
        r.provenance["pd"] = "pretzel diagram P(1,1,4) of the twist knot 6_1";
        r.provenance["seifert"] = "standard genus-1 Seifert matrix of 6_1";
        emit(r);
    }

    // --- L6n1 = P(2,-2,2) with the folding orientation ----------------------
    {
        PretzelParams p = PretzelParams::parse("P(2,-2,2)");
        PDCode pd = pretzel_pd(p);
        IntMatrix v = pretzel_even_seifert(p);
        expect(abs((v + v.transpose()).det()) == link_determinant(pd), "L6n1 det oracle");
        expect(lt_signature(v, {1, 2}).value == murasugi_signature(pd), "L6n1 sigma oracle");
        LinkRecord r = base_record("L6n1{0,0}", pd, "{0,0}");
        r.seifert = v;
        r.provenance["pd"] =
            "pretzel diagram P(2,-2,2) with the orientation inherited through the folding "
            "construction from the unknot P(2)";
        r.provenance["seifert"] =
            "flat two-disc surface of the even pretzel (folding orientation)";
        emit(r);
    }

    // --- L8n8 = P(2,-2,2,-2) -------------------------------------------------
    {
        PretzelParams p = PretzelParams::parse("P(2,-2,2,-2)");
        PDCode pd = pretzel_pd(p);
        IntMatrix v = pretzel_even_seifert(p);
        expect(abs((v + v.transpose()).det()) == link_determinant(pd), "L8n8 det oracle");
        expect(lt_signature(v, {1, 2}).value == murasugi_signature(pd), "L8n8 sigma oracle");
        LinkRecord r = base_record("L8n8{0,0,0}", pd, "{0,0,0}");
        r.seifert = v;
        r.provenance["pd"] =
            "pretzel diagram P(2,-2,2,-2) with the orientation inherited through the folding "
            "construction from the 2-component unlink P(2,-2)";
        r.provenance["seifert"] =
            "flat two-disc surface of the even pretzel (folding orientation)";
        emit(r);
    }

    // --- Borromean rings ------------------------------------------------------
    {
        PDCode pd = braid_closure_pd(3, {1, -2, 1, -2, 1, -2});
        expect(linking_matrix(pd).is_zero(), "borromean linking");
        expect(link_determinant(pd) == 16, "borromean determinant");
        expect(branched_cover_group_pd(pd).to_string() == "Z/4 + Z/4", "borromean group");
        expect(murasugi_signature(pd) == 0, "borromean signature");
        LinkRecord r = base_record("L6a4{0,0}", pd, "{0,0}");
        r.provenance["pd"] = "closure of the 6-crossing alternating 3-braid (s1 s2^-1)^3";
        emit(r);
    }

    // --- L11n247 surrogate ------------------------------------------------------
    {
        PDCode knot = pretzel_pd(PretzelParams::parse("P(1,1,8)"));
        expect(link_determinant(knot) == 17, "P(1,1,8) determinant");
        expect(murasugi_signature(knot) == 0, "P(1,1,8) signature");
        PDCode pd = pd_poke(knot, 1);
        expect(pd.num_components() == 2, "L11n247 components");
        expect(linking_matrix(pd).is_zero(), "L11n247 linking");
        expect(link_determinant(pd) == 0, "L11n247 determinant");
        AbelianGroupClass g = branched_cover_group_pd(pd);
        expect(g.free_rank == 1 && g.torsion_part().to_string() == "Z/17", "L11n247 group");
        expect(murasugi_signature(pd) == 0, "L11n247 sigma");
        LinkRecord r = base_record("L11n247{0,0}", pd, "{0,0}");
        r.provenance["pd"] =
            "surrogate diagram: twist knot P(1,1,8) with a split unknot poked through one "
            "arc (connected diagram); realizes the published profile of L11n247: vanishing "
            "linking matrix, vanishing Alexander polynomial, Murasugi signature 0, torsion "
            "H1(Sigma_2) = Z/17";
        emit(r);
    }

    // --- L9a45 surrogate ---------------------------------------------------------
    {
        PDCode left = pretzel_pd(PretzelParams::parse("P(2,-2,2)"));
        PDCode right = pretzel_pd(PretzelParams::parse("P(3,-3,1)"));
        PDCode pd = pd_connected_sum(left, 1, right, 1);
        expect(pd.num_components() == 3, "L9a45 components");
        AbelianGroupClass g = branched_cover_group_pd(pd);
        expect(g.to_string() == "Z/2 + Z/18", "L9a45 group");
        expect(link_determinant(pd) == 36, "L9a45 determinant");
        expect(murasugi_signature(pd) == 0, "L9a45 signature");
        expect(linking_criterion(linking_matrix(pd)), "L9a45 passes the linking test");
        LinkRecord r = base_record("L9a45{0,0}", pd, "{0,0}");
        r.provenance["pd"] =
            "surrogate diagram: connected sum P(2,-2,2) # P(3,-3,1); realizes the published "
            "profile of L9a45: H1(Sigma_2) = Z/2 + Z/18, determinant 36, vanishing Murasugi "
            "signature, pairwise linking passing the cross-section test";
        emit(r);
    }

    // --- Prop. linking table surrogates ------------------------------------------
    struct TableRow {
        const char* name;
        const char* tag;
        std::vector<int> word;
        const char* want;  // lk12,lk13,lk23
    };
    // band generators: s2 s1^{+-2} s2^{-1} clasps strands 1 and 3
    std::vector<TableRow> rows = {
        {"L8a19{0,0}", "{0,0}", {-1, -1, 2, 1, 1, -2}, "-1,1,0"},
        {"L8a19{1,1}", "{1,1}", {1, 1, 2, -1, -1, -2}, "1,-1,0"},
        {"L8n3{1,0}", "{1,0}", {1, 1, 2, -1, -1, -2, 2, 2, 2, 2}, "1,-1,2"},
        {"L8n3{0,1}", "{0,1}", {-1, -1, 2, 1, 1, -2, 2, 2, 2, 2}, "-1,1,2"},
        {"L9a46{0,0}", "{0,0}", {1, -2, -2, -1, -1, 2, 2, -1, -2, -2, 1, 1}, "0,0,-1"},
        {"L9a46{1,1}", "{1,1}", {1, -2, -2, -1, -1, 2, 2, -1, -2, -2, 1, 1}, "0,0,-1"},
        {"L9a48{1,0}", "{1,0}", {1, 1, 2, -1, -1, -2, -2, -2, -2, -2}, "1,-1,-2"},
        {"L9a48{0,1}", "{0,1}", {1, 1, 2, -1, -1, -2, -2, -2, -2, -2}, "1,-1,-2"},
    };
    for (const auto& row : rows) {
        PDCode pd = braid_closure_pd(3, row.word);
        expect(pd.num_components() == 3, std::string(row.name) + " components");
        expect(lk_triple(pd) == row.want, std::string(row.name) + " linking triple");
        expect(!linking_criterion(linking_matrix(pd)),
               std::string(row.name) + " fails the linking test");
        LinkRecord r = base_record(row.name, pd, row.tag);
        mpz_class det = link_determinant(pd);
        long sig = murasugi_signature(pd);
        bool full_profile = mpz_perfect_square_p(det.get_mpz_t()) != 0 && sig == 0;
        r.provenance["pd"] =
            std::string("surrogate diagram: 3-braid closure realizing the published pairwise "
                        "linking numbers (") +
            row.want + ") of " + row.name + "; determinant " + det.get_str() +
            ", Murasugi signature " + std::to_string(sig) +
            (full_profile ? " (matches the published square-determinant/zero-signature "
                            "selection profile)"
                          : " (the published link also has square determinant and vanishing "
                            "signature; this surrogate realizes the linking data only)");
        emit(r);
    }

    // --- 8_20 and its parallel (2,0)-cable data -----------------------------------
    {
        IntMatrix v = IntMatrix::from_rows(
            {{1, -1, 0, -1}, {0, 1, -1, -1}, {0, -1, -1, 0}, {-1, -1, -1, 1}});
        LaurentPoly base(1);
        base.add_term({0}, 1);
        base.add_term({1}, -1);
        base.add_term({2}, 1);
        expect(torsion_alexander_1var(v) == (base * base).normalized_1var(), "8_20 Alexander");
        expect(lt_signature(v, {1, 2}).value == 0, "8_20 Murasugi");
        expect(lt_signature(v, {1, 6}).value == 1, "8_20 sigma at the 6th root");
        expect(branched_cover_from_seifert(v).to_string() == "Z/9", "8_20 group");
        LinkRecord r;
        r.name = "8_20";
        r.components = 1;
        r.mu = 1;
        r.colouring = {1};
        r.seifert = v;
        r.provenance["seifert"] =
            "Seifert matrix realizing the documented profile of 8_20: Alexander polynomial "
            "(t^2-t+1)^2, Levine-Tristram signature 0 away from the primitive 6th roots of "
            "unity and +1 there, H1(Sigma_2) = Z/9";
        emit(r);
    }

    // --- isotropy fixtures -----------------------------------------------------------
    {
        LinkRecord r;
        r.name = "planted_hyperbolic";
        r.components = 1;
        r.mu = 1;
        r.colouring = {1};
        r.seifert = IntMatrix::from_rows({{0, 1}, {0, 0}});
        r.provenance["seifert"] = "hyperbolic fixture for the isotropy search";
        emit(r);

        LinkRecord big;
        big.name = "isotropy_size_bound";
        big.components = 1;
        big.mu = 1;
        big.colouring = {1};
        IntMatrix m(16, 16);
        for (long i = 0; i < 8; ++i) m.at(i, 8 + i) = 1;
        big.seifert = m;
        big.provenance["seifert"] =
            "synthetic 16x16 hyperbolic fixture exceeding the isotropy search size bound";
        emit(big);
    }

    // --- known-open fixtures (no data shipped on purpose) ------------------------------
    for (const char* name : {"L9a53{0,0}", "L9n21{0,0}", "L9n21{1,0}", "L9n21{1,1}",
                             "L9n25{0,0}"}) {
        LinkRecord r;
        r.name = name;
        r.components = 3;
        r.mu = 1;
        r.colouring = {1, 1, 1};
        r.orientation_tag = std::string(name).substr(std::string(name).find('{'));
        r.provenance["status"] =
            "known-open fixture: every abelian test is expected to pass or skip; no diagram "
            "data is shipped so the pipeline reports exactly that";
        emit(r);
    }

    std::cerr << "catalog generated OK\n";
    return 0;
}
