#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

#include "dslice/catalog.hpp"
#include "dslice/constructions.hpp"
#include "dslice/diagram.hpp"
#include "dslice/invariants.hpp"
#include "dslice/isotropy.hpp"
#include "dslice/obstruct.hpp"
#include "dslice/util.hpp"

using nlohmann::json;
using namespace dslice;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitMissingData = 3;
constexpr int kExitResourceBound = 4;

struct missing_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<const LinkRecord*> select_records(const CatalogFile& cat, const std::string& name,
                                              int mu_filter) {
    std::vector<const LinkRecord*> out;
    for (const auto& r : cat.records) {
        if (!name.empty() && r.name != name) continue;
        if (mu_filter > 0 && r.mu != mu_filter) continue;
        out.push_back(&r);
    }
    if (!name.empty() && out.empty())
        throw std::invalid_argument("no record named '" + name + "' in the catalog");
    return out;
}

json signature_json(const SigValue& s) {
    return json{{"value", s.value}, {"certified", s.certified}};
}

// Rebuild coloured boundary blocks from a record: a Seifert matrix is the
// mu = 1 case; a gsm with block sizes works when its off-diagonal blocks do
// not depend on the signs.
ColouredBoundarySeifertMatrix boundary_blocks_of(const LinkRecord& r) {
    if (r.seifert && r.mu == 1) {
        ColouredBoundarySeifertMatrix b = ColouredBoundarySeifertMatrix::zero(1, {r.seifert->rows()});
        b.block(0, 0) = *r.seifert;
        b.validate();
        return b;
    }
    if (r.gsm && !r.gsm->block_sizes.empty()) {
        const auto& g = *r.gsm;
        if (static_cast<int>(g.block_sizes.size()) != g.mu)
            throw std::invalid_argument(r.name + ": gsm block sizes do not match mu");
        ColouredBoundarySeifertMatrix b =
            ColouredBoundarySeifertMatrix::zero(g.mu, g.block_sizes);
        std::vector<long> off(static_cast<size_t>(g.mu) + 1, 0);
        for (int i = 0; i < g.mu; ++i)
            off[static_cast<size_t>(i) + 1] =
                off[static_cast<size_t>(i)] + g.block_sizes[static_cast<size_t>(i)];
        const IntMatrix& all_minus = g.matrix(std::string(static_cast<size_t>(g.mu), '-'));
        for (int i = 0; i < g.mu; ++i)
            for (int j = 0; j < g.mu; ++j)
                for (long x = 0; x < g.block_sizes[static_cast<size_t>(i)]; ++x)
                    for (long y = 0; y < g.block_sizes[static_cast<size_t>(j)]; ++y)
                        b.block(i, j).at(x, y) =
                            all_minus.at(off[static_cast<size_t>(i)] + x,
                                         off[static_cast<size_t>(j)] + y);
        b.validate();
        // the reconstruction is only valid when boundary_to_gsm reproduces
        // the stored collection
        GeneralizedSeifertCollection back = boundary_to_gsm(b);
        GeneralizedSeifertCollection stored = g;
        stored.complete_and_validate();
        for (const auto& [key, m] : stored.matrices)
            if (!(back.matrix(key) == m))
                throw missing_data_error(
                    r.name + ": gsm is not of coloured-boundary form; cannot run isotropy");
        return b;
    }
    throw missing_data_error(r.name +
                             ": needs a Seifert matrix (mu = 1) or a gsm with block sizes");
}

int cmd_catalog_validate(const std::string& path) {
    CatalogFile cat = load_catalog(path);
    std::cout << "catalog OK: " << cat.records.size() << " records\n";
    return 0;
}

// CSV sweep of (omega, sigma, eta) over the grid, for external plotting.
int cmd_sweep_csv(const LinkRecord& r, long grid) {
    auto cm = r.cmatrix();
    if (!cm) throw missing_data_error(r.name + ": needs Seifert data for a sweep");
    std::cout << "omega,sigma,sigma_certified,eta,eta_certified\n";
    for (const auto& w : signature_grid(r.mu, grid)) {
        SigValue s = signature_at(cm->first, w);
        std::cout << w.to_string() << "," << s.value << "," << (s.certified ? 1 : 0);
        if (!w.has_unit_coordinate()) {
            SigValue eta = nullity_at(cm->first, cm->second, w);
            std::cout << "," << eta.value << "," << (eta.certified ? 1 : 0);
        } else {
            std::cout << ",,";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_invariants(const std::string& path, const std::string& name, const std::string& point,
                   long grid, bool as_json, bool sweep_csv) {
    CatalogFile cat = load_catalog(path);
    auto records = select_records(cat, name, 0);
    if (sweep_csv) {
        if (records.size() != 1)
            throw std::invalid_argument("--sweep-csv needs a single record (use --name)");
        return cmd_sweep_csv(*records.front(), grid);
    }
    std::optional<TorusPoint> w;
    if (!point.empty()) w = TorusPoint::from_string(point);

    for (const LinkRecord* rp : records) {
        const LinkRecord& r = *rp;
        auto cm = r.cmatrix();
        json out;
        out["schema_version"] = 1;
        out["type"] = "invariants";
        out["name"] = r.name;
        out["mu"] = r.mu;

        if (w) {
            if (!cm)
                throw missing_data_error(r.name + ": needs Seifert data to evaluate sigma/eta");
            if (w->num_vars() != r.mu)
                throw std::invalid_argument(r.name + ": point dimension differs from mu");
            out["point"] = w->to_string();
            out["sigma"] = signature_json(signature_at(cm->first, *w));
            if (!w->has_unit_coordinate())
                out["eta"] = signature_json(nullity_at(cm->first, cm->second, *w));
        }
        if (cm) {
            out["alexander_nullity"] = alexander_nullity(cm->first, cm->second);
            out["genus_lower_bound"] = genus_lower_bound(r, grid);
        }
        if (r.seifert) {
            LaurentPoly delta = torsion_alexander_1var(*r.seifert);
            out["torsion_alexander"] = delta.to_string() + " (up to units +-t^k)";
            out["branched_cover_group"] = branched_cover_from_seifert(*r.seifert).to_string();
        }
        if (r.pd) {
            out["determinant"] = link_determinant(*r.pd).get_str();
            out["branched_cover_group_pd"] = branched_cover_group_pd(*r.pd).to_string();
            out["murasugi_signature"] = murasugi_signature(*r.pd);
        }
        if (auto lk = r.effective_linking()) out["linking_matrix"] = lk->to_string();

        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << r.name << ":\n";
            for (const auto& [k, v] : out.items()) {
                if (k == "schema_version" || k == "type" || k == "name") continue;
                std::cout << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
                          << "\n";
            }
        }
    }
    return 0;
}

json report_to_json(const ObstructionReport& rep) {
    json out;
    out["schema_version"] = 1;
    out["type"] = "obstruction_report";
    out["name"] = rep.name;
    out["mu"] = rep.mu;
    out["grid"] = rep.grid;
    json crits = json::array();
    for (const auto& c : rep.criteria)
        crits.push_back(json{{"id", c.id}, {"status", to_string(c.status)}, {"witness", c.witness}});
    out["criteria"] = crits;
    out["verdict"] = rep.verdict;
    if (rep.genus_bound_available) out["genus_lower_bound"] = rep.genus_lower_bound;
    out["notes"] = rep.notes;
    return out;
}

int cmd_obstruct(const std::string& path, const std::string& name, int mu_filter, long grid,
                 bool as_json) {
    CatalogFile cat = load_catalog(path);
    auto records = select_records(cat, name, mu_filter);
    // batch records through the worker pool; output stays in input order
    auto reports = parallel_map(records, [&](const LinkRecord* r) {
        return run_obstructions(*r, grid);
    });
    for (const auto& rep : reports) {
        if (as_json)
            std::cout << report_to_json(rep).dump() << "\n";
        else
            std::cout << rep.to_table();
    }
    return 0;
}

int cmd_genus_bound(const std::string& path, const std::string& name, long grid) {
    CatalogFile cat = load_catalog(path);
    auto records = select_records(cat, name, 0);
    for (const LinkRecord* r : records) {
        if (!r->cmatrix())
            throw missing_data_error(r->name + ": needs Seifert or C-complex data");
        std::cout << r->name << ": doubly slice genus >= " << genus_lower_bound(*r, grid) << "\n";
    }
    return 0;
}

int cmd_isotropy(const std::string& path, const std::string& name, long bound) {
    CatalogFile cat = load_catalog(path);
    auto records = select_records(cat, name, 0);
    for (const LinkRecord* r : records) {
        ColouredBoundarySeifertMatrix b = boundary_blocks_of(*r);
        IsotropySearchResult res = search_doubly_isotropic(b, bound);
        std::cout << r->name << " (matrix searched: " << b.total_size() << "x" << b.total_size()
                  << " coloured boundary Seifert matrix from this record): ";
        switch (res.status) {
            case IsotropySearchResult::Status::found: {
                std::cout << "found\n";
                for (int i = 0; i < b.mu; ++i) {
                    std::cout << "  G" << (i + 1) << "- = "
                              << res.gminus.bases[static_cast<size_t>(i)].to_string() << "\n";
                    std::cout << "  G" << (i + 1) << "+ = "
                              << res.gplus.bases[static_cast<size_t>(i)].to_string() << "\n";
                }
                break;
            }
            case IsotropySearchResult::Status::none_within_bound:
                std::cout << "none within bound -- " << res.note << "\n";
                break;
            case IsotropySearchResult::Status::certified_none:
                std::cout << "certified none -- " << res.note << "\n";
                break;
        }
    }
    return 0;
}

int cmd_pretzel(const std::string& params, long fold_at, const std::string& emit,
                std::string record_name) {
    PretzelParams p = PretzelParams::parse(params);
    if (fold_at > 0) p = fold_pretzel(p, fold_at);
    PDCode pd = pretzel_pd(p);
    if (emit == "pd") {
        std::cout << pd.to_string() << "\n";
        return 0;
    }
    LinkRecord r;
    r.name = record_name.empty() ? p.to_string() : std::move(record_name);
    r.components = pd.num_components();
    r.mu = 1;
    r.colouring.assign(static_cast<size_t>(r.components), 1);
    r.pd = pd;
    r.linking = linking_matrix(pd);
    bool all_even = std::all_of(p.twists.begin(), p.twists.end(),
                                [](long a) { return a % 2 == 0; });
    if (all_even) r.seifert = pretzel_even_seifert(p);
    r.provenance["pd"] = "generated pretzel diagram " + p.to_string() +
                         (all_even ? " with the folding orientation" : "");
    if (all_even)
        r.provenance["seifert"] =
            "flat two-disc surface of the even pretzel; validated against the Goeritz "
            "determinant and the Murasugi signature of the diagram";
    if (!p.provenance.empty()) r.provenance["construction"] = p.provenance;
    std::cout << serialize_record(r) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact abelian invariants of coloured links and double-sliceness obstructions"};
    app.require_subcommand(1);

    std::string path, name, point, emit = "pd", record_name, params;
    long grid = kDefaultGridOrder;
    long bound = 2;
    long fold_at = 0;
    int mu_filter = 0;
    bool as_json = false;
    bool sweep_csv = false;

    auto* cat = app.add_subcommand("catalog", "catalog file utilities");
    cat->require_subcommand(1);
    auto* catval = cat->add_subcommand("validate", "parse and validate a catalog file");
    catval->add_option("path", path)->required();

    auto* inv = app.add_subcommand("invariants", "print abelian invariants of catalog records");
    inv->add_option("path", path)->required();
    inv->add_option("--name", name, "only this record");
    inv->add_option("--point", point, "torus point as fractions of a turn, e.g. 1/2 or 1/3,5/6");
    inv->add_option("--grid", grid, "grid order for the genus bound");
    inv->add_flag("--json", as_json, "line-delimited JSON output");
    inv->add_flag("--sweep-csv", sweep_csv, "emit a CSV of (omega, sigma, eta) over the grid");

    auto* obs = app.add_subcommand("obstruct", "run the double-sliceness obstruction pipeline");
    obs->add_option("path", path)->required();
    obs->add_option("--name", name, "only this record");
    obs->add_option("--mu", mu_filter, "only records with this colouring count");
    obs->add_option("--grid", grid, "signature grid order per axis");
    obs->add_flag("--json", as_json, "line-delimited JSON output");

    auto* gen = app.add_subcommand("genus-bound", "certified lower bound for the doubly slice genus");
    gen->add_option("path", path)->required();
    gen->add_option("--name", name)->required();
    gen->add_option("--grid", grid);

    auto* iso = app.add_subcommand("isotropy", "search for complementary isotropic families");
    iso->add_option("path", path)->required();
    iso->add_option("--name", name)->required();
    iso->add_option("--bound", bound, "coefficient bound for basis entries");

    auto* pre = app.add_subcommand("pretzel", "generate pretzel link data");
    pre->add_option("params", params, "e.g. \"P(2,-2,2)\"")->required();
    pre->add_option("--fold", fold_at, "apply the folding construction at this position first");
    pre->add_option("--emit", emit, "pd (default) or record");
    pre->add_option("--record-name", record_name, "name for --emit record");

    CLI11_PARSE(app, argc, argv);

    try {
        if (catval->parsed()) return cmd_catalog_validate(path);
        if (inv->parsed()) return cmd_invariants(path, name, point, grid, as_json, sweep_csv);
        if (obs->parsed()) return cmd_obstruct(path, name, mu_filter, grid, as_json);
        if (gen->parsed()) return cmd_genus_bound(path, name, grid);
        if (iso->parsed()) return cmd_isotropy(path, name, bound);
        if (pre->parsed()) return cmd_pretzel(params, fold_at, emit, record_name);
    } catch (const missing_data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingData;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceBound;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
