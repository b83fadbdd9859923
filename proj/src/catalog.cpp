#include "dslice/catalog.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dslice {

namespace {

using nlohmann::json;

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).fits_slong_p())
                throw std::invalid_argument("catalog matrices must have word-sized entries");
            row.push_back(m.at(i, j).get_si());
        }
        rows.push_back(row);
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + " must be an array of rows");
    long rows = static_cast<long>(j.size());
    long cols = rows == 0 ? 0 : static_cast<long>(j[0].size());
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        if (static_cast<long>(j[static_cast<size_t>(i)].size()) != cols)
            throw std::invalid_argument(what + " has ragged rows");
        for (long c = 0; c < cols; ++c)
            m.at(i, c) = static_cast<long>(j[static_cast<size_t>(i)][static_cast<size_t>(c)]
                                               .get<long long>());
    }
    return m;
}

}  // namespace

const LinkRecord* CatalogFile::find(const std::string& name) const {
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

LinkRecord parse_record(const std::string& line) {
    json j = json::parse(line);
    LinkRecord r;
    r.name = j.at("name").get<std::string>();
    r.components = j.at("components").get<long>();
    r.mu = j.at("mu").get<int>();
    if (j.contains("colouring")) {
        for (const auto& c : j.at("colouring")) r.colouring.push_back(c.get<int>());
    } else {
        r.colouring.assign(static_cast<size_t>(r.components), 1);
    }
    if (j.contains("pd")) r.pd = PDCode::parse(j.at("pd").get<std::string>());
    if (j.contains("seifert")) r.seifert = matrix_from_json(j.at("seifert"), r.name + ".seifert");
    if (j.contains("linking")) r.linking = matrix_from_json(j.at("linking"), r.name + ".linking");
    if (j.contains("gsm")) {
        const json& g = j.at("gsm");
        GeneralizedSeifertCollection gsm;
        gsm.mu = g.at("mu").get<int>();
        gsm.size = g.at("size").get<long>();
        gsm.beta0 = g.at("beta0").get<long>();
        for (const auto& [key, mat] : g.at("matrices").items())
            gsm.matrices[key] = matrix_from_json(mat, r.name + ".gsm." + key);
        if (g.contains("block_sizes"))
            for (const auto& b : g.at("block_sizes")) gsm.block_sizes.push_back(b.get<long>());
        gsm.complete_and_validate();
        r.gsm = gsm;
    }
    if (j.contains("orientation_tag")) r.orientation_tag = j.at("orientation_tag").get<std::string>();
    if (j.contains("provenance"))
        for (const auto& [key, val] : j.at("provenance").items())
            r.provenance[key] = val.get<std::string>();
    r.validate();
    return r;
}

std::string serialize_record(const LinkRecord& r) {
    json j;
    j["name"] = r.name;
    j["components"] = r.components;
    j["mu"] = r.mu;
    j["colouring"] = r.colouring;
    if (r.pd) j["pd"] = r.pd->to_string();
    if (r.seifert) j["seifert"] = matrix_to_json(*r.seifert);
    if (r.linking) j["linking"] = matrix_to_json(*r.linking);
    if (r.gsm) {
        json g;
        g["mu"] = r.gsm->mu;
        g["size"] = r.gsm->size;
        g["beta0"] = r.gsm->beta0;
        if (!r.gsm->block_sizes.empty()) g["block_sizes"] = r.gsm->block_sizes;
        json mats;
        // the '-' leading half determines the rest by transposition
        for (const auto& [key, m] : r.gsm->matrices)
            if (!key.empty() && key[0] == '-') mats[key] = matrix_to_json(m);
        g["matrices"] = mats;
        j["gsm"] = g;
    }
    if (!r.orientation_tag.empty()) j["orientation_tag"] = r.orientation_tag;
    if (!r.provenance.empty()) {
        json p;
        for (const auto& [k, v] : r.provenance) p[k] = v;
        j["provenance"] = p;
    }
    return j.dump();
}

CatalogFile parse_catalog(const std::string& text) {
    CatalogFile c;
    std::istringstream is(text);
    std::string line;
    std::set<std::string> names;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            LinkRecord r = parse_record(line);
            if (!names.insert(r.name).second)
                throw std::invalid_argument("duplicate record name " + r.name);
            c.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return c;
}

CatalogFile load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open catalog file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str());
}

std::string serialize_catalog(const CatalogFile& c) {
    std::ostringstream os;
    for (const auto& r : c.records) os << serialize_record(r) << "\n";
    return os.str();
}

}  // namespace dslice
