#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dslice/obstruct.hpp"

namespace dslice {

// Catalog of link records, stored as UTF-8 newline-delimited JSON: one
// record object per line, alphabetical keys, compact separators. That layout
// is the canonical form; serialising a canonical file reproduces it byte for
// byte.
struct CatalogFile {
    std::vector<LinkRecord> records;

    const LinkRecord* find(const std::string& name) const;
};

CatalogFile load_catalog(const std::string& path);
CatalogFile parse_catalog(const std::string& text);
std::string serialize_catalog(const CatalogFile& c);
std::string serialize_record(const LinkRecord& r);
LinkRecord parse_record(const std::string& line);

}  // namespace dslice
