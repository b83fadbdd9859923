#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dslice/algebra.hpp"
#include "dslice/constructions.hpp"
#include "dslice/diagram.hpp"
#include "dslice/invariants.hpp"
#include "dslice/laurent.hpp"

namespace dslice {

// One mu-coloured link with whatever data the catalog supplies for it.
struct LinkRecord {
    std::string name;
    long components = 1;
    int mu = 1;
    std::vector<int> colouring;  // per component, values 1..mu
    std::optional<PDCode> pd;
    std::optional<IntMatrix> seifert;             // one-variable Seifert matrix
    std::optional<GeneralizedSeifertCollection> gsm;
    std::optional<IntMatrix> linking;
    std::string orientation_tag;
    std::map<std::string, std::string> provenance;

    void validate() const;
    // linking matrix from the record or computed from the PD code
    std::optional<IntMatrix> effective_linking() const;
    // C-complex matrix and beta0 from gsm, or from the Seifert matrix (mu=1)
    std::optional<std::pair<LaurentMatrix, long>> cmatrix() const;
};

enum class CriterionStatus { obstructed, passed, inconclusive, skipped };

std::string to_string(CriterionStatus s);

struct CriterionResult {
    std::string id;          // S, N, A, D, F, L, L'
    CriterionStatus status = CriterionStatus::skipped;
    std::string witness;
};

struct ObstructionReport {
    std::string name;
    int mu = 1;
    long grid = 0;
    std::vector<CriterionResult> criteria;
    bool obstructed = false;
    std::string verdict;  // "obstructed" or "no abelian obstruction"
    long genus_lower_bound = 0;
    bool genus_bound_available = false;
    std::vector<std::string> notes;

    std::string to_table() const;
};

inline constexpr long kDefaultGridOrder = 24;

// Runs every abelian criterion whose input data exists; criteria with missing
// data report `skipped`, uncertified numerics report `inconclusive`.
ObstructionReport run_obstructions(const LinkRecord& r, long grid_q = kDefaultGridOrder);

// Max certified |sigma| over the q^mu grid (half-turn points always
// included). Throws std::invalid_argument without matrix data.
long genus_lower_bound(const LinkRecord& r, long grid_q = kDefaultGridOrder);

// Cross-section linking test: n = 2 components must not link; for n = 3 some
// ordering must satisfy lk(L1,L2) = -lk(L1,L3) = lk(L2,L3).
bool linking_criterion(const IntMatrix& lk);

// The grid of torus points used by the sweeps, in deterministic order.
std::vector<TorusPoint> signature_grid(int mu, long q);

}  // namespace dslice
