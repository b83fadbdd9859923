#include "dslice/obstruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dslice/util.hpp"

namespace dslice {

std::string to_string(CriterionStatus s) {
    switch (s) {
        case CriterionStatus::obstructed: return "obstructed";
        case CriterionStatus::passed: return "passed";
        case CriterionStatus::inconclusive: return "inconclusive";
        case CriterionStatus::skipped: return "skipped";
    }
    return "?";
}

void LinkRecord::validate() const {
    if (name.empty()) throw std::invalid_argument("record needs a name");
    if (components < 1) throw std::invalid_argument(name + ": component count must be >= 1");
    if (mu < 1 || mu > components)
        throw std::invalid_argument(name + ": mu must lie between 1 and the component count");
    if (static_cast<long>(colouring.size()) != components)
        throw std::invalid_argument(name + ": colouring must assign every component");
    std::set<int> used(colouring.begin(), colouring.end());
    for (int c = 1; c <= mu; ++c)
        if (!used.count(c))
            throw std::invalid_argument(name + ": colouring is not surjective onto 1..mu");
    for (int c : colouring)
        if (c < 1 || c > mu) throw std::invalid_argument(name + ": colour out of range");
    if (pd && pd->num_components() != components)
        throw std::invalid_argument(name + ": PD code has " +
                                    std::to_string(pd->num_components()) +
                                    " components, record claims " + std::to_string(components));
    if (seifert && seifert->rows() != seifert->cols())
        throw std::invalid_argument(name + ": Seifert matrix must be square");
    if (gsm) {
        GeneralizedSeifertCollection g = *gsm;
        g.complete_and_validate();
        if (g.mu != mu)
            throw std::invalid_argument(name + ": gsm colour count differs from record mu");
    }
    if (linking) {
        if (linking->rows() != components || linking->cols() != components)
            throw std::invalid_argument(name + ": linking matrix has wrong shape");
        if (!linking->is_symmetric())
            throw std::invalid_argument(name + ": linking matrix must be symmetric");
        for (long i = 0; i < components; ++i)
            if (linking->at(i, i) != 0)
                throw std::invalid_argument(name + ": linking matrix must have zero diagonal");
        if (pd && !(linking_matrix(*pd) == *linking))
            throw std::invalid_argument(name +
                                        ": stored linking matrix disagrees with the PD code");
    }
}

std::optional<IntMatrix> LinkRecord::effective_linking() const {
    if (linking) return linking;
    if (pd) return linking_matrix(*pd);
    if (components == 1) return IntMatrix(1, 1);  // knots never link themselves
    return std::nullopt;
}

std::optional<std::pair<LaurentMatrix, long>> LinkRecord::cmatrix() const {
    if (gsm) {
        GeneralizedSeifertCollection g = *gsm;
        g.complete_and_validate();
        return std::make_pair(assemble_cmatrix(g), g.beta0);
    }
    if (seifert && mu == 1) {
        auto g = GeneralizedSeifertCollection::from_seifert(*seifert);
        return std::make_pair(assemble_cmatrix(g), 1L);
    }
    return std::nullopt;
}

bool linking_criterion(const IntMatrix& lk) {
    if (lk.rows() == 2) return lk.at(0, 1) == 0;
    if (lk.rows() == 3) {
        const mpz_class v12 = lk.at(0, 1), v13 = lk.at(0, 2), v23 = lk.at(1, 2);
        // some ordering with pattern (a, -a, a): one distinguished pair
        // carries the negated value
        return (v12 == v23 && v13 == -v12) || (v12 == v13 && v23 == -v12) ||
               (v13 == v23 && v12 == -v13);
    }
    throw std::invalid_argument("linking criterion applies to 2 or 3 components");
}

std::vector<TorusPoint> signature_grid(int mu, long q) {
    if (q < 1) throw std::invalid_argument("grid order must be positive");
    std::vector<TorusPoint> pts;
    std::set<std::string> seen;
    std::vector<long> j(static_cast<size_t>(mu), 0);
    for (;;) {
        std::vector<TorusPoint::Angle> as;
        for (int i = 0; i < mu; ++i) as.push_back({j[static_cast<size_t>(i)], q});
        TorusPoint w(as);
        if (seen.insert(w.to_string()).second) pts.push_back(w);
        int pos = 0;
        while (pos < mu) {
            if (++j[static_cast<size_t>(pos)] < q) break;
            j[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == mu) break;
    }
    // half-turn points are always part of the sweep
    for (long bits = 0; bits < (1L << mu); ++bits) {
        std::vector<TorusPoint::Angle> as;
        for (int i = 0; i < mu; ++i)
            as.push_back((bits >> i) & 1 ? TorusPoint::Angle{1, 2} : TorusPoint::Angle{0, 1});
        TorusPoint w(as);
        if (seen.insert(w.to_string()).second) pts.push_back(w);
    }
    return pts;
}

namespace {

struct SweepOutcome {
    bool any_certified_nonzero = false;
    bool any_uncertified = false;
    long max_certified_abs = 0;
    std::string witness;
};

SweepOutcome sweep_signature(const LaurentMatrix& h, int mu, long q) {
    auto grid = signature_grid(mu, q);
    auto vals = parallel_map(grid, [&](const TorusPoint& w) { return signature_at(h, w); });
    SweepOutcome out;
    for (size_t i = 0; i < grid.size(); ++i) {
        const SigValue& s = vals[i];
        if (!s.certified) {
            out.any_uncertified = true;
            continue;
        }
        if (std::abs(s.value) > out.max_certified_abs) out.max_certified_abs = std::abs(s.value);
        if (s.value != 0 && !out.any_certified_nonzero) {
            out.any_certified_nonzero = true;
            out.witness = "sigma(" + grid[i].to_string() + ") = " + std::to_string(s.value);
        }
    }
    return out;
}

std::string group_witness(const AbelianGroupClass& g) { return "H1(Sigma_2) = " + g.to_string(); }

}  // namespace

ObstructionReport run_obstructions(const LinkRecord& r, long grid_q) {
    r.validate();
    ObstructionReport rep;
    rep.name = r.name;
    rep.mu = r.mu;
    rep.grid = grid_q;

    auto cm = r.cmatrix();
    auto lk = r.effective_linking();

    // (S) certified nonzero signature anywhere on the torus
    {
        CriterionResult c{"S", CriterionStatus::skipped, ""};
        if (cm) {
            SweepOutcome sw = sweep_signature(cm->first, r.mu, grid_q);
            rep.genus_lower_bound = sw.max_certified_abs;
            rep.genus_bound_available = true;
            if (sw.any_certified_nonzero) {
                c.status = CriterionStatus::obstructed;
                c.witness = sw.witness;
            } else if (sw.any_uncertified) {
                c.status = CriterionStatus::inconclusive;
                c.witness = "uncertified numeric signatures on the grid";
            } else {
                c.status = CriterionStatus::passed;
                c.witness = "sigma = 0 at all " + std::to_string(grid_q) + "^mu grid points";
            }
        } else if (r.pd) {
            long m = murasugi_signature(*r.pd);
            if (m != 0) {
                c.status = CriterionStatus::obstructed;
                c.witness = "Murasugi signature " + std::to_string(m) + " (Goeritz path)";
            } else {
                c.status = CriterionStatus::passed;
                c.witness = "Murasugi signature 0 (Goeritz path; no matrix data for other points)";
            }
        } else {
            c.witness = "no Seifert/C-complex/PD data";
        }
        rep.criteria.push_back(c);
    }

    // (N) nullity below mu-1 at a certified point
    {
        CriterionResult c{"N", CriterionStatus::skipped, ""};
        if (cm) {
            auto grid = signature_grid(r.mu, grid_q);
            bool uncertified = false;
            long min_eta = -1;
            std::string witness;
            for (const auto& w : grid) {
                if (w.has_unit_coordinate()) continue;
                SigValue eta = nullity_at(cm->first, cm->second, w);
                if (!eta.certified) {
                    uncertified = true;
                    continue;
                }
                if (min_eta < 0 || eta.value < min_eta) {
                    min_eta = eta.value;
                    witness = "eta(" + w.to_string() + ") = " + std::to_string(eta.value);
                }
                if (eta.value < r.mu - 1) break;
            }
            if (min_eta >= 0 && min_eta < r.mu - 1) {
                c.status = CriterionStatus::obstructed;
                c.witness = witness + " < mu - 1 = " + std::to_string(r.mu - 1);
            } else if (uncertified && min_eta < 0) {
                c.status = CriterionStatus::inconclusive;
                c.witness = "only uncertified nullities on the grid";
            } else {
                c.status = CriterionStatus::passed;
                c.witness = "min certified eta = " + std::to_string(min_eta) +
                            " >= " + std::to_string(r.mu - 1);
            }
        } else {
            c.witness = "no Seifert/C-complex data";
        }
        rep.criteria.push_back(c);
    }

    // (A) Alexander nullity bound
    {
        CriterionResult c{"A", CriterionStatus::skipped, ""};
        if (cm) {
            long beta = alexander_nullity(cm->first, cm->second);
            c.witness = "beta = " + std::to_string(beta);
            c.status = beta < r.mu - 1 ? CriterionStatus::obstructed : CriterionStatus::passed;
            if (c.status == CriterionStatus::obstructed)
                c.witness += " < mu - 1 = " + std::to_string(r.mu - 1);
        } else {
            c.witness = "no Seifert/C-complex data";
        }
        rep.criteria.push_back(c);
    }

    // (D) double branched cover: torsion must be G + G with hyperbolic form
    {
        CriterionResult c{"D", CriterionStatus::skipped, ""};
        if (r.mu != 1) {
            c.witness = "runs for the weak case (mu = 1) only";
        } else {
            std::optional<AbelianGroupClass> group;
            std::optional<IntMatrix> pres;
            if (r.pd) {
                group = branched_cover_group_pd(*r.pd);
                pres = goeritz_matrix(*r.pd);
            } else if (r.seifert) {
                group = branched_cover_from_seifert(*r.seifert);
                pres = *r.seifert + r.seifert->transpose();
            }
            if (!group) {
                c.witness = "no PD/Seifert data";
            } else {
                AbelianGroupClass tors = group->torsion_part();
                mpz_class order = tors.torsion_order();
                bool order_square = mpz_perfect_square_p(order.get_mpz_t()) != 0;
                bool group_square = is_square_group(tors);
                std::string meta_note;
                bool meta_none = false;
                bool meta_inconclusive = false;
                if (pres->rows() > 0 && pres->det() != 0) {
                    auto lf = LinkingFormOnCoker::make(*pres);
                    auto ms = metaboliser_search(lf);
                    if (ms.status == MetaboliserResult::Status::none) {
                        meta_none = true;
                        meta_note = "; no metaboliser for the linking form";
                    } else if (ms.status == MetaboliserResult::Status::inconclusive) {
                        meta_inconclusive = true;
                        meta_note = "; metaboliser search inconclusive (group too large)";
                    } else {
                        meta_note = "; linking form metaboliser found";
                    }
                } else if (pres->rows() > 0) {
                    meta_note = "; linking form skipped (singular presentation)";
                }
                c.witness = group_witness(*group) + " (torsion order " + order.get_str() + ")" +
                            meta_note;
                if (!order_square || !group_square || meta_none) {
                    c.status = CriterionStatus::obstructed;
                    if (!group_square) c.witness += "; torsion is not of the form G + G";
                } else if (meta_inconclusive) {
                    c.status = CriterionStatus::inconclusive;
                } else {
                    c.status = CriterionStatus::passed;
                }
            }
        }
        rep.criteria.push_back(c);
    }

    // (F) torsion Alexander polynomial must be a norm over the localised ring
    {
        CriterionResult c{"F", CriterionStatus::skipped, ""};
        if (r.mu != 1) {
            c.witness = "runs for the weak case (mu = 1) only";
        } else if (!r.seifert) {
            c.witness = "needs a Seifert matrix";
        } else {
            LaurentPoly delta = torsion_alexander_1var(*r.seifert);
            // quotient by the units of the localised ring: content and
            // powers of (1 - t)
            LaurentPoly reduced = delta.normalized_1var();
            mpz_class cont = reduced.content();
            if (cont > 1) {
                LaurentPoly stripped(1);
                for (const auto& [e, co] : reduced.terms()) stripped.add_term(e, co / cont);
                reduced = stripped;
            }
            LaurentPoly one_minus_t = LaurentPoly::constant(1, 1) - LaurentPoly::term1(1, 1);
            std::vector<int> at_one{1};
            while (!reduced.is_zero() && reduced.evaluate_half_turn(at_one) == 0)
                reduced = reduced.divide_exact(one_minus_t).normalized_1var();
            NormFactorization nf = norm_factorization_check(reduced);
            c.witness = "Delta_tor = " + delta.to_string();
            switch (nf.status) {
                case NormFactorization::Status::found:
                    c.status = CriterionStatus::passed;
                    c.witness += "; norm factor f = " + nf.factor.to_string();
                    break;
                case NormFactorization::Status::none:
                    c.status = CriterionStatus::obstructed;
                    c.witness += "; admits no factorisation f(t)f(1/t)";
                    break;
                case NormFactorization::Status::inconclusive:
                    c.status = CriterionStatus::inconclusive;
                    c.witness += "; factorisation above the degree cap";
                    break;
            }
        }
        rep.criteria.push_back(c);
    }

    // (L) pairwise linking across a cross-section surface (2 or 3 components)
    {
        CriterionResult c{"L", CriterionStatus::skipped, ""};
        if (r.components != 2 && r.components != 3) {
            c.witness = "applies to 2- or 3-component links";
        } else if (!lk) {
            c.witness = "no linking data";
        } else {
            bool ok = linking_criterion(*lk);
            std::ostringstream w;
            w << "pairwise linking:";
            for (long i = 0; i < lk->rows(); ++i)
                for (long j = i + 1; j < lk->cols(); ++j) w << " " << lk->at(i, j);
            c.witness = w.str();
            c.status = ok ? CriterionStatus::passed : CriterionStatus::obstructed;
            if (!ok) c.witness += "; no ordering fits (a, -a, a)";
        }
        rep.criteria.push_back(c);
    }

    // (L') strong case: linking matrix must vanish identically
    {
        CriterionResult c{"L'", CriterionStatus::skipped, ""};
        if (r.mu != r.components) {
            c.witness = "runs for the strong case (mu = n) only";
        } else if (!lk) {
            c.witness = "no linking data";
        } else if (lk->is_zero()) {
            c.status = CriterionStatus::passed;
            c.witness = "linking matrix vanishes";
        } else {
            c.status = CriterionStatus::obstructed;
            c.witness = "nonzero linking matrix";
        }
        rep.criteria.push_back(c);
    }

    rep.obstructed = std::any_of(rep.criteria.begin(), rep.criteria.end(), [](const auto& c) {
        return c.status == CriterionStatus::obstructed;
    });
    rep.verdict = rep.obstructed ? "obstructed" : "no abelian obstruction";
    if (rep.obstructed) {
        rep.notes.push_back(
            "an obstruction at this colouring also rules out every colouring refining it "
            "(double sliceness passes down to coarser colourings)");
    } else {
        rep.notes.push_back(
            "no abelian obstruction is not a double-sliceness certificate: links are known "
            "that pass every abelian test and still bound no unknotted sphere pair");
    }
    return rep;
}

long genus_lower_bound(const LinkRecord& r, long grid_q) {
    auto cm = r.cmatrix();
    if (!cm) throw std::invalid_argument(r.name + ": genus bound needs Seifert or C-complex data");
    SweepOutcome sw = sweep_signature(cm->first, r.mu, grid_q);
    return sw.max_certified_abs;
}

std::string ObstructionReport::to_table() const {
    std::ostringstream os;
    os << name << "  (mu = " << mu << ", grid " << grid << ")\n";
    for (const auto& c : criteria) {
        os << "  [" << c.id << "] " << to_string(c.status);
        if (!c.witness.empty()) os << "  -- " << c.witness;
        os << "\n";
    }
    os << "  verdict: " << verdict;
    if (genus_bound_available) os << "  (doubly slice genus >= " << genus_lower_bound << ")";
    os << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
}

}  // namespace dslice
