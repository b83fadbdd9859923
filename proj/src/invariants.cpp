#include "dslice/invariants.hpp"

#include <algorithm>
#include <functional>

namespace dslice {

std::string GeneralizedSeifertCollection::key_for(const std::vector<int>& signs) {
    std::string k;
    for (int s : signs) k += s < 0 ? '-' : '+';
    return k;
}

std::string GeneralizedSeifertCollection::opposite_key(const std::string& key) {
    std::string k = key;
    for (auto& c : k) c = c == '-' ? '+' : '-';
    return k;
}

GeneralizedSeifertCollection GeneralizedSeifertCollection::from_seifert(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Seifert matrix must be square");
    GeneralizedSeifertCollection g;
    g.mu = 1;
    g.size = a.rows();
    g.beta0 = 1;
    g.matrices["-"] = a;
    g.matrices["+"] = a.transpose();
    return g;
}

void GeneralizedSeifertCollection::complete_and_validate() {
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (beta0 < 1) throw std::invalid_argument("beta0 must be at least 1");
    for (const auto& [key, m] : matrices) {
        if (static_cast<int>(key.size()) != mu)
            throw std::invalid_argument("sign key '" + key + "' has wrong length");
        if (key.find_first_not_of("+-") != std::string::npos)
            throw std::invalid_argument("sign key '" + key + "' must consist of '+'/'-'");
        if (m.rows() != size || m.cols() != size)
            throw std::invalid_argument("generalised Seifert matrix has wrong shape");
    }
    // complete via A^{-eps} = (A^eps)^T
    for (long bits = 0; bits < (1L << mu); ++bits) {
        std::string key;
        for (int i = 0; i < mu; ++i) key += (bits >> i) & 1 ? '+' : '-';
        std::string opp = opposite_key(key);
        auto it = matrices.find(key);
        auto oi = matrices.find(opp);
        if (it == matrices.end() && oi == matrices.end())
            throw std::invalid_argument("missing generalised Seifert matrix for sign vector " +
                                        key);
        if (it == matrices.end()) matrices[key] = oi->second.transpose();
    }
    for (const auto& [key, m] : matrices) {
        if (!(matrices.at(opposite_key(key)) == m.transpose()))
            throw std::invalid_argument("A^{-eps} != (A^eps)^T for sign vector " + key);
    }
}

const IntMatrix& GeneralizedSeifertCollection::matrix(const std::string& key) const {
    auto it = matrices.find(key);
    if (it == matrices.end())
        throw std::invalid_argument("missing generalised Seifert matrix " + key);
    return it->second;
}

LaurentMatrix assemble_cmatrix(const GeneralizedSeifertCollection& g) {
    GeneralizedSeifertCollection gc = g;
    gc.complete_and_validate();
    const int mu = gc.mu;
    const long n = gc.size;
    LaurentMatrix h(n, n, mu);

    for (long bits = 0; bits < (1L << mu); ++bits) {
        std::vector<int> signs(static_cast<size_t>(mu));
        for (int i = 0; i < mu; ++i) signs[static_cast<size_t>(i)] = (bits >> i) & 1 ? +1 : -1;
        // weight = prod_i (1 - t_i^{signs_i})
        LaurentPoly weight = LaurentPoly::constant(mu, 1);
        for (int i = 0; i < mu; ++i) {
            LaurentPoly::Exponents e(static_cast<size_t>(mu), 0);
            e[static_cast<size_t>(i)] = signs[static_cast<size_t>(i)];
            LaurentPoly f = LaurentPoly::constant(mu, 1) - LaurentPoly::monomial(mu, e, 1);
            weight = weight * f;
        }
        const IntMatrix& a = gc.matrix(GeneralizedSeifertCollection::key_for(signs));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                if (a.at(i, j) == 0) continue;
                LaurentPoly term = weight * LaurentPoly::constant(mu, a.at(i, j));
                h.at(i, j) = h.at(i, j) + term;
            }
    }
    return h;
}

namespace {

// Exact quarter-turn evaluation of the Levine-Tristram matrix.
GaussMatrix lt_matrix_gaussian(const IntMatrix& a, bool plus_i) {
    long n = a.rows();
    GaussMatrix m(n, n);
    // (1 - i) and (1 + i) coefficients
    GaussRat c1{mpq_class(1), mpq_class(plus_i ? -1 : 1)};
    GaussRat c2{mpq_class(1), mpq_class(plus_i ? 1 : -1)};
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            GaussRat va{mpq_class(a.at(i, j)), mpq_class(0)};
            GaussRat vb{mpq_class(a.at(j, i)), mpq_class(0)};
            m.at(i, j) = c1 * va + c2 * vb;
        }
    return m;
}

}  // namespace

SigValue signature_at(const LaurentMatrix& h, const TorusPoint& w, double tol) {
    if (w.num_vars() != h.num_vars())
        throw std::invalid_argument("torus point dimension mismatch");
    if (!h.is_bar_hermitian())
        throw std::invalid_argument("C-complex matrix must be bar-Hermitian");
    if (w.has_unit_coordinate()) return {0, true};
    if (w.all_half_turns()) {
        IntMatrix m = evaluate_at_half_turns(h, w);
        SignatureResult s = exact_signature_symmetric(RatMatrix(m));
        return {s.signature(), true};
    }
    ComplexMatrix m = evaluate_at_torus(h, w);
    SignatureResult s = hermitian_signature_numeric(m, tol);
    return {s.signature(), s.certified};
}

SigValue nullity_at(const LaurentMatrix& h, long beta0, const TorusPoint& w, double tol) {
    if (w.num_vars() != h.num_vars())
        throw std::invalid_argument("torus point dimension mismatch");
    if (w.has_unit_coordinate())
        throw std::invalid_argument("nullity is defined on the open torus only");
    if (beta0 < 1) throw std::invalid_argument("beta0 must be at least 1");
    if (w.all_half_turns()) {
        IntMatrix m = evaluate_at_half_turns(h, w);
        long rank = smith_normal_form(m).rank;
        return {h.rows() - rank + beta0 - 1, true};
    }
    ComplexMatrix m = evaluate_at_torus(h, w);
    SignatureResult s = hermitian_signature_numeric(m, tol);
    return {s.zero + beta0 - 1, s.certified};
}

SigValue lt_signature(const IntMatrix& a, TorusPoint::Angle w, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Seifert matrix must be square");
    TorusPoint pt(std::vector<TorusPoint::Angle>{w});
    const auto& ang = pt.angles[0];
    if (ang.p == 0) return {0, true};
    if (ang.q == 2) {
        IntMatrix m = (a + a.transpose());  // (1-w)A + (1-conj w)A^T = 2(A + A^T)
        IntMatrix two = m + m;
        SignatureResult s = exact_signature_symmetric(RatMatrix(two));
        return {s.signature(), true};
    }
    if (ang.q == 4) {
        GaussMatrix m = lt_matrix_gaussian(a, ang.p == 1);
        SignatureResult s = exact_signature_hermitian(m);
        return {s.signature(), true};
    }
    std::complex<double> om = pt.omega(0);
    long n = a.rows();
    ComplexMatrix m(n, n);
    std::complex<double> c1 = 1.0 - om;
    std::complex<double> c2 = 1.0 - std::conj(om);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = c1 * a.at(i, j).get_d() + c2 * a.at(j, i).get_d();
    SignatureResult s = hermitian_signature_numeric(m, tol);
    return {s.signature(), s.certified};
}

long alexander_nullity(const LaurentMatrix& h, long beta0) {
    if (beta0 < 1) throw std::invalid_argument("beta0 must be at least 1");
    return (h.rows() - generic_rank(h)) + beta0 - 1;
}

namespace {

// gcd of one-variable integer Laurent polynomials, primitive-part Euclid.
LaurentPoly laurent_gcd_1var(LaurentPoly a, LaurentPoly b) {
    auto to_norm = [](const LaurentPoly& p) { return p.is_zero() ? p : p.normalized_1var(); };
    a = to_norm(a);
    b = to_norm(b);
    while (!b.is_zero()) {
        // pseudo-remainder of a by b
        int db = b.terms().rbegin()->first[0];
        mpz_class lb = b.terms().rbegin()->second;
        LaurentPoly r = a;
        while (!r.is_zero() && r.terms().rbegin()->first[0] >= db) {
            int dr = r.terms().rbegin()->first[0];
            mpz_class lr = r.terms().rbegin()->second;
            // scale r so the leading term cancels exactly
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), lr.get_mpz_t(), lb.get_mpz_t());
            mpz_class mul_r = lb / g;
            mpz_class mul_b = lr / g;
            LaurentPoly scaled = r * LaurentPoly::constant(1, mul_r) -
                                 b * LaurentPoly::term1(mul_b, dr - db);
            r = scaled;
        }
        // strip content to control growth
        if (!r.is_zero()) {
            mpz_class c = r.content();
            if (c > 1) {
                LaurentPoly stripped(1);
                for (const auto& [e, co] : r.terms()) stripped.add_term(e, co / c);
                r = stripped;
            }
        }
        a = b;
        b = to_norm(r);
    }
    if (a.is_zero()) return a;
    // primitive normal form
    mpz_class c = a.content();
    LaurentPoly out(1);
    for (const auto& [e, co] : a.terms()) out.add_term(e, co / c);
    return out.normalized_1var();
}

void subsets_rec(long n, long k, long start, std::vector<long>& cur,
                 const std::function<void(const std::vector<long>&)>& emit) {
    if (static_cast<long>(cur.size()) == k) {
        emit(cur);
        return;
    }
    for (long i = start; i <= n - (k - static_cast<long>(cur.size())); ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

LaurentPoly torsion_alexander_1var(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Seifert matrix must be square");
    const long n = a.rows();
    LaurentMatrix m(n, n, 1);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            LaurentPoly p(1);
            if (a.at(i, j) != 0) p.add_term({1}, a.at(i, j));
            if (a.at(j, i) != 0) p.add_term({0}, -a.at(j, i));
            m.at(i, j) = p;
        }
    long r = generic_rank(m);
    if (r == 0) return LaurentPoly::constant(1, 1);
    if (r == n) return laurent_det(m).normalized_1var();

    // gcd of all r x r minors
    LaurentPoly g(1);
    std::vector<std::vector<long>> row_subsets, col_subsets;
    {
        std::vector<long> cur;
        subsets_rec(n, r, 0, cur, [&](const std::vector<long>& s) { row_subsets.push_back(s); });
        col_subsets = row_subsets;
    }
    for (const auto& rs : row_subsets) {
        for (const auto& cs : col_subsets) {
            LaurentMatrix sub(r, r, 1);
            for (long i = 0; i < r; ++i)
                for (long j = 0; j < r; ++j)
                    sub.at(i, j) = m.at(rs[static_cast<size_t>(i)], cs[static_cast<size_t>(j)]);
            LaurentPoly d = laurent_det(sub);
            if (d.is_zero()) continue;
            g = laurent_gcd_1var(g, d);
            if (!g.is_zero()) {
                // early out: gcd 1 cannot shrink further
                const auto& ts = g.terms();
                if (ts.size() == 1 && ts.begin()->second == 1 && ts.begin()->first[0] == 0)
                    return g;
            }
        }
    }
    if (g.is_zero()) throw std::logic_error("rank-many minors cannot all vanish");
    return g.normalized_1var();
}

AbelianGroupClass branched_cover_from_seifert(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Seifert matrix must be square");
    return cokernel_group(a + a.transpose());
}

LinkingFormOnCoker LinkingFormOnCoker::make(const IntMatrix& presentation) {
    if (!presentation.is_symmetric())
        throw std::invalid_argument("linking form presentation must be symmetric");
    LinkingFormOnCoker l;
    l.pres_ = presentation;
    if (presentation.rows() > 0 && presentation.det() == 0)
        throw std::invalid_argument("linking form presentation must be nonsingular");
    l.group_ = cokernel_group(presentation);

    IntMatrix u, v;
    std::vector<mpz_class> diag;
    smith_with_transform(presentation, u, v, diag);
    for (long i = 0; i < static_cast<long>(diag.size()); ++i)
        if (diag[static_cast<size_t>(i)] > 1) {
            l.kept_.push_back(i);
            l.ds_.push_back(diag[static_cast<size_t>(i)]);
        }
    // pairing Gram matrix in U-coordinates: (U M U^T)^{-1}
    if (!l.kept_.empty()) {
        IntMatrix umu = u * presentation * u.transpose();
        RatMatrix inv = RatMatrix(umu).inverse();
        long m = static_cast<long>(l.kept_.size());
        l.gram_ = RatMatrix(m, m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j)
                l.gram_.at(i, j) = inv.at(l.kept_[static_cast<size_t>(i)],
                                          l.kept_[static_cast<size_t>(j)]);
    }
    // U^{-1} for lifting
    RatMatrix uinv = RatMatrix(u).inverse();
    l.u_inverse_ = IntMatrix(u.rows(), u.cols());
    for (long i = 0; i < u.rows(); ++i)
        for (long j = 0; j < u.cols(); ++j) {
            mpq_class q = uinv.at(i, j);
            if (q.get_den() != 1) throw std::logic_error("unimodular inverse not integral");
            l.u_inverse_.at(i, j) = q.get_num();
        }
    return l;
}

mpq_class LinkingFormOnCoker::pair_reduced(const std::vector<mpz_class>& x,
                                           const std::vector<mpz_class>& y) const {
    long m = static_cast<long>(ds_.size());
    if (static_cast<long>(x.size()) != m || static_cast<long>(y.size()) != m)
        throw std::invalid_argument("vector length mismatch");
    mpq_class acc = 0;
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            acc += mpq_class(y[static_cast<size_t>(i)]) * gram_.at(i, j) *
                   mpq_class(x[static_cast<size_t>(j)]);
    // reduce mod 1
    mpz_class num = acc.get_num(), den = acc.get_den();
    mpz_class rem;
    mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rem, den);
}

std::vector<mpz_class> LinkingFormOnCoker::lift(const std::vector<mpz_class>& reduced) const {
    long n = pres_.rows();
    std::vector<mpz_class> padded(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < kept_.size(); ++i)
        padded[static_cast<size_t>(kept_[i])] = reduced[i];
    std::vector<mpz_class> out(static_cast<size_t>(n), 0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            out[static_cast<size_t>(i)] += u_inverse_.at(i, j) * padded[static_cast<size_t>(j)];
    return out;
}

namespace {

// Enumerate diagonal tuples with a given product.
void diag_tuples(long m, const mpz_class& target, std::vector<mpz_class>& cur,
                 const std::function<void(const std::vector<mpz_class>&)>& emit) {
    if (static_cast<long>(cur.size()) == m) {
        if (target == 1) emit(cur);
        return;
    }
    for (mpz_class d = 1; d <= target; ++d) {
        if (target % d != 0) continue;
        cur.push_back(d);
        diag_tuples(m, target / d, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

MetaboliserResult metaboliser_search(const LinkingFormOnCoker& l) {
    MetaboliserResult out;
    mpz_class g = l.group().torsion_order();
    if (g > kMetaboliserOrderBound) {
        out.status = MetaboliserResult::Status::inconclusive;
        return out;
    }
    if (g == 1) {
        out.status = MetaboliserResult::Status::found;
        return out;
    }
    if (mpz_perfect_square_p(g.get_mpz_t()) == 0) {
        out.status = MetaboliserResult::Status::none;
        return out;
    }
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), g.get_mpz_t());
    const long m = static_cast<long>(l.reduced_factors().size());
    const auto& ds = l.reduced_factors();

    // Subgroups of Z^m / diag(ds) of order s <-> integer lattices L with
    // diag(ds) Z^m <= L <= Z^m and [Z^m : L] = s, enumerated by row-style
    // Hermite normal form (lower triangular, 0 <= h_ij < h_ii for j < i).
    bool found = false;
    std::vector<std::vector<mpz_class>> basis;
    std::vector<mpz_class> diag_cur;
    diag_tuples(m, s, diag_cur, [&](const std::vector<mpz_class>& dd) {
        if (found) return;
        // odometer over sub-diagonal entries
        std::vector<long> offpos;
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < i; ++j) offpos.push_back(i * m + j);
        std::vector<mpz_class> off(offpos.size(), 0);
        for (;;) {
            // build H rows
            std::vector<std::vector<mpz_class>> h(
                static_cast<size_t>(m), std::vector<mpz_class>(static_cast<size_t>(m), 0));
            for (long i = 0; i < m; ++i) h[static_cast<size_t>(i)][static_cast<size_t>(i)] = dd[static_cast<size_t>(i)];
            for (size_t t = 0; t < offpos.size(); ++t)
                h[static_cast<size_t>(offpos[t] / m)][static_cast<size_t>(offpos[t] % m)] = off[t];

            // containment: each ds[j]*e_j lies in the row lattice of H
            bool contains = true;
            for (long j = m - 1; j >= 0 && contains; --j) {
                std::vector<mpz_class> v(static_cast<size_t>(m), 0);
                v[static_cast<size_t>(j)] = ds[static_cast<size_t>(j)];
                // back-substitute from the highest coordinate
                for (long c = m - 1; c >= 0; --c) {
                    if (v[static_cast<size_t>(c)] == 0) continue;
                    if (v[static_cast<size_t>(c)] % h[static_cast<size_t>(c)][static_cast<size_t>(c)] != 0) {
                        contains = false;
                        break;
                    }
                    mpz_class coef = v[static_cast<size_t>(c)] / h[static_cast<size_t>(c)][static_cast<size_t>(c)];
                    for (long c2 = 0; c2 <= c; ++c2)
                        v[static_cast<size_t>(c2)] -= coef * h[static_cast<size_t>(c)][static_cast<size_t>(c2)];
                }
            }
            if (contains) {
                // isotropy of the generators
                bool isotropic = true;
                for (long a = 0; a < m && isotropic; ++a)
                    for (long b = a; b < m && isotropic; ++b) {
                        mpq_class v = l.pair_reduced(h[static_cast<size_t>(a)], h[static_cast<size_t>(b)]);
                        if (v != 0) isotropic = false;
                    }
                if (isotropic) {
                    found = true;
                    // rows with h_ii = d_i are relations, not generators
                    for (long i = 0; i < m; ++i)
                        if (h[static_cast<size_t>(i)][static_cast<size_t>(i)] !=
                            ds[static_cast<size_t>(i)])
                            basis.push_back(h[static_cast<size_t>(i)]);
                    return;
                }
            }
            // advance odometer
            size_t t = 0;
            for (; t < offpos.size(); ++t) {
                long row = offpos[t] / m;
                if (++off[t] < dd[static_cast<size_t>(row)]) break;
                off[t] = 0;
            }
            if (t == offpos.size()) break;
            if (found) return;
        }
    });

    if (!found) {
        out.status = MetaboliserResult::Status::none;
        return out;
    }
    out.status = MetaboliserResult::Status::found;
    out.basis_reduced = basis;
    for (const auto& b : basis) out.basis.push_back(l.lift(b));
    return out;
}

}  // namespace dslice
