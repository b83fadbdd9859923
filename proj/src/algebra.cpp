#include "dslice/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dslice {

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c)
            throw std::invalid_argument("ragged rows");
        for (long j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (long j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::negate() const {
    IntMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
    return r;
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    long n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = v;
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : mpz_class(-m.at(n - 1, n - 1));
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (long j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMatrix::RatMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
    e_.resize(static_cast<size_t>(rows_ * cols_));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) at(i, j) = m.at(i, j);
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

RatMatrix RatMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    long n = rows_;
    RatMatrix a = *this;
    RatMatrix inv(n, n);
    for (long i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (long k = 0; k < n; ++k) {
        long p = -1;
        for (long i = k; i < n; ++i)
            if (a.at(i, k) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("singular matrix");
        if (p != k)
            for (long j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        mpq_class piv = a.at(k, k);
        for (long j = 0; j < n; ++j) {
            a.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (long i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            mpq_class f = a.at(i, k);
            for (long j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

mpz_class AbelianGroupClass::torsion_order() const {
    mpz_class o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

std::string AbelianGroupClass::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianGroupClass AbelianGroupClass::direct_sum(const AbelianGroupClass& a,
                                                const AbelianGroupClass& b) {
    // Recanonicalise via a diagonal presentation of the torsion parts.
    long k = static_cast<long>(a.invariant_factors.size() + b.invariant_factors.size());
    IntMatrix pres(k, k);
    long idx = 0;
    for (const auto& d : a.invariant_factors) { pres.at(idx, idx) = d; ++idx; }
    for (const auto& d : b.invariant_factors) { pres.at(idx, idx) = d; ++idx; }
    AbelianGroupClass out = cokernel_group(pres);
    out.free_rank = a.free_rank + b.free_rank;
    return out;
}

namespace {

// Index of the entry with smallest nonzero absolute value in the submatrix
// starting at (t,t); returns false when that submatrix is zero.
bool find_pivot(const IntMatrix& m, long t, long& pi, long& pj) {
    bool found = false;
    mpz_class best;
    for (long i = t; i < m.rows(); ++i)
        for (long j = t; j < m.cols(); ++j) {
            if (m.at(i, j) == 0) continue;
            mpz_class a = abs(m.at(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

struct SnfOps {
    IntMatrix* u = nullptr;  // accumulates row ops
    IntMatrix* v = nullptr;  // accumulates column ops

    void swap_rows(IntMatrix& m, long a, long b) {
        for (long j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
        if (u)
            for (long j = 0; j < u->cols(); ++j) std::swap(u->at(a, j), u->at(b, j));
    }
    void swap_cols(IntMatrix& m, long a, long b) {
        for (long i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
        if (v)
            for (long i = 0; i < v->rows(); ++i) std::swap(v->at(i, a), v->at(i, b));
    }
    void add_row(IntMatrix& m, long dst, long src, const mpz_class& f) {
        for (long j = 0; j < m.cols(); ++j) m.at(dst, j) += f * m.at(src, j);
        if (u)
            for (long j = 0; j < u->cols(); ++j) u->at(dst, j) += f * u->at(src, j);
    }
    void add_col(IntMatrix& m, long dst, long src, const mpz_class& f) {
        for (long i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
        if (v)
            for (long i = 0; i < v->rows(); ++i) v->at(i, dst) += f * v->at(i, src);
    }
    void negate_row(IntMatrix& m, long r) {
        for (long j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
        if (u)
            for (long j = 0; j < u->cols(); ++j) u->at(r, j) = -u->at(r, j);
    }
};

void smith_core(IntMatrix& m, SnfOps& ops, std::vector<mpz_class>& diag) {
    long n = std::min(m.rows(), m.cols());
    long t = 0;
    while (t < n) {
        long pi = 0, pj = 0;
        if (!find_pivot(m, t, pi, pj)) break;
        if (pi != t) ops.swap_rows(m, t, pi);
        if (pj != t) ops.swap_cols(m, t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (long i = t + 1; i < m.rows(); ++i) {
                if (m.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
                ops.add_row(m, i, t, -q);
                if (m.at(i, t) != 0) {
                    // remainder is a smaller pivot
                    ops.swap_rows(m, t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (long j = t + 1; j < m.cols(); ++j) {
                if (m.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
                ops.add_col(m, j, t, -q);
                if (m.at(t, j) != 0) {
                    ops.swap_cols(m, t, j);
                    clean = false;
                }
            }
        }
        ++t;
    }

    // Normalise signs, then enforce the divisibility chain.
    long r = t;
    for (long i = 0; i < r; ++i)
        if (m.at(i, i) < 0) ops.negate_row(m, i);
    for (long i = 0; i < r; ++i)
        for (long j = i + 1; j < r; ++j) {
            if (m.at(i, i) == 1) continue;
            mpz_class g, di = m.at(i, i), dj = m.at(j, j);
            mpz_gcd(g.get_mpz_t(), di.get_mpz_t(), dj.get_mpz_t());
            if (g == di) continue;  // already divides
            // Replace (di, dj) by (gcd, lcm): bring dj into column i, run the
            // Euclidean algorithm on rows i and j, clear the leftovers.
            ops.add_col(m, i, j, 1);
            while (m.at(j, i) != 0) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, i).get_mpz_t(), m.at(j, i).get_mpz_t());
                ops.add_row(m, i, j, -q);
                ops.swap_rows(m, i, j);
            }
            if (m.at(i, j) != 0) {
                mpz_class q = m.at(i, j) / m.at(i, i);  // exact: gcd divides
                ops.add_col(m, j, i, -q);
            }
            if (m.at(i, i) < 0) ops.negate_row(m, i);
            if (m.at(j, j) < 0) ops.negate_row(m, j);
        }

    diag.assign(static_cast<size_t>(n), 0);
    for (long i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = m.at(i, i);
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    IntMatrix w = m;
    SnfOps ops;
    std::vector<mpz_class> diag;
    smith_core(w, ops, diag);
    SmithResult res;
    for (const auto& d : diag)
        if (d != 0) res.factors.push_back(d);
    res.rank = static_cast<long>(res.factors.size());
    return res;
}

void smith_with_transform(const IntMatrix& m, IntMatrix& u, IntMatrix& v,
                          std::vector<mpz_class>& diag) {
    IntMatrix w = m;
    u = IntMatrix::identity(m.rows());
    v = IntMatrix::identity(m.cols());
    SnfOps ops;
    ops.u = &u;
    ops.v = &v;
    smith_core(w, ops, diag);
}

AbelianGroupClass cokernel_group(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    AbelianGroupClass g;
    g.free_rank = m.cols() - s.rank;
    for (const auto& d : s.factors)
        if (d >= 2) g.invariant_factors.push_back(d);
    return g;
}

namespace {

// Shared congruence-diagonalisation for symmetric (conj = id) and Hermitian
// scalars. Diagonal entries stay real; `diag_sign` reads their sign.
template <typename S, typename ConjFn, typename SignFn>
SignatureResult signature_by_congruence(std::vector<S> m, long n, ConjFn conj, SignFn diag_sign) {
    SignatureResult res;
    auto at = [&](long i, long j) -> S& { return m[static_cast<size_t>(i * n + j)]; };
    std::vector<long> act(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) act[static_cast<size_t>(i)] = i;

    auto is_zero = [](const S& x) { return x.is_zero(); };

    while (!act.empty()) {
        long pivot = -1;
        for (long idx : act)
            if (!is_zero(at(idx, idx))) { pivot = idx; break; }
        if (pivot >= 0) {
            int s = diag_sign(at(pivot, pivot));
            if (s > 0) ++res.positive; else ++res.negative;
            S d = at(pivot, pivot);
            std::vector<long> rest;
            for (long idx : act)
                if (idx != pivot) rest.push_back(idx);
            for (long i : rest)
                for (long j : rest)
                    at(i, j) = at(i, j) - at(i, pivot) * at(pivot, j) / d;
            act = std::move(rest);
            continue;
        }
        // all active diagonal entries are zero: look for a hyperbolic pair
        long hi = -1, hj = -1;
        for (size_t a = 0; a < act.size() && hi < 0; ++a)
            for (size_t b = a + 1; b < act.size(); ++b)
                if (!is_zero(at(act[a], act[b]))) {
                    hi = act[a];
                    hj = act[b];
                    break;
                }
        if (hi < 0) {
            res.zero += static_cast<long>(act.size());
            break;
        }
        // [[0, b],[conj(b), 0]] contributes one +1 and one -1; take the Schur
        // complement with respect to that block.
        ++res.positive;
        ++res.negative;
        S b = at(hi, hj);
        S bbar = conj(b);
        std::vector<long> rest;
        for (long idx : act)
            if (idx != hi && idx != hj) rest.push_back(idx);
        for (long k : rest)
            for (long l : rest)
                at(k, l) = at(k, l) - at(k, hj) * at(hi, l) / b - at(k, hi) * at(hj, l) / bbar;
        act = std::move(rest);
    }
    return res;
}

struct RatScalar {
    mpq_class v;
    bool is_zero() const { return v == 0; }
};
RatScalar operator-(const RatScalar& a, const RatScalar& b) { return {a.v - b.v}; }
RatScalar operator*(const RatScalar& a, const RatScalar& b) { return {a.v * b.v}; }
RatScalar operator/(const RatScalar& a, const RatScalar& b) { return {a.v / b.v}; }

}  // namespace

SignatureResult exact_signature_symmetric(const RatMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
    long n = m.rows();
    std::vector<RatScalar> w(static_cast<size_t>(n * n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) w[static_cast<size_t>(i * n + j)] = {m.at(i, j)};
    return signature_by_congruence(
        std::move(w), n, [](const RatScalar& x) { return x; },
        [](const RatScalar& x) { return sgn(x.v); });
}

GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    mpq_class n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw std::invalid_argument("division by zero");
    GaussRat num = a * b.conj();
    return {num.re / n2, num.im / n2};
}

bool GaussMatrix::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i) {
        if (at(i, i).im != 0) return false;
        for (long j = i + 1; j < cols_; ++j) {
            GaussRat c = at(j, i).conj();
            if (at(i, j).re != c.re || at(i, j).im != c.im) return false;
        }
    }
    return true;
}

SignatureResult exact_signature_hermitian(const GaussMatrix& m) {
    if (!m.is_hermitian()) throw std::invalid_argument("matrix is not Hermitian");
    long n = m.rows();
    std::vector<GaussRat> w(static_cast<size_t>(n * n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) w[static_cast<size_t>(i * n + j)] = m.at(i, j);
    return signature_by_congruence(
        std::move(w), n, [](const GaussRat& x) { return x.conj(); },
        [](const GaussRat& x) { return sgn(x.re); });
}

double ComplexMatrix::norm_inf() const {
    double best = 0;
    for (long i = 0; i < rows_; ++i) {
        double s = 0;
        for (long j = 0; j < cols_; ++j) s += std::abs(at(i, j));
        best = std::max(best, s);
    }
    return best;
}

namespace {

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
std::vector<double> hermitian_eigenvalues(ComplexMatrix a) {
    long n = a.rows();
    const double base = std::max(a.norm_inf(), 1.0);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (long p = 0; p < n; ++p)
            for (long q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
        if (std::sqrt(off) < 1e-15 * base) break;
        for (long p = 0; p < n; ++p)
            for (long q = p + 1; q < n; ++q) {
                std::complex<double> apq = a.at(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                std::complex<double> phase = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // columns: [p q] <- [p q] * [[c, s*phase],[-s*conj(phase)... ]]
                for (long k = 0; k < n; ++k) {
                    std::complex<double> akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * std::conj(phase) * akq;
                    a.at(k, q) = s * phase * akp + c * akq;
                }
                for (long k = 0; k < n; ++k) {
                    std::complex<double> apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * phase * aqk;
                    a.at(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a.at(i, i).real();
    return ev;
}

}  // namespace

SignatureResult hermitian_signature_numeric(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    long n = m.rows();
    double norm = m.norm_inf();
    double herm_err = 0;
    ComplexMatrix h(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            herm_err = std::max(herm_err, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
            h.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
        }
    if (norm > 0 && herm_err > 1e-8 * norm)
        throw std::invalid_argument("matrix is not Hermitian within tolerance");

    SignatureResult res;
    res.certified = true;
    if (n == 0) return res;
    double band = tol * std::max(norm, 1e-300);
    for (double ev : hermitian_eigenvalues(h)) {
        double a = std::abs(ev);
        if (a <= band)
            ++res.zero;
        else if (ev > 0)
            ++res.positive;
        else
            ++res.negative;
        if (a >= band / 10.0 && a <= band * 10.0) res.certified = false;
    }
    return res;
}

bool is_square_group(const AbelianGroupClass& g) {
    if (g.free_rank % 2 != 0) return false;
    size_t k = g.invariant_factors.size();
    if (k % 2 != 0) return false;
    // In canonical form, every prime-power divisor has even multiplicity iff
    // the invariant factors pair up equal along the chain.
    for (size_t i = 0; i < k; i += 2)
        if (g.invariant_factors[i] != g.invariant_factors[i + 1]) return false;
    return true;
}

}  // namespace dslice
