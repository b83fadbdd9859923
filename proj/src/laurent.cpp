#include "dslice/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dslice {

LaurentPoly LaurentPoly::constant(int num_vars, mpz_class c) {
    LaurentPoly p(num_vars);
    if (c != 0) p.terms_[Exponents(static_cast<size_t>(num_vars), 0)] = std::move(c);
    return p;
}

LaurentPoly LaurentPoly::monomial(int num_vars, const Exponents& e, mpz_class c) {
    if (static_cast<int>(e.size()) != num_vars)
        throw std::invalid_argument("exponent vector length mismatch");
    LaurentPoly p(num_vars);
    if (c != 0) p.terms_[e] = std::move(c);
    return p;
}

void LaurentPoly::add_term(const Exponents& e, const mpz_class& c) {
    if (static_cast<int>(e.size()) != num_vars_)
        throw std::invalid_argument("exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("num_vars mismatch");
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("num_vars mismatch");
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("num_vars mismatch");
    LaurentPoly r(num_vars_);
    Exponents e(static_cast<size_t>(num_vars_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < num_vars_; ++i)
                e[static_cast<size_t>(i)] =
                    ea[static_cast<size_t>(i)] + eb[static_cast<size_t>(i)];
            r.add_term(e, ca * cb);
        }
    return r;
}

LaurentPoly LaurentPoly::negate() const {
    LaurentPoly r(num_vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r(num_vars_);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        for (auto& x : ne) x = -x;
        r.terms_[ne] = c;
    }
    return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("num_vars mismatch");
    if (o.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) return LaurentPoly(num_vars_);

    // Shift both operands into N^mu so the lex descent below is well-founded;
    // this turns a run-away power-series expansion of an inexact quotient
    // into a prompt failure.
    auto min_exps = [&](const LaurentPoly& p) {
        Exponents m = p.terms_.begin()->first;
        for (const auto& [e, c] : p.terms_) {
            (void)c;
            for (int i = 0; i < p.num_vars_; ++i)
                m[static_cast<size_t>(i)] =
                    std::min(m[static_cast<size_t>(i)], e[static_cast<size_t>(i)]);
        }
        return m;
    };
    Exponents mp = min_exps(*this), mo = min_exps(o);
    auto shifted = [&](const LaurentPoly& p, const Exponents& m) {
        LaurentPoly r(p.num_vars_);
        for (const auto& [e, c] : p.terms_) {
            Exponents ne = e;
            for (int i = 0; i < p.num_vars_; ++i) ne[static_cast<size_t>(i)] -= m[static_cast<size_t>(i)];
            r.terms_[ne] = c;
        }
        return r;
    };
    LaurentPoly rem = shifted(*this, mp);
    LaurentPoly osh = shifted(o, mo);
    LaurentPoly quot(num_vars_);
    const Exponents dexp = osh.terms_.rbegin()->first;
    const mpz_class dcoef = osh.terms_.rbegin()->second;
    while (!rem.is_zero()) {
        const Exponents rexp = rem.terms_.rbegin()->first;
        const mpz_class rcoef = rem.terms_.rbegin()->second;
        Exponents qe(static_cast<size_t>(num_vars_));
        for (int i = 0; i < num_vars_; ++i) {
            qe[static_cast<size_t>(i)] =
                rexp[static_cast<size_t>(i)] - dexp[static_cast<size_t>(i)];
            if (qe[static_cast<size_t>(i)] < 0)
                throw std::invalid_argument("inexact Laurent division");
        }
        mpz_class qc, r;
        mpz_fdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rcoef.get_mpz_t(), dcoef.get_mpz_t());
        if (r != 0) throw std::invalid_argument("inexact Laurent division");
        LaurentPoly qt = monomial(num_vars_, qe, qc);
        quot = quot + qt;
        rem = rem - qt * osh;
    }
    // undo the shift: quotient gains t^(mp - mo)
    Exponents back(static_cast<size_t>(num_vars_));
    for (int i = 0; i < num_vars_; ++i)
        back[static_cast<size_t>(i)] = mp[static_cast<size_t>(i)] - mo[static_cast<size_t>(i)];
    return quot * monomial(num_vars_, back, 1);
}

std::complex<double> LaurentPoly::evaluate(const std::vector<std::complex<double>>& omega) const {
    if (static_cast<int>(omega.size()) != num_vars_)
        throw std::invalid_argument("evaluation point length mismatch");
    std::complex<double> acc = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> m = c.get_d();
        for (int i = 0; i < num_vars_; ++i) {
            int k = e[static_cast<size_t>(i)];
            if (k == 0) continue;
            std::complex<double> w = omega[static_cast<size_t>(i)];
            if (k < 0) {
                w = std::conj(w);  // |omega| = 1
                k = -k;
            }
            for (int s = 0; s < k; ++s) m *= w;
        }
        acc += m;
    }
    return acc;
}

mpz_class LaurentPoly::evaluate_half_turn(const std::vector<int>& signs) const {
    if (static_cast<int>(signs.size()) != num_vars_)
        throw std::invalid_argument("evaluation point length mismatch");
    mpz_class acc = 0;
    for (const auto& [e, c] : terms_) {
        int neg = 0;
        for (int i = 0; i < num_vars_; ++i)
            if (signs[static_cast<size_t>(i)] < 0 && (e[static_cast<size_t>(i)] & 1)) neg ^= 1;
        if (neg)
            acc -= c;
        else
            acc += c;
    }
    return acc;
}

LaurentPoly LaurentPoly::normalized_1var() const {
    if (num_vars_ != 1) throw std::invalid_argument("normalized_1var needs one variable");
    if (terms_.empty()) return *this;
    int lo = terms_.begin()->first[0];
    bool flip = terms_.rbegin()->second < 0;
    LaurentPoly r(1);
    for (const auto& [e, c] : terms_) r.terms_[{e[0] - lo}] = flip ? mpz_class(-c) : c;
    return r;
}

mpz_class LaurentPoly::content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        mpz_class a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        if (!any_var) {
            os << a;
            continue;
        }
        bool printed = false;
        if (a != 1) {
            os << a;
            printed = true;
        }
        for (int i = 0; i < num_vars_; ++i) {
            int k = e[static_cast<size_t>(i)];
            if (k == 0) continue;
            if (printed) os << "*";
            os << "t" << (i + 1);
            if (k != 1) os << "^" << k;
            printed = true;
        }
    }
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    int num_vars;

    explicit PolyParser(const std::string& text, int nv) : s(text), num_vars(nv) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos) +
                                    ": " + msg);
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }

    LaurentPoly parse() {
        LaurentPoly acc(num_vars);
        bool first = true;
        for (;;) {
            skip_ws();
            if (pos >= s.size()) {
                if (first) fail("empty polynomial");
                break;
            }
            int sign = 1;
            if (eat('+')) {
                // explicit plus
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            acc = acc + parse_term(sign);
            first = false;
        }
        return acc;
    }

    LaurentPoly parse_term(int sign) {
        mpz_class coeff = sign;
        LaurentPoly::Exponents e(static_cast<size_t>(num_vars), 0);
        bool any = false;
        for (;;) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                coeff *= parse_int();
                any = true;
            } else if (pos < s.size() && s[pos] == 't') {
                ++pos;
                long idx = parse_int();
                if (idx < 1 || idx > num_vars) fail("variable index out of range");
                long k = 1;
                if (eat('^')) k = parse_int();
                e[static_cast<size_t>(idx - 1)] += static_cast<int>(k);
                any = true;
            } else {
                break;
            }
            skip_ws();
            if (!eat('*')) {
                // allow juxtaposition: continue only if a variable follows
                skip_ws();
                if (pos < s.size() && s[pos] == 't') continue;
                break;
            }
        }
        if (!any) fail("expected term");
        return LaurentPoly::monomial(num_vars, e, coeff);
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text, int num_vars) {
    PolyParser p(text, num_vars);
    LaurentPoly r = p.parse();
    return r;
}

LaurentMatrix LaurentMatrix::bar_transpose() const {
    LaurentMatrix r(cols_, rows_, num_vars_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).bar();
    return r;
}

bool LaurentMatrix::is_bar_hermitian() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i; j < cols_; ++j)
            if (!(at(i, j) == at(j, i).bar())) return false;
    return true;
}

TorusPoint::TorusPoint(std::vector<Angle> a) : angles(std::move(a)) {
    for (auto& ang : angles) {
        if (ang.q <= 0) throw std::invalid_argument("torus angle with nonpositive denominator");
        ang.p = ((ang.p % ang.q) + ang.q) % ang.q;
        long g = std::gcd(ang.p, ang.q);
        if (g > 1) {
            ang.p /= g;
            ang.q /= g;
        }
        if (ang.p == 0) ang.q = 1;
    }
}

TorusPoint TorusPoint::all_minus_one(int mu) {
    return TorusPoint(std::vector<Angle>(static_cast<size_t>(mu), Angle{1, 2}));
}

TorusPoint TorusPoint::from_string(const std::string& text) {
    std::vector<Angle> as;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) {
        auto slash = part.find('/');
        if (slash == std::string::npos)
            throw std::invalid_argument("torus point must be given as p/q fractions of a turn");
        Angle a;
        a.p = std::stol(part.substr(0, slash));
        a.q = std::stol(part.substr(slash + 1));
        as.push_back(a);
    }
    if (as.empty()) throw std::invalid_argument("empty torus point");
    return TorusPoint(std::move(as));
}

bool TorusPoint::has_unit_coordinate() const {
    return std::any_of(angles.begin(), angles.end(), [](const Angle& a) { return a.p == 0; });
}

bool TorusPoint::all_half_turns() const {
    return std::all_of(angles.begin(), angles.end(), [](const Angle& a) { return a.q <= 2; });
}

std::complex<double> TorusPoint::omega(int i) const {
    const Angle& a = angles[static_cast<size_t>(i)];
    if (a.q == 1) return {1.0, 0.0};
    if (a.q == 2) return {-1.0, 0.0};
    if (a.q == 4) return {0.0, a.p == 1 ? 1.0 : -1.0};
    double th = 2.0 * M_PI * static_cast<double>(a.p) / static_cast<double>(a.q);
    return {std::cos(th), std::sin(th)};
}

std::vector<std::complex<double>> TorusPoint::omegas() const {
    std::vector<std::complex<double>> v;
    v.reserve(angles.size());
    for (int i = 0; i < num_vars(); ++i) v.push_back(omega(i));
    return v;
}

std::string TorusPoint::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < angles.size(); ++i)
        os << (i ? "," : "") << angles[i].p << "/" << angles[i].q;
    return os.str();
}

LaurentPoly laurent_arith(const LaurentPoly& a, const LaurentPoly& b, LaurentOp op) {
    switch (op) {
        case LaurentOp::add: return a + b;
        case LaurentOp::mul: return a * b;
        case LaurentOp::neg: return a.negate();
    }
    throw std::invalid_argument("unknown op");
}

LaurentPoly bar_involution(const LaurentPoly& p) { return p.bar(); }

ComplexMatrix evaluate_at_torus(const LaurentMatrix& m, const TorusPoint& w) {
    if (w.num_vars() != m.num_vars())
        throw std::invalid_argument("torus point dimension mismatch");
    ComplexMatrix r(m.rows(), m.cols());
    auto om = w.omegas();
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).evaluate(om);
    return r;
}

IntMatrix evaluate_at_half_turns(const LaurentMatrix& m, const TorusPoint& w) {
    if (!w.all_half_turns()) throw std::invalid_argument("not a half-turn point");
    std::vector<int> signs;
    for (const auto& a : w.angles) signs.push_back(a.q == 2 ? -1 : 1);
    IntMatrix r(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).evaluate_half_turn(signs);
    return r;
}

namespace {

size_t term_count(const LaurentPoly& p) { return p.terms().size(); }

// Fraction-free elimination; returns rank, optionally the up-to-sign det.
long bareiss_laurent(LaurentMatrix m, LaurentPoly* det_out, int* det_sign) {
    long n = std::min(m.rows(), m.cols());
    LaurentPoly prev = LaurentPoly::constant(m.num_vars(), 1);
    int sign = 1;
    long r = 0;
    while (r < n) {
        long pi = -1, pj = -1;
        size_t best = 0;
        for (long i = r; i < m.rows(); ++i)
            for (long j = r; j < m.cols(); ++j) {
                if (m.at(i, j).is_zero()) continue;
                size_t tc = term_count(m.at(i, j));
                if (pi < 0 || tc < best) {
                    pi = i;
                    pj = j;
                    best = tc;
                }
            }
        if (pi < 0) break;
        if (pi != r) {
            for (long j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pi, j));
            sign = -sign;
        }
        if (pj != r) {
            for (long i = 0; i < m.rows(); ++i) std::swap(m.at(i, r), m.at(i, pj));
            sign = -sign;
        }
        for (long i = r + 1; i < m.rows(); ++i) {
            for (long j = r + 1; j < m.cols(); ++j) {
                LaurentPoly v = m.at(i, j) * m.at(r, r) - m.at(i, r) * m.at(r, j);
                m.at(i, j) = v.divide_exact(prev);
            }
            m.at(i, r) = LaurentPoly(m.num_vars());
        }
        prev = m.at(r, r);
        ++r;
    }
    if (det_out) {
        if (r < n)
            *det_out = LaurentPoly(m.num_vars());
        else
            *det_out = m.at(n - 1, n - 1);
    }
    if (det_sign) *det_sign = sign;
    return r;
}

}  // namespace

long generic_rank(const LaurentMatrix& m) { return bareiss_laurent(m, nullptr, nullptr); }

LaurentPoly laurent_det(const LaurentMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    if (m.rows() == 0) return LaurentPoly::constant(m.num_vars(), 1);
    LaurentPoly d(m.num_vars());
    int sign = 1;
    long r = bareiss_laurent(m, &d, &sign);
    if (r < m.rows()) return LaurentPoly(m.num_vars());
    return sign > 0 ? d : d.negate();
}

// ---------------------------------------------------------------------------
// Univariate integer polynomial factorisation (Kronecker) and the norm test.
// ---------------------------------------------------------------------------

namespace {

using IPoly = std::vector<mpz_class>;  // low to high

void trim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

mpz_class eval_ipoly(const IPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Exact division test over Z; quotient valid only when true is returned.
bool divide_ipoly(const IPoly& p, const IPoly& g, IPoly& q) {
    if (g.empty()) return false;
    IPoly rem = p;
    trim(rem);
    q.assign(rem.size() >= g.size() ? rem.size() - g.size() + 1 : 0, 0);
    while (rem.size() >= g.size() && !rem.empty()) {
        mpz_class c, r;
        mpz_fdiv_qr(c.get_mpz_t(), r.get_mpz_t(), rem.back().get_mpz_t(),
                    g.back().get_mpz_t());
        if (r != 0) return false;
        size_t shift = rem.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) rem[shift + i] -= c * g[i];
        trim(rem);
    }
    return rem.empty();
}

mpz_class ipoly_content(const IPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void make_primitive_positive(IPoly& p, mpz_class& content, int& sign) {
    content = ipoly_content(p);
    sign = 1;
    if (content == 0) return;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    if (p.back() < 0) {
        sign = -1;
        for (auto& c : p) c = -c;
    }
}

// All divisors of |v| with both signs; empty when |v| is too large to factor
// by trial division at desk scale.
bool signed_divisors(const mpz_class& v, std::vector<mpz_class>& out) {
    mpz_class a = abs(v);
    if (a == 0 || a > mpz_class("1000000000000000")) return false;
    unsigned long long n = mpz_get_ui(a.get_mpz_t());
    std::vector<std::pair<unsigned long long, int>> fac;
    unsigned long long m = n;
    for (unsigned long long d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            int e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            fac.push_back({d, e});
        }
    }
    if (m > 1) fac.push_back({m, 1});
    std::vector<unsigned long long> divs{1};
    for (auto [pr, e] : fac) {
        size_t sz = divs.size();
        unsigned long long pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= pr;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pw);
        }
        if (divs.size() > 4000) return false;
    }
    std::sort(divs.begin(), divs.end());
    out.clear();
    for (auto d : divs) {
        out.push_back(mpz_class(static_cast<unsigned long>(d)));
        out.push_back(mpz_class(-static_cast<long>(d)));
    }
    return true;
}

struct KroneckerState {
    long budget = 4000000;  // candidate interpolations
    bool exhausted = false;
};

// Extract all linear factors s*x - r by the rational root theorem.
void extract_linear_factors(IPoly& p, std::vector<IPoly>& out, KroneckerState& st) {
    if (degree(p) < 1) return;
    for (;;) {
        if (degree(p) < 1) return;
        std::vector<mpz_class> rs, ss;
        if (!signed_divisors(p.front(), rs) || !signed_divisors(p.back(), ss)) {
            st.exhausted = true;
            return;
        }
        bool found = false;
        for (const auto& r : rs) {
            for (const auto& s : ss) {
                if (s <= 0) continue;
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
                if (g != 1 && !(r == 0)) continue;
                IPoly lin{-r, s};
                IPoly q;
                if (divide_ipoly(p, lin, q)) {
                    out.push_back(lin);
                    p = q;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) return;
    }
}

// Kronecker search for a factor of degree m; returns true when found.
// Candidate value tuples are pruned by the integer-polynomial congruence
// g(a) = g(b) mod (a - b) before any interpolation happens.
bool kronecker_degree_m(IPoly& p, int m, IPoly& factor_out, KroneckerState& st) {
    std::vector<mpz_class> xs;
    for (long v = 0; static_cast<int>(xs.size()) < m + 1; v = (v > 0 ? -v : -v + 1))
        xs.push_back(mpz_class(v));

    struct Pt {
        mpz_class x;
        std::vector<mpz_class> divs;
    };
    std::vector<Pt> pts;
    for (const auto& x : xs) {
        Pt pt;
        pt.x = x;
        mpz_class val = eval_ipoly(p, x);
        if (val == 0) return false;  // roots were already removed
        if (!signed_divisors(val, pt.divs)) {
            st.exhausted = true;
            return false;
        }
        pts.push_back(std::move(pt));
    }
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.divs.size() < b.divs.size(); });

    const size_t k = pts.size();
    std::vector<mpq_class> xq(k);
    for (size_t i = 0; i < k; ++i) xq[i] = mpq_class(pts[i].x);

    std::vector<mpz_class> chosen(k);
    bool found = false;
    IPoly g;

    std::function<bool(size_t)> descend = [&](size_t lvl) -> bool {
        if (st.exhausted) return false;
        if (lvl == k) {
            if (--st.budget < 0) {
                st.exhausted = true;
                return false;
            }
            // Newton divided differences over the chosen values
            std::vector<mpq_class> dd(k);
            for (size_t i = 0; i < k; ++i) dd[i] = mpq_class(chosen[i]);
            for (size_t l = 1; l < k; ++l)
                for (size_t i = k - 1; i >= l; --i) {
                    dd[i] = (dd[i] - dd[i - 1]) / (xq[i] - xq[i - l]);
                    if (i == l) break;
                }
            std::vector<mpq_class> coeff(k, 0);
            std::vector<mpq_class> basis(k, 0);
            basis[0] = 1;
            size_t blen = 1;
            coeff[0] = dd[0];
            for (size_t l = 1; l < k; ++l) {
                std::vector<mpq_class> nb(blen + 1, 0);
                for (size_t i = 0; i < blen; ++i) {
                    nb[i + 1] += basis[i];
                    nb[i] -= basis[i] * xq[l - 1];
                }
                blen += 1;
                for (size_t i = 0; i < blen; ++i) basis[i] = nb[i];
                for (size_t i = 0; i < blen; ++i) coeff[i] += dd[l] * basis[i];
            }
            IPoly cand_poly(k);
            for (size_t i = 0; i < k; ++i) {
                if (coeff[i].get_den() != 1) return false;
                cand_poly[i] = coeff[i].get_num();
            }
            trim(cand_poly);
            if (degree(cand_poly) != m) return false;
            IPoly q;
            if (!divide_ipoly(p, cand_poly, q)) return false;
            mpz_class c;
            int s;
            make_primitive_positive(cand_poly, c, s);
            g = cand_poly;
            p = q;
            if (s < 0 || c != 1)
                for (auto& pc : p) pc *= c * s;
            found = true;
            return true;
        }
        for (const mpz_class& v : pts[lvl].divs) {
            if (lvl == 0 && v < 0) continue;  // factors are found up to sign
            bool congruent = true;
            for (size_t i = 0; i < lvl; ++i) {
                mpz_class diff = v - chosen[i];
                mpz_class step = pts[lvl].x - pts[i].x;
                if (diff % step != 0) {
                    congruent = false;
                    break;
                }
            }
            if (!congruent) continue;
            if (--st.budget < 0) {
                st.exhausted = true;
                return false;
            }
            chosen[lvl] = v;
            if (descend(lvl + 1)) return true;
            if (st.exhausted) return false;
        }
        return false;
    };
    descend(0);
    if (found) factor_out = g;
    return found;
}

}  // namespace

IntPolyFactorization factor_integer_poly(const std::vector<mpz_class>& coeffs) {
    IntPolyFactorization out;
    IPoly p = coeffs;
    trim(p);
    if (p.empty()) {
        out.ok = false;
        return out;
    }
    // strip x^v
    int xpow = 0;
    while (!p.empty() && p.front() == 0) {
        p.erase(p.begin());
        ++xpow;
    }
    make_primitive_positive(p, out.content, out.sign);
    std::vector<IPoly> raw;
    for (int i = 0; i < xpow; ++i) raw.push_back(IPoly{0, 1});

    KroneckerState st;
    extract_linear_factors(p, raw, st);
    int m = 2;
    while (degree(p) >= 2 * m && !st.exhausted) {
        IPoly g;
        if (kronecker_degree_m(p, m, g, st))
            raw.push_back(g);
        else
            ++m;
    }
    if (st.exhausted) {
        out.ok = false;
        return out;
    }
    if (degree(p) >= 1) raw.push_back(p);

    // group by multiplicity (each factor normalised primitive, positive lead)
    for (auto& g : raw) {
        mpz_class c;
        int s;
        make_primitive_positive(g, c, s);
        (void)c;
        (void)s;
        bool merged = false;
        for (auto& f : out.factors)
            if (f.coeffs == g) {
                ++f.multiplicity;
                merged = true;
                break;
            }
        if (!merged) out.factors.push_back({g, 1});
    }
    return out;
}

namespace {

IPoly reciprocal_normalized(const IPoly& g) {
    IPoly r(g.rbegin(), g.rend());
    trim(r);
    if (!r.empty() && r.back() < 0)
        for (auto& c : r) c = -c;
    return r;
}

LaurentPoly ipoly_to_laurent(const IPoly& p) {
    LaurentPoly r(1);
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) r.add_term({static_cast<int>(i)}, p[i]);
    return r;
}

}  // namespace

NormFactorization norm_factorization_check(const LaurentPoly& d) {
    if (d.num_vars() != 1) throw std::invalid_argument("norm test needs one variable");
    if (d.is_zero()) throw std::invalid_argument("norm test of the zero polynomial");

    NormFactorization out;
    LaurentPoly nd = d.normalized_1var();
    IPoly p;
    for (const auto& [e, c] : nd.terms()) {
        if (static_cast<size_t>(e[0]) >= p.size()) p.resize(static_cast<size_t>(e[0]) + 1);
        p[static_cast<size_t>(e[0])] = c;
    }
    if (degree(p) > kKroneckerDegreeCap) {
        out.status = NormFactorization::Status::inconclusive;
        return out;
    }
    IntPolyFactorization fz = factor_integer_poly(p);
    if (!fz.ok) {
        out.status = NormFactorization::Status::inconclusive;
        return out;
    }
    // Content must itself be a norm e * bar(e) = e^2 over the integers.
    if (mpz_perfect_square_p(fz.content.get_mpz_t()) == 0) {
        out.status = NormFactorization::Status::none;
        return out;
    }
    mpz_class e;
    mpz_sqrt(e.get_mpz_t(), fz.content.get_mpz_t());

    LaurentPoly f = LaurentPoly::constant(1, e);
    std::vector<bool> used(fz.factors.size(), false);
    for (size_t i = 0; i < fz.factors.size(); ++i) {
        if (used[i]) continue;
        const IPoly& g = fz.factors[i].coeffs;
        IPoly rg = reciprocal_normalized(g);
        if (rg == g) {
            if (fz.factors[i].multiplicity % 2 != 0) {
                out.status = NormFactorization::Status::none;
                return out;
            }
            LaurentPoly gl = ipoly_to_laurent(g);
            for (int k = 0; k < fz.factors[i].multiplicity / 2; ++k) f = f * gl;
            used[i] = true;
            continue;
        }
        size_t partner = fz.factors.size();
        for (size_t j = 0; j < fz.factors.size(); ++j)
            if (!used[j] && j != i && fz.factors[j].coeffs == rg) {
                partner = j;
                break;
            }
        if (partner == fz.factors.size() ||
            fz.factors[partner].multiplicity != fz.factors[i].multiplicity) {
            out.status = NormFactorization::Status::none;
            return out;
        }
        LaurentPoly gl = ipoly_to_laurent(g);
        for (int k = 0; k < fz.factors[i].multiplicity; ++k) f = f * gl;
        used[i] = used[partner] = true;
    }

    // Verify the re-expansion reproduces d up to +-t^k.
    LaurentPoly expansion = (f * f.bar()).normalized_1var();
    if (!(expansion == nd))
        throw std::logic_error("norm factorisation failed internal verification");
    out.status = NormFactorization::Status::found;
    LaurentPoly fn = f.normalized_1var();
    // prefer a positive lowest coefficient for display
    if (!fn.terms().empty() && fn.terms().begin()->second < 0) fn = fn.negate();
    out.factor = fn;
    return out;
}

}  // namespace dslice
