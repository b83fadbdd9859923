#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dslice/algebra.hpp"

namespace dslice {

// Integer Laurent polynomial in num_vars variables t1..tmu. Terms are kept in
// a sorted map from exponent vectors to nonzero coefficients, so equality is
// structural.
class LaurentPoly {
public:
    using Exponents = std::vector<int>;

    explicit LaurentPoly(int num_vars = 1) : num_vars_(num_vars) {}
    static LaurentPoly constant(int num_vars, mpz_class c);
    static LaurentPoly monomial(int num_vars, const Exponents& e, mpz_class c);
    // Single-variable convenience: c * t^k.
    static LaurentPoly term1(mpz_class c, int k) { return monomial(1, {k}, std::move(c)); }

    int num_vars() const { return num_vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, mpz_class>& terms() const { return terms_; }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly negate() const;
    bool operator==(const LaurentPoly& o) const {
        return num_vars_ == o.num_vars_ && terms_ == o.terms_;
    }

    // t_i -> t_i^{-1} for every i.
    LaurentPoly bar() const;

    // Exact quotient; throws if o does not divide *this.
    LaurentPoly divide_exact(const LaurentPoly& o) const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& omega) const;
    // Exact evaluation at t_i = signs[i] (each +1 or -1).
    mpz_class evaluate_half_turn(const std::vector<int>& signs) const;

    // Canonical form up to units +-t^k: lowest exponents shifted to zero,
    // positive leading coefficient. Single-variable only.
    LaurentPoly normalized_1var() const;

    mpz_class content() const;

    std::string to_string() const;
    static LaurentPoly parse(const std::string& text, int num_vars);

    void add_term(const Exponents& e, const mpz_class& c);

private:
    int num_vars_;
    std::map<Exponents, mpz_class> terms_;
};

class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(long rows, long cols, int num_vars)
        : rows_(rows), cols_(cols), num_vars_(num_vars),
          e_(static_cast<size_t>(rows * cols), LaurentPoly(num_vars)) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    int num_vars() const { return num_vars_; }
    const LaurentPoly& at(long i, long j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    LaurentPoly& at(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }

    LaurentMatrix bar_transpose() const;
    bool is_bar_hermitian() const;

private:
    long rows_ = 0, cols_ = 0;
    int num_vars_ = 1;
    std::vector<LaurentPoly> e_;
};

// A point of the mu-torus with exact rational angles: omega_i =
// exp(2*pi*i * p_i/q_i), fractions reduced, 0 <= p < q. Exact angles let the
// half-turn points route to the exact signature path.
struct TorusPoint {
    struct Angle {
        long p = 0;
        long q = 1;
    };
    std::vector<Angle> angles;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<Angle> a);
    static TorusPoint all_minus_one(int mu);
    static TorusPoint from_string(const std::string& text);

    int num_vars() const { return static_cast<int>(angles.size()); }
    bool has_unit_coordinate() const;  // some omega_i == 1
    bool all_half_turns() const;       // every q_i in {1,2}
    std::complex<double> omega(int i) const;
    std::vector<std::complex<double>> omegas() const;
    std::string to_string() const;
};

enum class LaurentOp { add, mul, neg };

LaurentPoly laurent_arith(const LaurentPoly& a, const LaurentPoly& b, LaurentOp op);
LaurentPoly bar_involution(const LaurentPoly& p);
ComplexMatrix evaluate_at_torus(const LaurentMatrix& m, const TorusPoint& w);
// Exact evaluation when every coordinate is +-1.
IntMatrix evaluate_at_half_turns(const LaurentMatrix& m, const TorusPoint& w);

// Rank over the fraction field Q(t1..tmu), by fraction-free elimination.
long generic_rank(const LaurentMatrix& m);

// Exact determinant over the Laurent ring (fraction-free).
LaurentPoly laurent_det(const LaurentMatrix& m);

// Outcome of the one-variable norm-factorisation test d ~ f(t) * f(t^-1)
// with unit +-t^k. Above the Kronecker degree cap the test reports
// `inconclusive` rather than guessing.
struct NormFactorization {
    enum class Status { found, none, inconclusive } status = Status::none;
    LaurentPoly factor{1};

    bool found() const { return status == Status::found; }
};

inline constexpr int kKroneckerDegreeCap = 12;

NormFactorization norm_factorization_check(const LaurentPoly& d);

// Integer univariate polynomial factorisation into content and primitive
// irreducible factors (Kronecker method). Exposed for the obstruction layer,
// which needs to discard (1-t)-factors before the norm test.
struct IntPolyFactor {
    std::vector<mpz_class> coeffs;  // low to high, primitive, positive lead
    int multiplicity = 1;
};
struct IntPolyFactorization {
    bool ok = true;  // false when the degree cap or work budget was exceeded
    int sign = 1;
    mpz_class content = 1;
    std::vector<IntPolyFactor> factors;
};
IntPolyFactorization factor_integer_poly(const std::vector<mpz_class>& coeffs);

}  // namespace dslice
