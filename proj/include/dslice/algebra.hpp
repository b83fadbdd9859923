#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dslice {

// Dense row-major matrix over Z with arbitrary-precision entries.
// 0x0 matrices are legal everywhere and behave as empty presentations.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    IntMatrix(long rows, long cols, std::vector<mpz_class> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows < 0 || cols < 0 || e_.size() != static_cast<size_t>(rows * cols))
            throw std::invalid_argument("entry count does not match matrix shape");
    }
    static IntMatrix identity(long n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const mpz_class& at(long i, long j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    mpz_class& at(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }

    IntMatrix transpose() const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix negate() const;
    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool is_symmetric() const;
    bool is_zero() const;

    // Fraction-free determinant (Bareiss). Requires a square matrix.
    mpz_class det() const;

    std::string to_string() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

// Dense matrix over Q, canonical reduced entries.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    explicit RatMatrix(const IntMatrix& m);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const mpq_class& at(long i, long j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    mpq_class& at(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }

    bool is_symmetric() const;
    // Exact inverse; throws if singular.
    RatMatrix inverse() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<mpq_class> e_;
};

// Finitely generated abelian group in canonical invariant-factor form:
// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, each di >= 2.
struct AbelianGroupClass {
    long free_rank = 0;
    std::vector<mpz_class> invariant_factors;

    bool operator==(const AbelianGroupClass& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // Order of the torsion part.
    mpz_class torsion_order() const;
    AbelianGroupClass torsion_part() const { return {0, invariant_factors}; }
    std::string to_string() const;

    static AbelianGroupClass direct_sum(const AbelianGroupClass& a, const AbelianGroupClass& b);
};

// Eigenvalue sign counts of a symmetric/Hermitian matrix.
struct SignatureResult {
    long positive = 0;
    long negative = 0;
    long zero = 0;
    bool certified = true;

    long signature() const { return positive - negative; }
    long dimension() const { return positive + negative + zero; }
};

struct SmithResult {
    std::vector<mpz_class> factors;  // nonzero diagonal, divisibility chain, positive
    long rank = 0;                   // rank over Q
};

// Smith normal form by fraction-free integer elimination with smallest-pivot
// selection (entry blow-up is the failure mode at this scale, not speed).
SmithResult smith_normal_form(const IntMatrix& m);

// As above but also returns unimodular U, V with U*m*V diagonal. The full
// diagonal (including zeros) is written to `diag`.
void smith_with_transform(const IntMatrix& m, IntMatrix& u, IntMatrix& v,
                          std::vector<mpz_class>& diag);

// Cokernel of m acting as a relation matrix (rows = relations) on Z^cols.
AbelianGroupClass cokernel_group(const IntMatrix& m);

// Exact eigenvalue sign counts of a symmetric rational matrix via congruence
// (LDL^T with hyperbolic 2x2 pivots when the active diagonal vanishes).
SignatureResult exact_signature_symmetric(const RatMatrix& m);

// Gaussian-rational scalar, used for the exact Hermitian path.
struct GaussRat {
    mpq_class re, im;

    GaussRat() = default;
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long r) : re(r), im(0) {}
    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
};

GaussRat operator+(const GaussRat& a, const GaussRat& b);
GaussRat operator-(const GaussRat& a, const GaussRat& b);
GaussRat operator*(const GaussRat& a, const GaussRat& b);
GaussRat operator/(const GaussRat& a, const GaussRat& b);

class GaussMatrix {
public:
    GaussMatrix() = default;
    GaussMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const GaussRat& at(long i, long j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    GaussRat& at(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }
    bool is_hermitian() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<GaussRat> e_;
};

// Exact eigenvalue sign counts of a Hermitian Gaussian-rational matrix.
SignatureResult exact_signature_hermitian(const GaussMatrix& m);

// Small dense complex matrix for the numeric path.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const std::complex<double>& at(long i, long j) const {
        return e_[static_cast<size_t>(i * cols_ + j)];
    }
    std::complex<double>& at(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }

    // Max row sum norm.
    double norm_inf() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<std::complex<double>> e_;
};

inline constexpr double kDefaultSignatureTol = 1e-9;

// Eigenvalue sign counts of a complex Hermitian matrix (Jacobi iteration).
// |lambda| <= tol * norm_inf counts as zero; the result is certified iff no
// eigenvalue lies within a factor 10 of the tolerance band boundary.
// Throws if the input is not Hermitian beyond representation error.
SignatureResult hermitian_signature_numeric(const ComplexMatrix& m,
                                            double tol = kDefaultSignatureTol);

// True iff g is isomorphic to G + G for some abelian group G: free rank even
// and every prime-power elementary divisor occurs with even multiplicity
// (equivalently, the invariant factors pair up equal).
bool is_square_group(const AbelianGroupClass& g);

}  // namespace dslice
