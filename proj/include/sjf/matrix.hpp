#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "sjf/rational.hpp"

namespace sjf {

/// Dense rational matrix, row-major. Sizes here are tiny (2n x 2n with
/// n <= 4), so plain Gaussian elimination over Q is exact and fast enough.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    RatMatrix(int rows, int cols, std::initializer_list<Rational> entries);

    static RatMatrix identity(int n);
    static RatMatrix zero(int rows, int cols) { return RatMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator-() const;
    RatMatrix scaled(const Rational& c) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    Rational det() const;
    RatMatrix inverse() const;  // throws on singular
    bool is_zero() const;
    bool is_symmetric() const;
    bool is_integral() const;

    // S[x] = x^T S x  (this = S, square; x has matching row count).
    RatMatrix quad(const RatMatrix& x) const;

    Rational trace() const;

    // Exact positive definiteness via leading principal minors.
    bool is_positive_definite() const;
    bool is_positive_semidefinite() const;  // via eigen-free minor test

    RatMatrix block(int i0, int j0, int h, int w) const;
    void set_block(int i0, int j0, const RatMatrix& b);

    // diag[a, b]
    static RatMatrix diag_concat(const RatMatrix& a, const RatMatrix& b);
    // (a  b) horizontal concatenation
    static RatMatrix hcat(const RatMatrix& a, const RatMatrix& b);

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

/// Symmetric rational matrix; the constructor checks symmetry.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(const RatMatrix& m);
    static SymMatrix identity(int n) { return SymMatrix(RatMatrix::identity(n)); }
    static SymMatrix scalar(int n, const Rational& c);

    int dim() const { return m_.rows(); }
    const RatMatrix& mat() const { return m_; }
    const Rational& operator()(int i, int j) const { return m_(i, j); }

    bool is_positive_definite() const { return m_.is_positive_definite(); }

private:
    RatMatrix m_;
};

using cplx = std::complex<double>;

/// Small dense complex matrix used on the analytic side.
class CMat {
public:
    CMat() : rows_(0), cols_(0) {}
    CMat(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMat identity(int n);
    static CMat from_rational(const RatMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    CMat transpose() const;
    CMat conj() const;
    CMat operator*(const CMat& o) const;
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat scaled(cplx c) const;

    cplx det() const;
    CMat inverse() const;  // throws on (numerically) singular
    cplx trace() const;

    CMat real_part() const;
    CMat imag_part() const;

    // x^T (this) x
    CMat quad(const CMat& x) const;

    CMat block(int i0, int j0, int h, int w) const;
    void set_block(int i0, int j0, const CMat& b);

    static CMat diag_concat(const CMat& a, const CMat& b);
    static CMat hcat(const CMat& a, const CMat& b);

    double max_abs() const;

    // Smallest eigenvalue of a real symmetric matrix (stored as CMat with
    // negligible imaginary parts), by Jacobi rotations. Used for the
    // positive-definiteness margin of Im(tau).
    double symmetric_min_eigenvalue() const;

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

}  // namespace sjf
