#include "sjf/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sjf {

RatMatrix::RatMatrix(int rows, int cols, std::initializer_list<Rational> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("RatMatrix: entry count mismatch");
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: dim mismatch in mul");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RatMatrix: dim mismatch in add");
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RatMatrix: dim mismatch in sub");
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

RatMatrix RatMatrix::scaled(const Rational& c) const {
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

Rational RatMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: not square");
    RatMatrix m = *this;
    int n = rows_;
    Rational d(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Rational inv = m(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            Rational f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

RatMatrix RatMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
    int n = rows_;
    RatMatrix m = *this;
    RatMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::domain_error("RatMatrix: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rational f = m(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            m(col, j) *= f;
            inv(col, j) *= f;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m(i, col).is_zero()) continue;
            Rational g = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= g * m(col, j);
                inv(i, j) -= g * inv(col, j);
            }
        }
    }
    return inv;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RatMatrix::is_integral() const {
    for (const auto& x : a_)
        if (!x.is_integer()) return false;
    return true;
}

RatMatrix RatMatrix::quad(const RatMatrix& x) const {
    if (rows_ != cols_ || x.rows() != rows_)
        throw std::invalid_argument("quad: dim mismatch");
    return x.transpose() * (*this) * x;
}

Rational RatMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: not square");
    Rational t;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool RatMatrix::is_positive_definite() const {
    if (rows_ != cols_ || !is_symmetric()) return false;
    for (int k = 1; k <= rows_; ++k)
        if (block(0, 0, k, k).det().sign() <= 0) return false;
    return true;
}

bool RatMatrix::is_positive_semidefinite() const {
    if (rows_ != cols_ || !is_symmetric()) return false;
    // All principal (not just leading) minors must be >= 0.
    int n = rows_;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        RatMatrix sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                sub(static_cast<int>(i), static_cast<int>(j)) = (*this)(idx[i], idx[j]);
        if (sub.det().sign() < 0) return false;
    }
    return true;
}

RatMatrix RatMatrix::block(int i0, int j0, int h, int w) const {
    RatMatrix b(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void RatMatrix::set_block(int i0, int j0, const RatMatrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

RatMatrix RatMatrix::diag_concat(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

RatMatrix RatMatrix::hcat(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    RatMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

std::string RatMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ",";
            os << (*this)(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

SymMatrix::SymMatrix(const RatMatrix& m) : m_(m) {
    if (!m.is_symmetric()) throw std::invalid_argument("SymMatrix: not symmetric");
}

SymMatrix SymMatrix::scalar(int n, const Rational& c) {
    return SymMatrix(RatMatrix::identity(n).scaled(c));
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::from_rational(const RatMatrix& m) {
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

CMat CMat::transpose() const {
    CMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMat CMat::conj() const {
    CMat t(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) t.a_[i] = std::conj(a_[i]);
    return t;
}

CMat CMat::operator*(const CMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMat: dim mismatch in mul");
    CMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            cplx x = (*this)(i, k);
            if (x == cplx(0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

CMat CMat::operator+(const CMat& o) const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CMat CMat::scaled(cplx c) const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

cplx CMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("CMat::det: not square");
    CMat m = *this;
    int n = rows_;
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int i = col + 1; i < n; ++i)
            if (std::abs(m(i, col)) > best) { best = std::abs(m(i, col)); piv = i; }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        for (int i = col + 1; i < n; ++i) {
            cplx f = m(i, col) / m(col, col);
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

CMat CMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("CMat::inverse: not square");
    int n = rows_;
    CMat m = *this;
    CMat inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int i = col + 1; i < n; ++i)
            if (std::abs(m(i, col)) > best) { best = std::abs(m(i, col)); piv = i; }
        if (best < 1e-300) throw std::domain_error("CMat: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        cplx f = 1.0 / m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) *= f;
            inv(col, j) *= f;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            cplx g = m(i, col);
            if (g == cplx(0)) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= g * m(col, j);
                inv(i, j) -= g * inv(col, j);
            }
        }
    }
    return inv;
}

cplx CMat::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

CMat CMat::real_part() const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].real();
    return r;
}

CMat CMat::imag_part() const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].imag();
    return r;
}

CMat CMat::quad(const CMat& x) const { return x.transpose() * (*this) * x; }

CMat CMat::block(int i0, int j0, int h, int w) const {
    CMat b(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void CMat::set_block(int i0, int j0, const CMat& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

CMat CMat::diag_concat(const CMat& a, const CMat& b) {
    CMat r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

CMat CMat::hcat(const CMat& a, const CMat& b) {
    CMat r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double CMat::symmetric_min_eigenvalue() const {
    int n = rows_;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (*this)(i, j).real();
    // Cyclic Jacobi.
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
                for (int i = 0; i < n; ++i) {
                    double mip = m[i][p], miq = m[i][q];
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for (int i = 0; i < n; ++i) {
                    double mpi = m[p][i], mqi = m[q][i];
                    m[p][i] = c * mpi - s * mqi;
                    m[q][i] = s * mpi + c * mqi;
                }
            }
    }
    double mn = m[0][0];
    for (int i = 1; i < n; ++i) mn = std::min(mn, m[i][i]);
    return mn;
}

}  // namespace sjf
