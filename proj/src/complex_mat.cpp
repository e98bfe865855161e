#include "rdstc/complex_mat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rdstc/errors.hpp"

namespace rdstc {

ComplexMat::ComplexMat(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
}

ComplexMat ComplexMat::identity(int n) {
    ComplexMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMat ComplexMat::column(const std::vector<cdouble>& entries) {
    ComplexMat m(static_cast<int>(entries.size()), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m[static_cast<int>(i)] = entries[i];
    return m;
}

ComplexMat ComplexMat::col(int j) const {
    ComplexMat v(rows_, 1);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, j);
    return v;
}

void ComplexMat::set_col(int j, const ComplexMat& v) {
    if (v.rows() != rows_ || v.cols() != 1)
        throw std::invalid_argument("set_col: column size mismatch");
    for (int r = 0; r < rows_; ++r) (*this)(r, j) = v[r];
}

bool ComplexMat::all_finite() const {
    for (const auto& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

ComplexMat matmul(const ComplexMat& a, const ComplexMat& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) +
                                    " and " + std::to_string(b.rows()) + " do not match");
    ComplexMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMat adjoint(const ComplexMat& a) {
    ComplexMat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

ComplexMat conjugate(const ComplexMat& a) {
    ComplexMat c(a.rows(), a.cols());
    for (int i = 0; i < a.size(); ++i) c[i] = std::conj(a[i]);
    return c;
}

cdouble trace(const ComplexMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace: matrix is not square");
    cdouble t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const ComplexMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::norm(a[i]);
    return std::sqrt(s);
}

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) { return matmul(a, b); }

ComplexMat operator*(cdouble s, const ComplexMat& a) {
    ComplexMat c(a.rows(), a.cols());
    for (int i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

ComplexMat operator*(double s, const ComplexMat& a) { return cdouble(s, 0.0) * a; }

ComplexMat operator+(const ComplexMat& a, const ComplexMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator+: shape mismatch");
    ComplexMat c(a.rows(), a.cols());
    for (int i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

ComplexMat operator-(const ComplexMat& a, const ComplexMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator-: shape mismatch");
    ComplexMat c(a.rows(), a.cols());
    for (int i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

cdouble dot(const ComplexMat& x, const ComplexMat& y) {
    if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows())
        throw std::invalid_argument("dot: expects equal-length column vectors");
    cdouble acc = 0.0;
    for (int i = 0; i < x.rows(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm2(const ComplexMat& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += std::norm(x[i]);
    return s;
}

ComplexMat vstack(const std::vector<ComplexMat>& blocks) {
    if (blocks.empty()) return {};
    int cols = blocks.front().cols();
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw std::invalid_argument("vstack: column counts differ");
        rows += b.rows();
    }
    ComplexMat out(rows, cols);
    int at = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < cols; ++c) out(at + r, c) = b(r, c);
        at += b.rows();
    }
    return out;
}

namespace {

// Lower Cholesky factor of a Hermitian matrix; returns false on a
// non-positive pivot.
bool cholesky(const ComplexMat& a, ComplexMat& lower) {
    int n = a.rows();
    lower = ComplexMat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            cdouble sum = a(i, j);
            for (int k = 0; k < j; ++k) sum -= lower(i, k) * std::conj(lower(j, k));
            if (i == j) {
                double d = sum.real();
                if (!(d > 0.0) || !std::isfinite(d)) return false;
                lower(i, i) = std::sqrt(d);
            } else {
                lower(i, j) = sum / lower(j, j);
            }
        }
    }
    return true;
}

ComplexMat solve_with_factor(const ComplexMat& lower, const ComplexMat& b) {
    int n = lower.rows();
    ComplexMat x = b;
    // Forward substitution L y = b.
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            cdouble sum = x(i, c);
            for (int k = 0; k < i; ++k) sum -= lower(i, k) * x(k, c);
            x(i, c) = sum / lower(i, i);
        }
        // Back substitution L^H x = y.
        for (int i = n - 1; i >= 0; --i) {
            cdouble sum = x(i, c);
            for (int k = i + 1; k < n; ++k) sum -= std::conj(lower(k, i)) * x(k, c);
            x(i, c) = sum / lower(i, i);
        }
    }
    return x;
}

}  // namespace

ComplexMat hermitian_solve(const ComplexMat& a, const ComplexMat& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_solve: matrix not square");
    if (a.rows() != b.rows()) throw std::invalid_argument("hermitian_solve: rhs size mismatch");

    double scale = frobenius_norm(a);
    double asym = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) asym += std::norm(a(i, j) - std::conj(a(j, i)));
    if (std::sqrt(asym) > 1e-9 * (scale + 1e-300))
        throw std::invalid_argument("hermitian_solve: matrix is not Hermitian");

    // Work on the symmetrized matrix so tiny asymmetries cannot bias pivots.
    ComplexMat h(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMat lower;
    if (cholesky(h, lower)) return solve_with_factor(lower, b);

    double delta = 1e-9 * trace(h).real() / a.rows();
    ComplexMat loaded = h;
    for (int i = 0; i < a.rows(); ++i) loaded(i, i) += delta;
    if (cholesky(loaded, lower)) return solve_with_factor(lower, b);

    throw SingularMatrixError("hermitian_solve: matrix not positive definite after loading");
}

}  // namespace rdstc
