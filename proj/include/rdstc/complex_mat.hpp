#ifndef RDSTC_COMPLEX_MAT_HPP
#define RDSTC_COMPLEX_MAT_HPP

#include <complex>
#include <vector>

namespace rdstc {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major. Column vectors are n x 1 matrices.
// Everything in this simulator is at most a few tens of entries per side,
// so there is no blocking or sparsity.
class ComplexMat {
  public:
    ComplexMat() = default;
    ComplexMat(int rows, int cols);  // zero-filled

    static ComplexMat identity(int n);
    static ComplexMat zero(int rows, int cols) { return ComplexMat(rows, cols); }
    static ComplexMat column(const std::vector<cdouble>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    cdouble& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cdouble& operator()(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * cols_ + c];
    }
    cdouble& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
    const cdouble& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

    const std::vector<cdouble>& entries() const { return entries_; }

    ComplexMat col(int j) const;
    void set_col(int j, const ComplexMat& v);
    bool all_finite() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMat matmul(const ComplexMat& a, const ComplexMat& b);
ComplexMat adjoint(const ComplexMat& a);
ComplexMat conjugate(const ComplexMat& a);
cdouble trace(const ComplexMat& a);
double frobenius_norm(const ComplexMat& a);

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b);
ComplexMat operator*(cdouble s, const ComplexMat& a);
ComplexMat operator*(double s, const ComplexMat& a);
ComplexMat operator+(const ComplexMat& a, const ComplexMat& b);
ComplexMat operator-(const ComplexMat& a, const ComplexMat& b);

// x^H y for column vectors.
cdouble dot(const ComplexMat& x, const ComplexMat& y);
double norm2(const ComplexMat& x);  // squared Euclidean norm of a column

// Stacks blocks vertically; all blocks must share a column count.
ComplexMat vstack(const std::vector<ComplexMat>& blocks);

// Solves a x = b for Hermitian positive definite a via Cholesky.
// If the factorization fails, retries once with diagonal loading
// delta = 1e-9 * trace(a) / rows; a second failure throws
// SingularMatrixError.
ComplexMat hermitian_solve(const ComplexMat& a, const ComplexMat& b);

}  // namespace rdstc

#endif  // RDSTC_COMPLEX_MAT_HPP
