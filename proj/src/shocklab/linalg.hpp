#pragma once

#include <array>
#include <initializer_list>

#include "common.hpp"

namespace shocklab {

// Dense complex matrix with capacity 8x8.  Everything in the pipeline is a
// 2- to 6-dimensional system, so fixed storage and O(n^3) algorithms are fine.
class Mat {
  public:
    static constexpr int kMaxDim = 8;

    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols) {
        check_dims(rows, cols);
        data_.fill(Complex(0.0, 0.0));
    }
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Complex& operator()(int i, int j) { return data_[i * kMaxDim + j]; }
    const Complex& operator()(int i, int j) const { return data_[i * kMaxDim + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(Complex s) const;
    Mat adjoint() const;
    Mat transpose() const;
    Mat col(int j) const;
    void set_col(int j, const Mat& v);
    double frobenius() const;
    double max_abs() const;

  private:
    static void check_dims(int r, int c) {
        if (r < 0 || c < 0 || r > kMaxDim || c > kMaxDim)
            throw Error("Mat: dimension out of range");
    }
    int rows_, cols_;
    std::array<Complex, kMaxDim * kMaxDim> data_;
};

// LU with partial pivoting.
struct Lu {
    Mat lu;
    std::array<int, Mat::kMaxDim> perm;
    int swaps = 0;
    bool singular = false;
};

Lu lu_factor(const Mat& a);
Mat lu_solve(const Lu& f, const Mat& b);
Mat solve(const Mat& a, const Mat& b);
Complex determinant(const Mat& a);
Mat inverse(const Mat& a);

// QR by modified Gram-Schmidt with reorthogonalization; R has positive real
// diagonal.  Throws RankDeficient when a column collapses.
struct Qr {
    Mat q;  // n x k, orthonormal columns
    Mat r;  // k x k upper triangular, positive real diagonal
};
Qr orthonormalize(const Mat& frame);

// Eigendecomposition of a general complex matrix: 2x2 closed form, complex
// Schur (Hessenberg + shifted QR iteration) above that.  Eigenvector phases
// are normalized so the largest-modulus component is real positive, which
// keeps conjugate-symmetric inputs giving conjugate-symmetric output.
struct Eigen {
    std::vector<Complex> values;
    Mat vectors;  // column j is the eigenvector of values[j]
};
Eigen eigensolve(const Mat& a);

// Spectral projector onto the invariant subspace of the selected eigenvalues.
Mat spectral_projector(const Mat& a, const std::vector<int>& selected);
Mat spectral_projector(const Eigen& e, const std::vector<int>& selected);

}  // namespace shocklab
