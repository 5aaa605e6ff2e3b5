#include "linalg.hpp"

#include <algorithm>

namespace shocklab {

Mat Mat::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    Mat m(int(rows.size()), rows.size() ? int(rows.begin()->size()) : 0);
    int i = 0;
    for (const auto& row : rows) {
        if (int(row.size()) != m.cols()) throw Error("Mat::from_rows: ragged rows");
        int j = 0;
        for (Complex v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw Error("Mat::operator*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Complex aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Mat Mat::operator*(Complex s) const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
}

Mat Mat::adjoint() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Mat Mat::col(int j) const {
    Mat v(rows_, 1);
    for (int i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, const Mat& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

double Mat::frobenius() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s = std::max(s, std::abs((*this)(i, j)));
    return s;
}

Lu lu_factor(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("lu_factor: square matrix required");
    Lu f;
    f.lu = a;
    int n = a.rows();
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(f.lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) { f.singular = true; continue; }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            ++f.swaps;
        }
        for (int i = k + 1; i < n; ++i) {
            Complex m = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = m;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

Mat lu_solve(const Lu& f, const Mat& b) {
    if (f.singular) throw Error("lu_solve: singular matrix");
    int n = f.lu.rows();
    Mat x(n, b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        std::array<Complex, Mat::kMaxDim> y;
        for (int i = 0; i < n; ++i) {
            Complex s = b(f.perm[i], c);
            for (int j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
            y[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            Complex s = y[i];
            for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j, c);
            x(i, c) = s / f.lu(i, i);
        }
    }
    return x;
}

Mat solve(const Mat& a, const Mat& b) { return lu_solve(lu_factor(a), b); }

Complex determinant(const Mat& a) {
    Lu f = lu_factor(a);
    if (f.singular) return 0.0;
    Complex d = (f.swaps % 2) ? -1.0 : 1.0;
    for (int i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

Qr orthonormalize(const Mat& frame) {
    int n = frame.rows(), k = frame.cols();
    Qr qr;
    qr.q = frame;
    qr.r = Mat(k, k);
    double scale = std::max(frame.max_abs(), 1e-300);
    for (int j = 0; j < k; ++j) {
        // two rounds of MGS projection
        for (int round = 0; round < 2; ++round) {
            for (int i = 0; i < j; ++i) {
                Complex dot = 0.0;
                for (int r = 0; r < n; ++r) dot += std::conj(qr.q(r, i)) * qr.q(r, j);
                for (int r = 0; r < n; ++r) qr.q(r, j) -= dot * qr.q(r, i);
                qr.r(i, j) += dot;
            }
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(qr.q(r, j));
        norm = std::sqrt(norm);
        if (norm < 1e-13 * scale)
            throw RankDeficient("orthonormalize: rank-deficient frame (column " +
                                std::to_string(j) + ")");
        qr.r(j, j) = norm;
        for (int r = 0; r < n; ++r) qr.q(r, j) /= norm;
    }
    return qr;
}

namespace {

void normalize_phase(Mat& vectors, int j) {
    int n = vectors.rows();
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = std::abs(vectors(i, j));
        if (v > best) { best = v; imax = i; }
    }
    if (best == 0.0) return;
    Complex phase = vectors(imax, j) / best;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        vectors(i, j) /= phase;
        norm += std::norm(vectors(i, j));
    }
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) vectors(i, j) /= norm;
}

Eigen eigensolve2(const Mat& a) {
    Eigen e;
    Complex tr = a(0, 0) + a(1, 1);
    Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    // pick the sign giving the larger |tr +/- disc| to avoid cancellation
    Complex s = (std::abs(tr + disc) >= std::abs(tr - disc)) ? tr + disc : tr - disc;
    Complex l1, l2;
    if (std::abs(s) == 0.0) { l1 = l2 = 0.0; }
    else { l1 = 0.5 * s; l2 = det / l1; }
    e.values = {l1, l2};
    e.vectors = Mat(2, 2);
    for (int j = 0; j < 2; ++j) {
        Complex lam = e.values[j];
        // rows of (a - lam I) are both orthogonal to the eigenvector
        Complex r1x = a(0, 0) - lam, r1y = a(0, 1);
        Complex r2x = a(1, 0), r2y = a(1, 1) - lam;
        Complex vx, vy;
        if (std::abs(r1x) + std::abs(r1y) >= std::abs(r2x) + std::abs(r2y)) {
            vx = -r1y; vy = r1x;
        } else {
            vx = -r2y; vy = r2x;
        }
        if (std::abs(vx) + std::abs(vy) == 0.0) { vx = (j == 0); vy = (j == 1); }
        e.vectors(0, j) = vx;
        e.vectors(1, j) = vy;
        normalize_phase(e.vectors, j);
    }
    return e;
}

// Householder reduction to upper Hessenberg form, accumulating the unitary Q.
void hessenberg(Mat& h, Mat& q) {
    int n = h.rows();
    q = Mat::identity(n);
    for (int k = 0; k < n - 2; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
        scale = std::sqrt(scale);
        if (scale < 1e-300) continue;
        Complex x0 = h(k + 1, k);
        Complex alpha = (std::abs(x0) > 0.0) ? -(x0 / std::abs(x0)) * scale : Complex(-scale, 0.0);
        std::array<Complex, Mat::kMaxDim> v{};
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = h(i, k) - ((i == k + 1) ? alpha : Complex(0.0));
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 < 1e-300) continue;
        // H <- P H P with P = I - 2 v v^H / |v|^2
        auto apply_left = [&](Mat& m) {
            for (int j = 0; j < n; ++j) {
                Complex dot = 0.0;
                for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * m(i, j);
                dot *= 2.0 / vnorm2;
                for (int i = k + 1; i < n; ++i) m(i, j) -= dot * v[i];
            }
        };
        auto apply_right = [&](Mat& m) {
            for (int i = 0; i < n; ++i) {
                Complex dot = 0.0;
                for (int j = k + 1; j < n; ++j) dot += m(i, j) * v[j];
                dot *= 2.0 / vnorm2;
                for (int j = k + 1; j < n; ++j) m(i, j) -= dot * std::conj(v[j]);
            }
        };
        apply_left(h);
        apply_right(h);
        apply_right(q);
    }
}

// Shifted QR iteration on a complex Hessenberg matrix; returns upper
// triangular T with A = Q T Q^H.
void schur(Mat& t, Mat& q) {
    int n = t.rows();
    hessenberg(t, q);
    int hi = n - 1;
    int iter = 0;
    while (hi > 0) {
        // deflate
        int lo = hi;
        while (lo > 0) {
            double off = std::abs(t(lo, lo - 1));
            double diag = std::abs(t(lo, lo)) + std::abs(t(lo - 1, lo - 1));
            if (off <= 1e-15 * std::max(diag, 1e-300)) {
                t(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) { --hi; iter = 0; continue; }
        if (++iter > 200) throw Error("eigensolve: QR iteration failed to converge");
        // Wilkinson shift from trailing 2x2
        Complex a = t(hi - 1, hi - 1), b = t(hi - 1, hi), c = t(hi, hi - 1), d = t(hi, hi);
        Complex tr = a + d, det = a * d - b * c;
        Complex disc = std::sqrt(tr * tr - 4.0 * det);
        Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
        Complex shift = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        if (iter % 30 == 0) shift += Complex(std::abs(t(hi, hi - 1)), 0.0);  // exceptional
        // explicit shifted QR step: subtract the shift on the whole matrix so
        // the similarity transform stays global, then T <- R Q + shift I
        for (int i = 0; i < n; ++i) t(i, i) -= shift;
        struct Rot { Complex c, s; int k; };
        std::vector<Rot> rots;
        for (int k = lo; k < hi; ++k) {
            Complex x = t(k, k);
            Complex y = t(k + 1, k);
            double r = std::sqrt(std::norm(x) + std::norm(y));
            Rot rot;
            rot.k = k;
            if (r < 1e-300) { rot.c = 1.0; rot.s = 0.0; }
            else { rot.c = x / r; rot.s = y / r; }
            // G^H from the left on rows k, k+1
            for (int j = k; j < n; ++j) {
                Complex u = t(k, j), w = t(k + 1, j);
                t(k, j) = std::conj(rot.c) * u + std::conj(rot.s) * w;
                t(k + 1, j) = -rot.s * u + rot.c * w;
            }
            rots.push_back(rot);
        }
        for (const Rot& rot : rots) {
            int k = rot.k;
            // G from the right on columns k, k+1
            for (int i = 0; i <= std::min(n - 1, k + 2); ++i) {
                Complex u = t(i, k), w = t(i, k + 1);
                t(i, k) = u * rot.c + w * rot.s;
                t(i, k + 1) = -u * std::conj(rot.s) + w * std::conj(rot.c);
            }
            for (int i = 0; i < n; ++i) {
                Complex u = q(i, k), w = q(i, k + 1);
                q(i, k) = u * rot.c + w * rot.s;
                q(i, k + 1) = -u * std::conj(rot.s) + w * std::conj(rot.c);
            }
        }
        for (int i = 0; i < n; ++i) t(i, i) += shift;
    }
}

}  // namespace

Eigen eigensolve(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("eigensolve: square matrix required");
    int n = a.rows();
    if (n == 0) return {};
    if (n == 1) {
        Eigen e;
        e.values = {a(0, 0)};
        e.vectors = Mat(1, 1);
        e.vectors(0, 0) = 1.0;
        return e;
    }
    if (n == 2) return eigensolve2(a);

    Mat t = a, q;
    schur(t, q);
    Eigen e;
    e.values.resize(n);
    e.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) e.values[j] = t(j, j);
    // eigenvectors of the triangular factor by back-substitution
    double tnorm = std::max(t.max_abs(), 1e-300);
    for (int j = 0; j < n; ++j) {
        std::array<Complex, Mat::kMaxDim> y{};
        y[j] = 1.0;
        for (int i = j - 1; i >= 0; --i) {
            Complex s = 0.0;
            for (int k = i + 1; k <= j; ++k) s += t(i, k) * y[k];
            Complex diag = t(i, i) - t(j, j);
            if (std::abs(diag) < 1e-14 * tnorm)
                diag = Complex(1e-14 * tnorm, 0.0);  // perturb repeated eigenvalue
            y[i] = -s / diag;
        }
        Mat v(n, 1);
        for (int i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (int k = 0; k <= j; ++k) s += q(i, k) * y[k];
            v(i, 0) = s;
        }
        e.vectors.set_col(j, v);
        normalize_phase(e.vectors, j);
    }
    return e;
}

Mat spectral_projector(const Eigen& e, const std::vector<int>& selected) {
    int n = e.vectors.rows();
    // P = V diag(chi) V^{-1} with chi the indicator of the selected group
    Mat vinv = inverse(e.vectors);
    Mat p(n, n);
    for (int idx : selected) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) += e.vectors(i, idx) * vinv(idx, j);
    }
    return p;
}

Mat spectral_projector(const Mat& a, const std::vector<int>& selected) {
    return spectral_projector(eigensolve(a), selected);
}

}  // namespace shocklab
