#include "lgcb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgcb {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec matvec(const Matrix& m, const Vec& x) {
    if (static_cast<std::size_t>(m.cols()) != x.size())
        throw std::invalid_argument("matvec: size mismatch");
    Vec y(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: size mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

void add_scaled_outer(Matrix& acc, const Vec& x, double weight) {
    int n = acc.rows();
    if (acc.cols() != n || static_cast<std::size_t>(n) != x.size())
        throw std::invalid_argument("add_scaled_outer: size mismatch");
    for (int i = 0; i < n; ++i) {
        double wi = weight * x[i];
        if (wi == 0.0) continue;
        for (int j = 0; j < n; ++j) acc(i, j) += wi * x[j];
    }
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix not square");
    int n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-300) throw std::runtime_error("invert: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        double d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Vec symmetric_eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    int n = m.rows();
    Matrix a = m;
    // Cyclic Jacobi sweeps until off-diagonal mass is negligible.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p);
                    double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k);
                    double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Vec eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_difference: shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

} // namespace lgcb
