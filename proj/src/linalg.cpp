#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pbdm {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_same_shape(const CMat& a, const CMat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw std::invalid_argument("CMat: entry count does not match shape");
    for (cplx z : a_)
        if (!finite(z)) throw std::invalid_argument("CMat: non-finite entry");
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimension mismatch");
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMat operator*(cplx s, const CMat& a) {
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

CMat operator*(double s, const CMat& a) { return cplx{s, 0.0} * a; }

CMat operator+(const CMat& a, const CMat& b) {
    check_same_shape(a, b, "matrix sum");
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

CMat operator-(const CMat& a, const CMat& b) {
    check_same_shape(a, b, "matrix difference");
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

CMat adjoint(const CMat& a) {
    CMat c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

cplx trace(const CMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace: non-square matrix");
    cplx t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double max_abs(const CMat& a) {
    double m = 0.0;
    for (cplx z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double hermiticity_defect(const CMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermiticity_defect: non-square matrix");
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    CMat c(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) c(i, j) = u[i] * std::conj(v[j]);
    return c;
}

CMat partial_transpose_b(const CMat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("partial_transpose_b: expected a 4x4 operator");
    CMat out(4, 4);
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t mu = 0; mu < 2; ++mu)
            for (std::size_t n = 0; n < 2; ++n)
                for (std::size_t nu = 0; nu < 2; ++nu)
                    out(m * 2 + mu, n * 2 + nu) = rho(m * 2 + nu, n * 2 + mu);
    return out;
}

CMat partial_trace(const CMat& m, const std::vector<std::size_t>& dims,
                   const std::vector<std::size_t>& keep) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (m.rows() != total || m.cols() != total)
        throw std::invalid_argument("partial_trace: subsystem dimensions do not match operator");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("partial_trace: keep indices must be strictly increasing");
    }

    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

    // stride of subsystem i in the flattened index
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    std::size_t kept_total = 1;
    for (std::size_t k : keep) kept_total *= dims[k];
    std::size_t traced_total = 1;
    for (std::size_t t : traced) traced_total *= dims[t];

    auto offset = [&](const std::vector<std::size_t>& subs, std::size_t value) {
        std::size_t off = 0;
        for (std::size_t i = subs.size(); i-- > 0;) {
            std::size_t d = dims[subs[i]];
            off += (value % d) * stride[subs[i]];
            value /= d;
        }
        return off;
    };

    CMat out(kept_total, kept_total);
    for (std::size_t ki = 0; ki < kept_total; ++ki) {
        const std::size_t row_base = offset(keep, ki);
        for (std::size_t kj = 0; kj < kept_total; ++kj) {
            const std::size_t col_base = offset(keep, kj);
            cplx sum{};
            for (std::size_t t = 0; t < traced_total; ++t) {
                const std::size_t toff = offset(traced, t);
                sum += m(row_base + toff, col_base + toff);
            }
            out(ki, kj) = sum;
        }
    }
    return out;
}

std::vector<double> jacobi_symmetric(std::vector<double> m, std::size_t n,
                                     std::vector<double>* eigenvectors) {
    if (m.size() != n * n) throw std::invalid_argument("jacobi_symmetric: bad buffer size");

    double fro = 0.0;
    for (double v : m) fro += v * v;
    fro = std::sqrt(fro);
    const double tol = 1e-14 * std::max(1.0, fro);

    if (eigenvectors) {
        eigenvectors->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) (*eigenvectors)[i * n + i] = 1.0;
    }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (off_norm() > tol) {
        if (++sweeps > 100)
            throw ConvergenceError("jacobi_symmetric: no convergence after 100 sweeps");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- G^T A G with G the (p,q) rotation
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m[p * n + k], aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m[k * n + p], akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                if (eigenvectors) {
                    std::vector<double>& v = *eigenvectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p], vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i * n + i];
    return eig;
}

std::vector<double> hermitian_eigenvalues(const CMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: non-square matrix");
    const std::size_t n = m.rows();
    if (hermiticity_defect(m) > 1e-12)
        throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian within 1e-12");

    // symmetrized real embedding [[A,-B],[B,A]] of (m + m^dagger)/2
    std::vector<double> e(4 * n * n, 0.0);
    const std::size_t nn = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
            e[i * nn + j] = h.real();
            e[(n + i) * nn + (n + j)] = h.real();
            e[i * nn + (n + j)] = -h.imag();
            e[(n + i) * nn + j] = h.imag();
        }
    }

    std::vector<double> eig = jacobi_symmetric(std::move(e), nn);
    std::sort(eig.begin(), eig.end());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = eig[2 * i];  // doubled spectrum
    return out;
}

Mat3 Mat3::identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Mat3 mul3(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

Mat3 transpose3(const Mat3& m) {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
    return t;
}

Vec3 mul3v(const Mat3& m, const Vec3& v) {
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r[i] += m(i, j) * v[j];
    return r;
}

double det3(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double det4(const std::array<double, 16>& m) {
    double det = 0.0;
    for (std::size_t col = 0; col < 4; ++col) {
        Mat3 minor;
        for (std::size_t i = 1; i < 4; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                if (j == col) continue;
                minor(i - 1, jj++) = m[i * 4 + j];
            }
        }
        const double sign = (col % 2 == 0) ? 1.0 : -1.0;
        det += sign * m[col] * det3(minor);
    }
    return det;
}

Svd3Result svd3(const Mat3& m) {
    for (double v : m.a)
        if (!std::isfinite(v)) throw std::invalid_argument("svd3: non-finite entry");

    // eigensolve m^T m, sort descending
    const Mat3 normal = mul3(transpose3(m), m);
    std::vector<double> vecs;
    std::vector<double> w = jacobi_symmetric({normal.a.begin(), normal.a.end()}, 3, &vecs);

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

    Svd3Result r;
    r.det_sign = det3(m) < 0.0 ? -1 : 1;

    std::array<Vec3, 3> vcols;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i) vcols[k][i] = vecs[i * 3 + order[k]];
    // force V into SO(3)
    Mat3 vtest;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i) vtest(i, k) = vcols[k][i];
    if (det3(vtest) < 0.0)
        for (std::size_t i = 0; i < 3; ++i) vcols[2][i] = -vcols[2][i];

    auto normalize = [](Vec3& v) {
        const double n = std::sqrt(dot3(v, v));
        if (n > 0.0)
            for (double& x : v) x /= n;
        return n;
    };

    // Singular values are refined from the images m v_k rather than taken
    // as sqrt(eigenvalue): squaring into m^T m floors tiny values at
    // sqrt(eps), which would leave O(1e-8) ghosts on rank-deficient input.
    std::array<Vec3, 3> ucols;
    Vec3 mv1 = mul3v(m, vcols[0]);
    const double s1 = std::sqrt(dot3(mv1, mv1));
    if (s1 == 0.0) {
        // zero matrix: any matched pair of rotations reconstructs it
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 3; ++i) {
                r.u(i, k) = vcols[k][i];
                r.v(i, k) = vcols[k][i];
            }
        r.s = {0.0, 0.0, 0.0};
        return r;
    }
    r.s[0] = s1;
    ucols[0] = mv1;
    normalize(ucols[0]);

    const Vec3 mv2 = mul3v(m, vcols[1]);
    Vec3 res2 = mv2;
    const double along1 = dot3(ucols[0], mv2);
    for (std::size_t i = 0; i < 3; ++i) res2[i] -= along1 * ucols[0][i];
    const double n2 = std::sqrt(dot3(res2, res2));
    if (n2 > s1 * 1e-13) {
        ucols[1] = res2;
        normalize(ucols[1]);
        r.s[1] = n2;
    } else {
        // genuine rank 1: complete with the axis least aligned to u1
        std::size_t axis = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(ucols[0][i]) < std::abs(ucols[0][axis])) axis = i;
        ucols[1] = Vec3{};
        ucols[1][axis] = 1.0;
        const double proj = dot3(ucols[0], ucols[1]);
        for (std::size_t i = 0; i < 3; ++i) ucols[1][i] -= proj * ucols[0][i];
        normalize(ucols[1]);
        r.s[1] = std::abs(dot3(ucols[1], mv2));
    }
    r.s[1] = std::min(r.s[1], r.s[0]);

    ucols[2] = cross3(ucols[0], ucols[1]);  // right-handed => det(U) = +1
    const Vec3 mv3 = mul3v(m, vcols[2]);
    r.s[2] = std::min(std::abs(dot3(ucols[2], mv3)), r.s[1]);

    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i) {
            r.u(i, k) = ucols[k][i];
            r.v(i, k) = vcols[k][i];
        }
    return r;
}

}  // namespace pbdm
