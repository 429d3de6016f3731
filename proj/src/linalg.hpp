#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Dense complex/real matrix kernel for operators of dimension <= 12.
// Everything here is a pure function of its inputs; all values are
// immutable after construction and safe to share between threads.

namespace pbdm {

using cplx = std::complex<double>;

/// Thrown when an iterative solver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major storage.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}
    /// Constructs from explicit entries; rejects size mismatch and
    /// non-finite values.
    CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cplx s, const CMat& a);
CMat operator*(double s, const CMat& a);
CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);

CMat adjoint(const CMat& a);
cplx trace(const CMat& a);

/// Largest entry magnitude; 0 for an empty matrix.
double max_abs(const CMat& a);

/// Largest entry of |a - a^dagger|.
double hermiticity_defect(const CMat& a);

/// Kronecker product, block structure a_ij * b.
CMat kron(const CMat& a, const CMat& b);

/// Outer product |u><v|.
CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

/// Partial transpose of the second qubit of a 4x4 two-qubit operator:
/// out(m mu, n nu) = in(m nu, n mu). Involutive and trace preserving.
CMat partial_transpose_b(const CMat& rho);

/// Partial trace of an operator over the subsystems NOT listed in `keep`.
/// `dims` are the subsystem dimensions in tensor order (their product must
/// equal the operator dimension); `keep` is a strictly increasing list of
/// subsystem indices to retain.
CMat partial_trace(const CMat& m, const std::vector<std::size_t>& dims,
                   const std::vector<std::size_t>& keep);

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
/// `m` is n x n row-major; returns the eigenvalues unsorted (the final
/// diagonal). If `eigenvectors` is non-null it receives the accumulated
/// rotation, column k being the eigenvector of the k-th returned value.
/// Convergence: off-diagonal Frobenius norm below 1e-14 (relative to the
/// input norm for badly scaled inputs), at most 100 sweeps.
std::vector<double> jacobi_symmetric(std::vector<double> m, std::size_t n,
                                     std::vector<double>* eigenvectors = nullptr);

/// Eigenvalues of a Hermitian matrix, ascending. The input must be
/// Hermitian within 1e-12 (max entry of m - m^dagger); it is symmetrized
/// and eigensolved through the real 2n x 2n embedding [[A,-B],[B,A]] of
/// m = A + iB, whose spectrum is that of m with every value doubled.
std::vector<double> hermitian_eigenvalues(const CMat& m);

/// 3x3 real matrix, row-major.
struct Mat3 {
    std::array<double, 9> a{};

    double& operator()(std::size_t i, std::size_t j) { return a[i * 3 + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return a[i * 3 + j]; }

    static Mat3 identity();
};

using Vec3 = std::array<double, 3>;

Mat3 mul3(const Mat3& a, const Mat3& b);
Mat3 transpose3(const Mat3& m);
Vec3 mul3v(const Mat3& m, const Vec3& v);
double det3(const Mat3& m);
double dot3(const Vec3& a, const Vec3& b);
Vec3 cross3(const Vec3& a, const Vec3& b);

/// Determinant of a 4x4 real matrix (cofactor expansion).
double det4(const std::array<double, 16>& m);

struct Svd3Result {
    Mat3 u;                    // proper rotation
    std::array<double, 3> s;   // singular values, descending, >= 0
    Mat3 v;                    // proper rotation
    int det_sign;              // sign of det(m); +1 when det(m) == 0
};

/// SVD of a real 3x3 matrix with both factors constrained to proper
/// rotations: m = u * diag(s1, s2, det_sign * s3) * v^T. Computed from a
/// Jacobi eigensolve of m^T m; a reflection, if present, is folded into
/// the sign of the third singular direction so that u and v stay in
/// SO(3) and can be lifted to SU(2) later.
Svd3Result svd3(const Mat3& m);

}  // namespace pbdm
