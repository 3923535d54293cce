// numlin.hpp — Minimal dense complex linear algebra: matrix arithmetic,
// matrix exponential, norms and trapezoid quadrature. Everything here is a
// pure function of its inputs; values are safe to share across threads.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ttmjc::numlin {

using Complex = std::complex<double>;

/// Dense complex square matrix, row-major storage.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim);
    static CMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * dim_ + j];
    }

    std::span<const Complex> entries() const { return a_; }

    /// True when every entry is finite (no NaN/Inf in either component).
    bool finite() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex s);

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex s, CMatrix m);
CMatrix operator*(double s, CMatrix m);
std::vector<Complex> operator*(const CMatrix& m, const std::vector<Complex>& v);

CMatrix transpose(const CMatrix& m);
CMatrix conjugate(const CMatrix& m);
CMatrix dagger(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);
Complex trace(const CMatrix& m);

/// Non-negative integer matrix power by repeated squaring.
CMatrix pow(const CMatrix& m, int n);

/// Frobenius norm, sqrt(sum |a_ij|^2). Zero iff the matrix is zero.
double frobenius(const CMatrix& m);

/// Maximum absolute column sum (used to pick the expm scaling).
double norm1(const CMatrix& m);

/// Solves A X = B by LU with partial pivoting. Throws std::invalid_argument
/// on dimension mismatch or a singular pivot.
CMatrix lu_solve(CMatrix a, const CMatrix& b);

CMatrix inverse(const CMatrix& m);

/// e^{L t} by scaling and squaring with a diagonal [13/13] Pade approximant.
/// Relative accuracy is ~1e-13 in the Frobenius norm for ||L t|| up to ~50,
/// which covers every generator handled here (dim <= 9). Throws
/// std::invalid_argument for non-finite input.
CMatrix expm(const CMatrix& l, double t);

/// Discrete convolution integral on a homogeneous lattice: entry n holds the
/// trapezoid-rule value of  int_0^{t_n} kernel(t_n - s) f(s) ds.  Both
/// samplings must share the lattice (same length >= 2, spacing dt). O(dt^2)
/// accurate for smooth integrands.
std::vector<Complex> convolve_trapezoid(std::span<const Complex> kernel,
                                        std::span<const Complex> f, double dt);
std::vector<double> convolve_trapezoid(std::span<const double> kernel,
                                       std::span<const double> f, double dt);

} // namespace ttmjc::numlin
