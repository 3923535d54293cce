#include "ttmjc/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttmjc::numlin {

CMatrix::CMatrix(int dim) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("CMatrix: negative dimension");
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool CMatrix::finite() const {
    for (const Complex& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.dim() != b.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_dim(*this, other, "CMatrix::operator+=");
    for (std::size_t n = 0; n < a_.size(); ++n) a_[n] += other.a_[n];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_dim(*this, other, "CMatrix::operator-=");
    for (std::size_t n = 0; n < a_.size(); ++n) a_[n] -= other.a_[n];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (Complex& z : a_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    require_same_dim(lhs, rhs, "CMatrix::operator*");
    const int n = lhs.dim();
    CMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex f = lhs(i, k);
            if (f == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += f * rhs(k, j);
        }
    return out;
}

CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
CMatrix operator*(double s, CMatrix m) { return m *= Complex(s, 0.0); }

std::vector<Complex> operator*(const CMatrix& m, const std::vector<Complex>& v) {
    const int n = m.dim();
    if (v.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("CMatrix * vector: dimension mismatch");
    std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
    return out;
}

CMatrix transpose(const CMatrix& m) {
    CMatrix out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(j, i) = m(i, j);
    return out;
}

CMatrix conjugate(const CMatrix& m) {
    CMatrix out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(i, j) = std::conj(m(i, j));
    return out;
}

CMatrix dagger(const CMatrix& m) { return conjugate(transpose(m)); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    CMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Complex f = a(i, j);
            if (f == Complex(0.0, 0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = f * b(k, l);
        }
    return out;
}

Complex trace(const CMatrix& m) {
    Complex t(0.0, 0.0);
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

CMatrix pow(const CMatrix& m, int n) {
    if (n < 0) throw std::invalid_argument("pow: negative exponent");
    CMatrix result = CMatrix::identity(m.dim());
    CMatrix base = m;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

double frobenius(const CMatrix& m) {
    if (!m.finite()) throw std::invalid_argument("frobenius: non-finite entries");
    double sum = 0.0;
    for (const Complex& z : m.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

double norm1(const CMatrix& m) {
    double best = 0.0;
    for (int j = 0; j < m.dim(); ++j) {
        double col = 0.0;
        for (int i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

CMatrix lu_solve(CMatrix a, const CMatrix& b) {
    require_same_dim(a, b, "lu_solve");
    const int n = a.dim();
    CMatrix x = b;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a(col, col));
        for (int row = col + 1; row < n; ++row) {
            const double cand = std::abs(a(row, col));
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best == 0.0) throw std::invalid_argument("lu_solve: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(x(col, j), x(pivot, j));
            }
        }
        for (int row = col + 1; row < n; ++row) {
            const Complex factor = a(row, col) / a(col, col);
            if (factor == Complex(0.0, 0.0)) continue;
            for (int j = col; j < n; ++j) a(row, j) -= factor * a(col, j);
            for (int j = 0; j < n; ++j) x(row, j) -= factor * x(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        for (int j = 0; j < n; ++j) {
            Complex acc = x(col, j);
            for (int k = col + 1; k < n; ++k) acc -= a(col, k) * x(k, j);
            x(col, j) = acc / a(col, col);
        }
    }
    return x;
}

CMatrix inverse(const CMatrix& m) { return lu_solve(m, CMatrix::identity(m.dim())); }

namespace {

// Coefficients of the degree-13 diagonal Pade approximant to e^x.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which the unscaled [13/13] approximant stays at unit
// roundoff (Higham's theta_13).
constexpr double kTheta13 = 5.371920351148152;

} // namespace

CMatrix expm(const CMatrix& l, double t) {
    if (!l.finite() || !std::isfinite(t)) throw std::invalid_argument("expm: non-finite input");
    const int n = l.dim();
    CMatrix a = Complex(t, 0.0) * l;

    int squarings = 0;
    const double nrm = norm1(a);
    if (nrm > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
        a *= Complex(std::ldexp(1.0, -squarings), 0.0);
    }

    const CMatrix ident = CMatrix::identity(n);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a2 * a4;

    CMatrix u = a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                     kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * ident);
    CMatrix v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) + kPade13[6] * a6 +
                kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * ident;

    CMatrix r = lu_solve(v - u, v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

namespace {

template <typename T>
std::vector<T> convolve_impl(std::span<const T> kernel, std::span<const T> f, double dt) {
    if (kernel.size() != f.size())
        throw std::invalid_argument("convolve_trapezoid: mismatched lengths");
    if (kernel.size() < 2) throw std::invalid_argument("convolve_trapezoid: need >= 2 samples");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("convolve_trapezoid: dt must be positive and finite");

    const std::size_t n = kernel.size();
    std::vector<T> out(n, T{});
    for (std::size_t k = 1; k < n; ++k) {
        T acc = 0.5 * (kernel[k] * f[0] + kernel[0] * f[k]);
        for (std::size_t j = 1; j < k; ++j) acc += kernel[k - j] * f[j];
        out[k] = dt * acc;
    }
    return out;
}

} // namespace

std::vector<Complex> convolve_trapezoid(std::span<const Complex> kernel, std::span<const Complex> f,
                                        double dt) {
    return convolve_impl(kernel, f, dt);
}

std::vector<double> convolve_trapezoid(std::span<const double> kernel, std::span<const double> f,
                                       double dt) {
    return convolve_impl(kernel, f, dt);
}

} // namespace ttmjc::numlin
