// Exact-size complex linear algebra for 2x2 systems.
//
// Everything in this project lives in C^2: solution vectors of the
// first-order spectral ODE, step matrices, and the eigenvector
// transforms between raw and stiff/nonstiff coordinates. The types
// here are plain value types; all operations are pure.

#pragma once

#include <cmath>
#include <complex>

namespace evanslab {

using Complex = std::complex<double>;

struct ComplexVec2 {
    Complex u{0.0, 0.0};
    Complex v{0.0, 0.0};
};

struct ComplexMat2 {
    Complex a11{0.0, 0.0}, a12{0.0, 0.0};
    Complex a21{0.0, 0.0}, a22{0.0, 0.0};
};

inline ComplexVec2 operator+(const ComplexVec2& a, const ComplexVec2& b) {
    return {a.u + b.u, a.v + b.v};
}

inline ComplexVec2 operator-(const ComplexVec2& a, const ComplexVec2& b) {
    return {a.u - b.u, a.v - b.v};
}

inline ComplexVec2 operator*(const Complex& s, const ComplexVec2& a) {
    return {s * a.u, s * a.v};
}

inline ComplexMat2 operator+(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
}

inline ComplexMat2 operator-(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
}

inline ComplexMat2 operator*(const Complex& s, const ComplexMat2& x) {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
}

inline ComplexMat2 operator*(const ComplexMat2& x, const ComplexMat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

inline ComplexVec2 operator*(const ComplexMat2& x, const ComplexVec2& a) {
    return {x.a11 * a.u + x.a12 * a.v, x.a21 * a.u + x.a22 * a.v};
}

inline ComplexMat2 identity2() {
    return {Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};
}

/// Matrix commutator XY - YX.
inline ComplexMat2 commutator(const ComplexMat2& x, const ComplexMat2& y) {
    return x * y - y * x;
}

/// Determinant pairing of two solution vectors, a_u b_v - a_v b_u.
/// The Evans function is assembled from exactly this quantity.
inline Complex wedge(const ComplexVec2& a, const ComplexVec2& b) {
    return a.u * b.v - a.v * b.u;
}

inline Complex det(const ComplexMat2& x) {
    return x.a11 * x.a22 - x.a12 * x.a21;
}

inline Complex trace(const ComplexMat2& x) { return x.a11 + x.a22; }

/// Row-sum norm.
inline double inf_norm(const ComplexMat2& x) {
    return std::max(std::abs(x.a11) + std::abs(x.a12),
                    std::abs(x.a21) + std::abs(x.a22));
}

inline double inf_norm(const ComplexVec2& a) {
    return std::max(std::abs(a.u), std::abs(a.v));
}

inline double norm2(const ComplexVec2& a) {
    return std::hypot(std::abs(a.u), std::abs(a.v));
}

/// Inverse by the adjugate; the caller is responsible for det != 0.
inline ComplexMat2 inverse(const ComplexMat2& x) {
    const Complex d = det(x);
    return {x.a22 / d, -x.a12 / d, -x.a21 / d, x.a11 / d};
}

}  // namespace evanslab
