#include "evanslab/expm.hpp"

#include <cmath>

namespace evanslab {

namespace {

// Order eigenvalues: larger real part first, ties by larger imaginary part.
bool prefer_first(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() >= b.imag();
}

// Eigenvector for eigenvalue lam from the better-conditioned row of M - lam I.
ComplexVec2 eigenvector_for(const ComplexMat2& m, const Complex& lam) {
    // (a11-lam) u + a12 v = 0  ->  (a12, lam-a11)
    // a21 u + (a22-lam) v = 0  ->  (lam-a22, a21)
    const ComplexVec2 c1{m.a12, lam - m.a11};
    const ComplexVec2 c2{lam - m.a22, m.a21};
    ComplexVec2 v = (norm2(c1) >= norm2(c2)) ? c1 : c2;
    const double n = norm2(v);
    return {v.u / n, v.v / n};
}

}  // namespace

std::optional<EigenDecomp2> try_eig2(const ComplexMat2& m) {
    const bool diagonal = (m.a12 == Complex{0.0} && m.a21 == Complex{0.0});
    if (diagonal) {
        EigenDecomp2 d;
        if (prefer_first(m.a11, m.a22)) {
            d.lambda1 = m.a11;
            d.lambda2 = m.a22;
            d.V = identity2();
        } else {
            d.lambda1 = m.a22;
            d.lambda2 = m.a11;
            d.V = {Complex{0.0}, Complex{1.0}, Complex{1.0}, Complex{0.0}};
        }
        d.Vinv = d.V;
        return d;
    }

    const Complex mean = 0.5 * (m.a11 + m.a22);
    const Complex half_diff = 0.5 * (m.a11 - m.a22);
    const Complex rad = std::sqrt(half_diff * half_diff + m.a12 * m.a21);
    Complex l1 = mean + rad;
    Complex l2 = mean - rad;
    // The smaller root loses digits to cancellation when the roots are far
    // apart; recover it from the product of the roots.
    if (std::abs(l1) > std::abs(l2)) {
        l2 = det(m) / l1;
    } else if (std::abs(l2) > std::abs(l1)) {
        l1 = det(m) / l2;
    }
    if (!prefer_first(l1, l2)) std::swap(l1, l2);

    if (std::abs(l1 - l2) <= kEigSeparationTol * inf_norm(m)) return std::nullopt;

    const ComplexVec2 v1 = eigenvector_for(m, l1);
    const ComplexVec2 v2 = eigenvector_for(m, l2);
    EigenDecomp2 d;
    d.lambda1 = l1;
    d.lambda2 = l2;
    d.V = {v1.u, v2.u, v1.v, v2.v};
    const Complex dv = det(d.V);
    if (std::abs(dv) == 0.0) return std::nullopt;
    d.Vinv = {d.V.a22 / dv, -d.V.a12 / dv, -d.V.a21 / dv, d.V.a11 / dv};
    return d;
}

EigenDecomp2 eig2(const ComplexMat2& m) {
    auto d = try_eig2(m);
    if (!d) throw NearlyDefective("eig2: eigenvalue separation below tolerance");
    return *d;
}

ComplexMat2 expm_eig(const ComplexMat2& m) {
    const EigenDecomp2 d = eig2(m);
    const Complex e1 = std::exp(d.lambda1);
    const Complex e2 = std::exp(d.lambda2);
    const ComplexMat2 e{e1, Complex{0.0}, Complex{0.0}, e2};
    return d.V * e * d.Vinv;
}

ComplexMat2 expm_pade(const ComplexMat2& m) {
    // Diagonal (6,6) Pade coefficients.
    static constexpr double c[7] = {1.0,
                                    1.0 / 2.0,
                                    5.0 / 44.0,
                                    1.0 / 66.0,
                                    1.0 / 792.0,
                                    1.0 / 15840.0,
                                    1.0 / 665280.0};

    int s = 0;
    double norm = inf_norm(m);
    while (norm > 0.5 && s < 1100) {
        norm *= 0.5;
        ++s;
    }
    const ComplexMat2 a = Complex{std::ldexp(1.0, -s)} * m;

    ComplexMat2 num = identity2();
    ComplexMat2 den = identity2();
    ComplexMat2 power = identity2();
    double sign = 1.0;
    for (int j = 1; j <= 6; ++j) {
        power = power * a;
        sign = -sign;
        num = num + Complex{c[j]} * power;
        den = den + Complex{sign * c[j]} * power;
    }

    ComplexMat2 r = inverse(den) * num;
    for (int j = 0; j < s; ++j) r = r * r;
    return r;
}

}  // namespace evanslab
