#include "evanslab/steppers.hpp"

#include <cmath>

namespace evanslab {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kNodeLo = 0.5 - kSqrt3 / 6.0;  // c1
constexpr double kNodeHi = 0.5 + kSqrt3 / 6.0;  // c2

}  // namespace

const char* to_string(StepperKind k) {
    switch (k) {
        case StepperKind::Magnus4: return "magnus4";
        case StepperKind::ExpMidpoint: return "expmid";
        case StepperKind::GaussLegendre4: return "gl4";
    }
    return "?";
}

const char* to_string(ExpmBackend b) {
    return b == ExpmBackend::Eig ? "eig" : "pade";
}

MagnusCoeffs magnus_coeffs(const WaveProblem& p, Side side, double xi_k, double h) {
    const double lim = (side == Side::Minus) ? p.phi_minus_limit : p.phi_plus_limit;
    const double f1 = p.phi(xi_k + kNodeLo * h) - lim;
    const double f2 = p.phi(xi_k + kNodeHi * h) - lim;
    return {0.5 * (f1 + f2), -(kSqrt3 / 12.0) * h * (f1 - f2)};
}

ComplexMat2 magnus4_omega(const MatrixFn& a, double xi_k, double h) {
    const ComplexMat2 a1 = a(xi_k + kNodeLo * h);
    const ComplexMat2 a2 = a(xi_k + kNodeHi * h);
    return Complex{0.5 * h} * (a1 + a2) -
           Complex{kSqrt3 / 12.0 * h * h} * commutator(a1, a2);
}

ComplexMat2 expm_backend(const ComplexMat2& m, ExpmBackend backend, long* fallback_count) {
    if (backend == ExpmBackend::Eig) {
        if (auto d = try_eig2(m)) {
            const ComplexMat2 e{std::exp(d->lambda1), Complex{0.0}, Complex{0.0},
                                std::exp(d->lambda2)};
            return d->V * e * d->Vinv;
        }
        if (fallback_count) ++(*fallback_count);
    }
    return expm_pade(m);
}

ComplexVec2 magnus4_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k,
                         ExpmBackend backend, long* fallback_count) {
    return expm_backend(magnus4_omega(a, xi_k, h), backend, fallback_count) * y_k;
}

ComplexVec2 expmid_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k,
                        ExpmBackend backend, long* fallback_count) {
    const ComplexMat2 omega = Complex{h} * a(xi_k + 0.5 * h);
    return expm_backend(omega, backend, fallback_count) * y_k;
}

ComplexVec2 gl4_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k) {
    // Butcher coefficients of the two-stage Gauss-Legendre method.
    constexpr double a11 = 0.25;
    constexpr double a12 = 0.25 - kSqrt3 / 6.0;
    constexpr double a21 = 0.25 + kSqrt3 / 6.0;
    constexpr double a22 = 0.25;

    const ComplexMat2 m1 = a(xi_k + kNodeLo * h);
    const ComplexMat2 m2 = a(xi_k + kNodeHi * h);

    // Stage system: (I - h a11 M1) s1 - h a12 M1 s2 = M1 y
    //               -h a21 M2 s1 + (I - h a22 M2) s2 = M2 y
    Complex sys[4][5];
    auto put_block = [&](int r0, int c0, const ComplexMat2& m, double scale, bool add_identity) {
        sys[r0][c0] = -h * scale * m.a11 + (add_identity ? 1.0 : 0.0);
        sys[r0][c0 + 1] = -h * scale * m.a12;
        sys[r0 + 1][c0] = -h * scale * m.a21;
        sys[r0 + 1][c0 + 1] = -h * scale * m.a22 + (add_identity ? 1.0 : 0.0);
    };
    put_block(0, 0, m1, a11, true);
    put_block(0, 2, m1, a12, false);
    put_block(2, 0, m2, a21, false);
    put_block(2, 2, m2, a22, true);
    const ComplexVec2 r1 = m1 * y_k;
    const ComplexVec2 r2 = m2 * y_k;
    sys[0][4] = r1.u;
    sys[1][4] = r1.v;
    sys[2][4] = r2.u;
    sys[3][4] = r2.v;

    double sys_norm = 0.0;
    for (int i = 0; i < 4; ++i) {
        double row = 0.0;
        for (int j = 0; j < 4; ++j) row += std::abs(sys[i][j]);
        sys_norm = std::max(sys_norm, row);
    }

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int i = col + 1; i < 4; ++i)
            if (std::abs(sys[i][col]) > std::abs(sys[piv][col])) piv = i;
        if (piv != col)
            for (int j = col; j < 5; ++j) std::swap(sys[col][j], sys[piv][j]);
        if (std::abs(sys[col][col]) <= 1e-12 * sys_norm)
            throw SingularStageSystem("gl4_step: stage system is numerically singular");
        for (int i = col + 1; i < 4; ++i) {
            const Complex f = sys[i][col] / sys[col][col];
            for (int j = col; j < 5; ++j) sys[i][j] -= f * sys[col][j];
        }
    }
    Complex s[4];
    for (int i = 3; i >= 0; --i) {
        Complex acc = sys[i][4];
        for (int j = i + 1; j < 4; ++j) acc -= sys[i][j] * s[j];
        s[i] = acc / sys[i][i];
    }

    return {y_k.u + 0.5 * h * (s[0] + s[2]), y_k.v + 0.5 * h * (s[1] + s[3])};
}

}  // namespace evanslab
