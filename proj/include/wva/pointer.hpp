#pragma once

#include <array>
#include <complex>

namespace wva {

using Complex = std::complex<double>;

/// Two-level meter amplitude pair on the |0>_p, |1>_p basis.
/// Generally sub-normalized: norm2() is the photon fraction in the branch.
struct PointerState {
    Complex c0{};
    Complex c1{};

    double norm2() const { return std::norm(c0) + std::norm(c1); }
};

inline PointerState operator+(const PointerState& a, const PointerState& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
}
inline PointerState operator-(const PointerState& a, const PointerState& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
}
inline PointerState operator*(Complex s, const PointerState& a) { return {s * a.c0, s * a.c1}; }
inline PointerState operator*(double s, const PointerState& a) { return {s * a.c0, s * a.c1}; }

/// <a|b>
inline Complex inner(const PointerState& a, const PointerState& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

/// 2x2 complex matrix acting on the pointer, row-major.
struct PointerOperator {
    std::array<Complex, 4> m{};  // [ (0,0), (0,1), (1,0), (1,1) ]

    PointerState apply(const PointerState& s) const {
        return {m[0] * s.c0 + m[1] * s.c1, m[2] * s.c0 + m[3] * s.c1};
    }

    PointerOperator adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
};

PointerOperator operator+(const PointerOperator& a, const PointerOperator& b);
PointerOperator operator-(const PointerOperator& a, const PointerOperator& b);
PointerOperator operator*(const PointerOperator& a, const PointerOperator& b);
PointerOperator operator*(Complex s, const PointerOperator& a);

PointerOperator pointer_identity();

/// Coupling generator sigma_y = [[0, -i], [i, 0]].
PointerOperator sigma_y();

/// Readout observable sigma_R; same matrix as sigma_y but a different role
/// (it is measured, not exponentiated).
PointerOperator sigma_r();

/// Eigenkets of sigma_y / sigma_R: |R> = (|0> + i|1>)/sqrt2 (+1), |L> = (|0> - i|1>)/sqrt2 (-1).
PointerState ket_r();
PointerState ket_l();

/// f(sigma_y) from its values on the +1 / -1 eigenbranches.
PointerOperator sigma_y_function(Complex f_plus, Complex f_minus);

/// f(sigma_y)|0>_p: c0 = (f+ + f-)/2, c1 = i(f+ - f-)/2.
PointerState branches_applied_to_zero(Complex f_plus, Complex f_minus);

/// <s|op|s> / <s|s>; throws SingularityError on a zero state.
double normalized_expectation(const PointerOperator& op, const PointerState& s);

}  // namespace wva
