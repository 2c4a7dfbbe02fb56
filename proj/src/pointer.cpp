#include "wva/pointer.hpp"

#include <cmath>

#include "wva/errors.hpp"

namespace wva {

namespace {
constexpr Complex kI{0.0, 1.0};
}

PointerOperator operator+(const PointerOperator& a, const PointerOperator& b) {
    return {{a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]}};
}

PointerOperator operator-(const PointerOperator& a, const PointerOperator& b) {
    return {{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
}

PointerOperator operator*(const PointerOperator& a, const PointerOperator& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

PointerOperator operator*(Complex s, const PointerOperator& a) {
    return {{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
}

PointerOperator pointer_identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

PointerOperator sigma_y() { return {{0.0, -kI, kI, 0.0}}; }

PointerOperator sigma_r() { return {{0.0, -kI, kI, 0.0}}; }

PointerState ket_r() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, kI * s};
}

PointerState ket_l() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, -kI * s};
}

PointerOperator sigma_y_function(Complex f_plus, Complex f_minus) {
    const Complex avg = 0.5 * (f_plus + f_minus);
    const Complex half_diff = 0.5 * (f_plus - f_minus);
    return {{avg, -kI * half_diff, kI * half_diff, avg}};
}

PointerState branches_applied_to_zero(Complex f_plus, Complex f_minus) {
    return {0.5 * (f_plus + f_minus), 0.5 * kI * (f_plus - f_minus)};
}

double normalized_expectation(const PointerOperator& op, const PointerState& s) {
    const double n2 = s.norm2();
    if (n2 == 0.0) throw SingularityError("expectation of a zero pointer state is undefined");
    return inner(s, op.apply(s)).real() / n2;
}

}  // namespace wva
