#include "wva/system_state.hpp"

#include <bit>
#include <cmath>

#include "wva/errors.hpp"

namespace wva {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr int kGhzDenseCap = 20;  // 2^20 amplitudes per state; oracle paths stay far below
}  // namespace

Complex inner(const SystemState& a, const SystemState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("system state dimension mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

SystemState apply_collective_sigma_z(const SystemState& s) {
    SystemState out = s;
    for (std::size_t i = 0; i < out.dim(); ++i) {
        const int a = s.n - 2 * std::popcount(i);
        out.amps[i] *= static_cast<double>(a);
    }
    return out;
}

GhzStates ghz_states(int n, double phi) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (n > kGhzDenseCap) throw CapacityError("dense GHZ representation capped at n <= 20");
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t top = dim - 1;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex e_minus = std::exp(-kI * (n * phi));
    const Complex e_plus = std::exp(kI * (n * phi));

    auto blank = [&] {
        SystemState s;
        s.n = n;
        s.amps.assign(dim, Complex{});
        return s;
    };

    GhzStates states{blank(), blank(), blank(), blank(), blank()};
    states.psi_i.amps[0] = inv_sqrt2;
    states.psi_i.amps[top] = inv_sqrt2;
    states.psi_f.amps[0] = e_minus * inv_sqrt2;
    states.psi_f.amps[top] = -e_plus * inv_sqrt2;
    states.psi_f_orth.amps[0] = e_minus * inv_sqrt2;
    states.psi_f_orth.amps[top] = e_plus * inv_sqrt2;
    states.psi_plus = states.psi_i;
    states.psi_minus.amps[0] = inv_sqrt2;
    states.psi_minus.amps[top] = -inv_sqrt2;
    return states;
}

Complex weak_value(int n, double phi) {
    if (n < 1) throw ConfigError("n must be >= 1");
    const double s = std::sin(n * phi);
    if (std::abs(s) < 1e-12)
        throw SingularityError("weak value singular: n*phi is a multiple of pi");
    return -kI * (static_cast<double>(n) * std::cos(n * phi) / s);
}

}  // namespace wva
