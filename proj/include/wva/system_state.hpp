#pragma once

#include <vector>

#include "wva/pointer.hpp"

namespace wva {

/// Dense n-qubit amplitude vector over the computational basis.
/// GHZ-family states only populate |0...0> and |1...1>, but the storage is
/// deliberately dense so the brute-force oracle stays brute-force.
struct SystemState {
    int n = 0;
    std::vector<Complex> amps;  // size 2^n

    std::size_t dim() const { return amps.size(); }
};

/// <a|b>
Complex inner(const SystemState& a, const SystemState& b);

/// A = sum_k sigma_z^(k) applied in the computational basis
/// (eigenvalue n - 2*popcount per basis state).
SystemState apply_collective_sigma_z(const SystemState& s);

/// The five GHZ-family states of one scenario.
struct GhzStates {
    SystemState psi_i;       // (|0..0> + |1..1>)/sqrt2
    SystemState psi_f;       // (e^{-i n phi}|0..0> - e^{i n phi}|1..1>)/sqrt2
    SystemState psi_f_orth;  // (e^{-i n phi}|0..0> + e^{i n phi}|1..1>)/sqrt2
    SystemState psi_plus;    // == psi_i
    SystemState psi_minus;   // (|0..0> - |1..1>)/sqrt2
};

/// Builds the prepared/postselected state family.  Dense 2^n storage; capped
/// at n <= 20 (the closed-form engine never calls this, only oracle paths do).
GhzStates ghz_states(int n, double phi);

/// A_w = <psi_f|A|psi_i> / <psi_f|psi_i> = -i n cot(n phi); purely imaginary.
/// Throws SingularityError when n*phi is a multiple of pi.
Complex weak_value(int n, double phi);

}  // namespace wva
