#pragma once

#include <string>
#include <vector>

#include "deveq/hvec.hpp"

namespace deveq {

// Finite discretization of the spectral measure of the bounded self-adjoint
// operator A: N point atoms with unit weight, so every spectral integral in
// the calculus below is an exact finite sum. Eigenvalues are kept sorted
// ascending; zeros (center modes) and negatives (unstable modes) permitted.
struct SpectrumSpec {
    std::vector<double> alphas;
    double norm_bound = 0.0;

    std::size_t dim() const { return alphas.size(); }
};

enum class Subspace { stable, center, unstable };

const char* to_string(Subspace tag);

// Sorts, validates, and computes norm_bound = max |alpha| (must be > 0).
SpectrumSpec make_spectrum(std::vector<double> alphas);

// alpha_j = scale / j, j = 1..n (sorted ascending on return).
SpectrumSpec harmonic_ladder(int n, double scale = 1.0);

// alpha_j = top * ratio^(j-1), j = 1..n, ratio in (0,1).
SpectrumSpec geometric_ladder(int n, double ratio = 0.5, double top = 0.5);

// Appends n_center zero eigenvalues to an existing spectrum.
SpectrumSpec with_center_modes(const SpectrumSpec& spec, int n_center);

// Index of the eigenvalue closest to alpha (ties to the lower index).
std::size_t closest_mode(const SpectrumSpec& spec, double alpha);

// Membership of a single eigenvalue in a spectral subspace.
inline bool in_subspace(double alpha, Subspace tag) {
    switch (tag) {
        case Subspace::stable: return alpha > 0.0;
        case Subspace::center: return alpha == 0.0;
        case Subspace::unstable: return alpha < 0.0;
    }
    return false;
}

bool has_modes(const SpectrumSpec& spec, Subspace tag);

// (Av)_j = alpha_j v_j
HVec apply_A(const SpectrumSpec& spec, const HVec& v);

// Zeroes every coordinate whose eigenvalue is outside the tagged set.
HVec project(const SpectrumSpec& spec, const HVec& v, Subspace tag);

// |A|^r v, r > 0; center coordinates map to 0 (convention 0^r = 0).
HVec abs_power(const SpectrumSpec& spec, const HVec& v, double r);

// |A|^{-r} v, r > 0, defined on vectors supported off the center subspace.
// A center coordinate of v larger than tol_center * |v| is a domain error:
// the vector is not in Range |A|^r.
HVec abs_power_inv(const SpectrumSpec& spec, const HVec& v, double r,
                   double tol_center = 1e-10);

// Plain-text config block: spectrum = {kind: harmonic, n: 64, scale: 1}
//   kinds: explicit (alphas: comma-separated decimals), harmonic (n, scale),
//          geometric (n, ratio, top). Optional center: <count> appends zeros.
SpectrumSpec parse_spectrum_block(const std::string& block);
std::string format_spectrum_block(const SpectrumSpec& spec);

}  // namespace deveq
