#include "deveq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "deveq/blocktext.hpp"

namespace deveq {

const char* to_string(Subspace tag) {
    switch (tag) {
        case Subspace::stable: return "stable";
        case Subspace::center: return "center";
        case Subspace::unstable: return "unstable";
    }
    return "?";
}

SpectrumSpec make_spectrum(std::vector<double> alphas) {
    if (alphas.empty()) throw ModelError("spectrum: empty eigenvalue list");
    double bound = 0.0;
    for (double a : alphas) {
        if (!std::isfinite(a)) throw ModelError("spectrum: non-finite eigenvalue");
        bound = std::max(bound, std::abs(a));
    }
    if (bound <= 0.0) throw ModelError("spectrum: norm bound must be positive");
    std::sort(alphas.begin(), alphas.end());
    return SpectrumSpec{std::move(alphas), bound};
}

SpectrumSpec harmonic_ladder(int n, double scale) {
    if (n < 1) throw ParameterError("harmonic_ladder: n must be >= 1");
    if (scale <= 0.0) throw ParameterError("harmonic_ladder: scale must be > 0");
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) a[static_cast<std::size_t>(j - 1)] = scale / j;
    return make_spectrum(std::move(a));
}

SpectrumSpec geometric_ladder(int n, double ratio, double top) {
    if (n < 1) throw ParameterError("geometric_ladder: n must be >= 1");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ParameterError("geometric_ladder: ratio must be in (0,1)");
    if (top <= 0.0) throw ParameterError("geometric_ladder: top must be > 0");
    std::vector<double> a(static_cast<std::size_t>(n));
    double v = top;
    for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(j)] = v;
        v *= ratio;
    }
    return make_spectrum(std::move(a));
}

SpectrumSpec with_center_modes(const SpectrumSpec& spec, int n_center) {
    if (n_center < 0) throw ParameterError("with_center_modes: negative count");
    std::vector<double> a = spec.alphas;
    a.insert(a.end(), static_cast<std::size_t>(n_center), 0.0);
    return make_spectrum(std::move(a));
}

std::size_t closest_mode(const SpectrumSpec& spec, double alpha) {
    std::size_t best = 0;
    double best_d = std::abs(spec.alphas[0] - alpha);
    for (std::size_t j = 1; j < spec.dim(); ++j) {
        double d = std::abs(spec.alphas[j] - alpha);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

bool has_modes(const SpectrumSpec& spec, Subspace tag) {
    for (double a : spec.alphas)
        if (in_subspace(a, tag)) return true;
    return false;
}

HVec apply_A(const SpectrumSpec& spec, const HVec& v) {
    require_same_dim(spec.dim(), v.size(), "apply_A");
    HVec w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = spec.alphas[j] * v[j];
    return w;
}

HVec project(const SpectrumSpec& spec, const HVec& v, Subspace tag) {
    require_same_dim(spec.dim(), v.size(), "project");
    HVec w(v.size(), 0.0);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (in_subspace(spec.alphas[j], tag)) w[j] = v[j];
    return w;
}

HVec abs_power(const SpectrumSpec& spec, const HVec& v, double r) {
    require_same_dim(spec.dim(), v.size(), "abs_power");
    if (!(r > 0.0))
        throw ParameterError("abs_power: r must be > 0 (use abs_power_inv for inverses)");
    HVec w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        double a = std::abs(spec.alphas[j]);
        w[j] = (a == 0.0) ? 0.0 : std::pow(a, r) * v[j];
    }
    return w;
}

HVec abs_power_inv(const SpectrumSpec& spec, const HVec& v, double r,
                   double tol_center) {
    require_same_dim(spec.dim(), v.size(), "abs_power_inv");
    if (!(r > 0.0)) throw ParameterError("abs_power_inv: r must be > 0");
    double scale = norm(v);
    HVec w(v.size(), 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        double a = std::abs(spec.alphas[j]);
        if (a == 0.0) {
            if (std::abs(v[j]) > tol_center * scale)
                throw DomainError("abs_power_inv: center coordinate " +
                                  std::to_string(j) +
                                  " nonzero; vector not in Range |A|^r");
            continue;
        }
        w[j] = std::pow(a, -r) * v[j];
    }
    return w;
}

SpectrumSpec parse_spectrum_block(const std::string& block) {
    BlockMap m = parse_block(block);
    std::string kind = block_get(m, "kind");
    SpectrumSpec spec;
    if (kind == "explicit") {
        spec = make_spectrum(parse_double_list(block_get(m, "alphas")));
    } else if (kind == "harmonic") {
        spec = harmonic_ladder(static_cast<int>(block_get_long(m, "n")),
                               block_get_double(m, "scale", 1.0));
    } else if (kind == "geometric") {
        spec = geometric_ladder(static_cast<int>(block_get_long(m, "n")),
                                block_get_double(m, "ratio", 0.5),
                                block_get_double(m, "top", 0.5));
    } else {
        throw ConfigError("spectrum: unknown kind '" + kind + "'");
    }
    long n_center = block_get_long(m, "center", 0);
    if (n_center > 0) spec = with_center_modes(spec, static_cast<int>(n_center));
    return spec;
}

std::string format_spectrum_block(const SpectrumSpec& spec) {
    std::ostringstream os;
    os << "{kind: explicit, alphas: ";
    char buf[40];
    for (std::size_t j = 0; j < spec.dim(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", spec.alphas[j]);
        if (j) os << ",";
        os << buf;
    }
    os << "}";
    return os.str();
}

}  // namespace deveq
