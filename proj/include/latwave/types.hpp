#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace latwave {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Top of the pass band: lattice waves exist only for frequencies in (0, 2*sqrt(2)).
inline constexpr double omega_band_top = 2.0 * std::numbers::sqrt2;

inline constexpr cplx iunit{0.0, 1.0};

/// Invalid run parameters (geometry, frequency, CLI config). Exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate or resonant configuration detected at solve time. Exit code 3.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// Contour quadrature failed to reach tolerance within the doubling cap. Exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved) + ")"),
          achieved_tol(achieved) {}
    double achieved_tol;
};

/// Integer power by squaring; exponent may be negative (requires base != 0).
inline cplx ipow(cplx base, long long e) {
    if (e < 0) {
        base = 1.0 / base;
        e = -e;
    }
    cplx r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace latwave
