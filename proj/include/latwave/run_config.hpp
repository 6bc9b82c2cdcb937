#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "latwave/contour.hpp"
#include "latwave/geometry.hpp"
#include "latwave/modes.hpp"
#include "latwave/scattering.hpp"

namespace latwave {

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

/// One run description: geometry, frequency (single or sweep), incident mode,
/// window/probe sizes, method selection and quadrature policy.
struct RunConfig {
    WaveguideGeometry geometry{0, 9, 10, 19};
    double omega = 1.5;
    std::optional<SweepSpec> sweep;
    double contour_eps = 1e-8;  ///< imaginary frequency part used on contours
    int p = 1;
    int m_extent = 30;
    int m_r = 40;
    std::string method = "both";  // wh | bae | both
    QuadratureOptions quad;
    int jobs = 1;
    std::string out_dir = ".";

    LatticeFrequency frequency_at(double om) const { return {om, contour_eps}; }

    /// Full admissibility check; throws ConfigError with the violated rule.
    void validate() const;
};

/// Parses a flat `key = value` file (one key per line, '#' comments).
RunConfig parse_config_file(const std::string& path);
/// Applies a single key/value pair; throws ConfigError on unknown keys.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);
/// Parses "A:B:K" into a sweep.
SweepSpec parse_sweep(const std::string& text);

/// Shortest decimal string at 17 significant digits (round-trip exact).
std::string format_float(double v);

void write_field_csv(std::ostream& os, const ComplexField& scattered, const ComplexField& total);
void write_coefficients_csv(std::ostream& os, const ScatteringCoefficients& c);
void write_sweep_header(std::ostream& os);
void write_sweep_rows(std::ostream& os, double omega, const ScatteringCoefficients& c);
/// Plain-text gnuplot script that redraws the coefficient curves from a sweep CSV.
void write_plot_script(std::ostream& os, const std::string& csv_name, int p);

/// Whether a sweep point is admissible (not within `tol` of a cut-off or of
/// the degenerate frequencies, and with mode p propagating).
bool sweep_point_admissible(double omega, int p, const WaveguideGeometry& g, double tol = 1e-6);

}  // namespace latwave
