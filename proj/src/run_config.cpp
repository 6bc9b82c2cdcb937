#include "latwave/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latwave {

void RunConfig::validate() const {
    geometry.validate();
    if (p < 1 || p > geometry.N() - 1)
        throw ConfigError("config: incident mode p must satisfy 1 <= p <= N-1");
    if (m_r < 1) throw ConfigError("config: m_r must be >= 1");
    if (m_extent < 1) throw ConfigError("config: m extent must be >= 1");
    if (contour_eps < 0.0) throw ConfigError("config: eps must be non-negative");
    if (method != "wh" && method != "bae" && method != "both")
        throw ConfigError("config: method must be one of wh | bae | both");
    if (quad.initial_nodes < 8 || quad.tol <= 0.0 || quad.max_doublings < 0)
        throw ConfigError("config: bad quadrature options");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
    if (sweep) {
        if (sweep->count < 1) throw ConfigError("config: sweep count must be >= 1");
        const double lo = mode_cutoff(p, geometry.N());
        if (sweep->start <= lo || sweep->stop >= omega_band_top || sweep->start >= sweep->stop)
            throw ConfigError("config: sweep range must lie inside (cutoff_p, 2*sqrt(2))");
    } else {
        validate_frequency(LatticeFrequency{omega, 0.0}, geometry);
    }
}

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec s;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> s.start >> colon1 >> s.stop >> colon2 >> s.count) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof())
        throw ConfigError("config: sweep must have the form START:STOP:COUNT");
    return s;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_int = [&](const std::string& v) {
        size_t pos = 0;
        const int r = std::stoi(v, &pos);
        if (pos != v.size()) throw ConfigError("config: bad integer for key '" + key + "'");
        return r;
    };
    auto as_double = [&](const std::string& v) {
        size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError("config: bad number for key '" + key + "'");
        return r;
    };
    if (key == "n1")
        cfg.geometry.n1 = as_int(value);
    else if (key == "n2")
        cfg.geometry.n2 = as_int(value);
    else if (key == "N1")
        cfg.geometry.N1 = as_int(value);
    else if (key == "N2")
        cfg.geometry.N2 = as_int(value);
    else if (key == "omega")
        cfg.omega = as_double(value);
    else if (key == "sweep")
        cfg.sweep = parse_sweep(value);
    else if (key == "eps")
        cfg.contour_eps = as_double(value);
    else if (key == "p")
        cfg.p = as_int(value);
    else if (key == "m_extent")
        cfg.m_extent = as_int(value);
    else if (key == "m_r")
        cfg.m_r = as_int(value);
    else if (key == "method")
        cfg.method = value;
    else if (key == "quad_initial_nodes")
        cfg.quad.initial_nodes = as_int(value);
    else if (key == "quad_tol")
        cfg.quad.tol = as_double(value);
    else if (key == "quad_max_doublings")
        cfg.quad.max_doublings = as_int(value);
    else if (key == "jobs")
        cfg.jobs = as_int(value);
    else if (key == "out_dir")
        cfg.out_dir = value;
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        apply_key(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return cfg;
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(std::ostream& os, const ComplexField& scattered, const ComplexField& total) {
    const FieldWindow& w = scattered.window();
    os << "m,n,re_sc,im_sc,re_tot,im_tot\n";
    for (int m = w.m_min; m <= w.m_max; ++m) {
        for (int n = w.n_min; n <= w.n_max; ++n) {
            const cplx sc = scattered.at(m, n);
            const cplx tot = total.at(m, n);
            os << m << ',' << n << ',' << format_float(sc.real()) << ',' << format_float(sc.imag())
               << ',' << format_float(tot.real()) << ',' << format_float(tot.imag()) << '\n';
        }
    }
}

void write_coefficients_csv(std::ostream& os, const ScatteringCoefficients& c) {
    os << "q,re_R,im_R,re_T,im_T,abs_R_weighted,abs_T_weighted,v_q\n";
    for (const auto& e : c.modes) {
        os << e.q << ',' << format_float(e.R.real()) << ',' << format_float(e.R.imag()) << ','
           << format_float(e.T.real()) << ',' << format_float(e.T.imag()) << ','
           << format_float(e.weighted_R) << ',' << format_float(e.weighted_T) << ','
           << format_float(e.group_velocity) << '\n';
    }
}

void write_sweep_header(std::ostream& os) {
    os << "omega,q,re_R,im_R,re_T,im_T,abs_R_weighted,abs_T_weighted,v_q,energy_residual\n";
}

void write_sweep_rows(std::ostream& os, double omega, const ScatteringCoefficients& c) {
    for (const auto& e : c.modes) {
        os << format_float(omega) << ',' << e.q << ',' << format_float(e.R.real()) << ','
           << format_float(e.R.imag()) << ',' << format_float(e.T.real()) << ','
           << format_float(e.T.imag()) << ',' << format_float(e.weighted_R) << ','
           << format_float(e.weighted_T) << ',' << format_float(e.group_velocity) << ','
           << format_float(c.energy_residual) << '\n';
    }
}

void write_plot_script(std::ostream& os, const std::string& csv_name, int p) {
    os << "# Regenerates the coefficient curves from " << csv_name << "\n"
       << "set datafile separator ','\n"
       << "set xlabel 'omega'\n"
       << "set key outside\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output 'coefficients_p" << p << ".png'\n"
       << "plot \\\n"
       << "  \"< awk -F, 'NR>1 && $2==" << p << "' " << csv_name
       << "\" using 1:3 with lines title 'Re R_p', \\\n"
       << "  \"< awk -F, 'NR>1 && $2==" << p << "' " << csv_name
       << "\" using 1:5 with lines title 'Re T_p', \\\n"
       << "  \"< awk -F, 'NR>1 && $2==" << p << "' " << csv_name
       << "\" using 1:4 with lines title 'Im T_p'\n"
       << "set output 'weighted_p" << p << ".png'\n"
       << "plot \\\n"
       << "  \"< awk -F, 'NR>1' " << csv_name
       << "\" using 1:7 with points pt 7 ps 0.3 title '|R~_q|', \\\n"
       << "  \"< awk -F, 'NR>1' " << csv_name
       << "\" using 1:8 with points pt 6 ps 0.3 title '|T~_q|', \\\n"
       << "  \"< awk -F, 'NR>1 && $2==" << p << "' " << csv_name
       << "\" using 1:(1.0-$10) with lines lc 'black' title 'energy'\n";
}

bool sweep_point_admissible(double omega, int p, const WaveguideGeometry& g, double tol) {
    if (omega <= tol || std::abs(omega - 2.0) <= tol || omega >= omega_band_top - tol)
        return false;
    const int N = g.N();
    for (int j = 1; j < N; ++j)
        if (std::abs(omega - mode_cutoff(j, N)) <= tol) return false;
    const double gamma0 = 2.0 * std::cos(p * pi / N) + omega * omega - 4.0;
    return std::abs(gamma0) < 2.0 - 1e-12;  // incident mode must propagate
}

}  // namespace latwave
