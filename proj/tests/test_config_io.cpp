#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "latwave/run_config.hpp"

using namespace latwave;

namespace {
std::string write_temp(const std::string& body) {
    const std::string path = "test_config_tmp.cfg";
    std::ofstream out(path);
    out << body;
    return path;
}
}  // namespace

TEST_CASE("config file parsing with comments and whitespace") {
    const std::string path = write_temp(
        "# duct geometry\n"
        "n1 = 0\n"
        "n2 = 9\n"
        "N1 = 10   # lower wall\n"
        "N2 = 19\n"
        "\n"
        "omega = 1.5\n"
        "p = 1\n"
        "method = both\n"
        "m_r = 25\n");
    const RunConfig cfg = parse_config_file(path);
    std::remove(path.c_str());
    CHECK(cfg.geometry.N() == 29);
    CHECK(cfg.omega == 1.5);
    CHECK(cfg.m_r == 25);
    CHECK(cfg.method == "both");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config_file("no_such_file.cfg"), ConfigError);
    RunConfig cfg;
    CHECK_THROWS_AS(apply_key(cfg, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_key(cfg, "p", "1.5"), ConfigError);
    cfg.p = 99;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.p = 1;
    cfg.method = "magic";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.method = "wh";
    cfg.omega = 2.0;  // degenerate frequency
    CHECK_THROWS_AS(cfg.validate(), DegenerateError);
}

TEST_CASE("sweep parsing and admissibility") {
    const SweepSpec s = parse_sweep("0.2:1.8:50");
    CHECK(s.start == 0.2);
    CHECK(s.stop == 1.8);
    CHECK(s.count == 50);
    CHECK_THROWS_AS(parse_sweep("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("a:b:c"), ConfigError);

    const WaveguideGeometry g{0, 9, 10, 19};
    CHECK(sweep_point_admissible(1.5, 1, g));
    CHECK(!sweep_point_admissible(2.0, 1, g));                     // degenerate
    CHECK(!sweep_point_admissible(mode_cutoff(4, 29), 1, g));      // cut-off
    CHECK(!sweep_point_admissible(2.5, 1, g));                     // p evanescent
    CHECK(sweep_point_admissible(2.5, 27, g));
}

TEST_CASE("float formatting survives a round trip at 17 digits") {
    for (double v : {1.0 / 3.0, 0.1, -2.7182818284590452, 1e-17, 6.02e23, 0.0}) {
        const std::string s = format_float(v);
        const double back = std::stod(s);
        CHECK(back == v);
        CHECK(format_float(back) == s);
    }
}

TEST_CASE("field CSV round trip is bit-exact") {
    const WaveguideGeometry g{0, 1, 2, 3};
    const FieldWindow w = duct_window(g, -1, 1);
    ComplexField sc(w), tot(w);
    double seed = 0.1234567890123456;
    for (int m = w.m_min; m <= w.m_max; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n) {
            sc.at(m, n) = {seed, -seed * 3.1};
            tot.at(m, n) = {seed * 1.7, seed};
            seed = seed * 1.618033988749895 - std::floor(seed * 1.618033988749895);
        }
    std::ostringstream os;
    write_field_csv(os, sc, tot);

    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "m,n,re_sc,im_sc,re_tot,im_tot");
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        const int m = std::stoi(cell);
        std::getline(ls, cell, ',');
        const int n = std::stoi(cell);
        double vals[4];
        for (double& v : vals) {
            std::getline(ls, cell, ',');
            v = std::stod(cell);
        }
        CHECK(vals[0] == sc.at(m, n).real());
        CHECK(vals[1] == sc.at(m, n).imag());
        CHECK(vals[2] == tot.at(m, n).real());
        CHECK(vals[3] == tot.at(m, n).imag());
        ++rows;
    }
    CHECK(rows == w.cols() * w.rows());
}

TEST_CASE("sweep rows and plot script emission") {
    ScatteringCoefficients c;
    c.p = 1;
    c.modes.push_back({1, {0.5, -0.25}, {0.5, 0.25}, 1.2, 0.55, 0.55});
    c.energy_residual = 3e-13;
    std::ostringstream os;
    write_sweep_header(os);
    write_sweep_rows(os, 1.25, c);
    CHECK(os.str().find("omega,q,") == 0);
    CHECK(os.str().find("1.25,1,0.5,-0.25,0.5,0.25,") != std::string::npos);

    std::ostringstream plot;
    write_plot_script(plot, "sweep_wh.csv", 1);
    CHECK(plot.str().find("gnuplot") == std::string::npos);  // dialect, not a shebang
    CHECK(plot.str().find("sweep_wh.csv") != std::string::npos);
}
