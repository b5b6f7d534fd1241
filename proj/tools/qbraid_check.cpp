#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qbraid/harness.hpp"

int main(int argc, char** argv) {
    qbraid::RunConfig cfg;
    CLI::App app{"Numerical checks for the quantum exponential and the braided domains N and M"};
    std::vector<std::string> tols;
    std::string csv_dir;
    std::string out_path;

    app.add_option("--k", cfg.k, "hbar = sign * pi/(2k+3)");
    app.add_option("--sign", cfg.sign, "sign of hbar (+1 or -1)");
    app.add_option("--grid-n", cfg.grid_n, "grid points, even, 64..1024");
    app.add_option("--grid-length", cfg.grid_length, "periodic box length");
    app.add_option("--suite", cfg.suites, "suite to run (repeatable); default all");
    app.add_option("--tol", tols, "tolerance override NAME=VALUE (repeatable)");
    app.add_option("--report", cfg.report_format, "json or text");
    app.add_option("--csv-dir", csv_dir, "directory for CSV dumps");
    app.add_option("--seed", cfg.rng_seed, "probe seed");
    app.add_option("--output", out_path, "write the report here instead of stdout");
    app.add_flag("--timing", cfg.timing, "record runtime_ms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        for (const auto& t : tols) {
            const auto eq = t.find('=');
            if (eq == std::string::npos || eq == 0) throw qbraid::ConfigError("--tol expects NAME=VALUE, got " + t);
            std::size_t used = 0;
            const std::string value = t.substr(eq + 1);
            double v = 0.0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size()) throw qbraid::ConfigError("--tol value is not a number: " + t);
            cfg.tol_overrides[t.substr(0, eq)] = v;
        }
        if (!csv_dir.empty()) cfg.csv_dir = csv_dir;

        const qbraid::RunResult result = qbraid::run_suite(cfg);
        const std::string text = qbraid::render(cfg, result);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw qbraid::ConfigError("cannot write " + out_path);
            out << text;
        }
        return result.exit_code;
    } catch (const qbraid::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
