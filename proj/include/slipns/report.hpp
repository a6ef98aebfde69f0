#pragma once

#include <array>
#include <string>
#include <vector>

#include "slipns/config.hpp"

namespace slipns {

struct ReportRow {
    std::string experiment;
    double nu = 0.0;
    double beta = 0.0;
    double t = 0.0;
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
    std::string verdict;  // "pass", "fail", or "info"
};

struct FittedConstant {
    std::string name;
    double value = 0.0;
    double residual = 0.0;
    std::string sweep_domain;  // human-readable record of the fitted region
};

struct Curve {
    std::string name;  // file stem: <experiment>__<name>.dat
    std::vector<std::array<double, 2>> points;
};

struct ExperimentReport {
    std::string experiment;
    RunConfig config;
    std::vector<ReportRow> rows;
    std::vector<FittedConstant> constants;
    std::vector<Curve> curves;

    bool passed() const;
    void add_check(const std::string& quantity, double value, double tolerance, bool pass,
                   double nu = 0.0, double beta = 0.0, double t = 0.0);
    void add_info(const std::string& quantity, double value, double nu = 0.0, double beta = 0.0,
                  double t = 0.0);
};

// Fails before any computation if the directory cannot be created/written.
void ensure_writable_dir(const std::string& dir);

// Writes manifest.txt, <experiment>.csv (header
// experiment,nu,beta,t,quantity,value,tolerance,verdict with a config-hash
// comment line) and one two-column .dat file per curve. CSV bytes are
// deterministic for a fixed config.
void emit_outputs(const ExperimentReport& report, const std::string& outdir);

// Parse-back helper (used by round-trip tests and downstream tooling).
std::vector<ReportRow> parse_report_csv(const std::string& path);

// Shortest decimal string that reparses to exactly the same double.
std::string format_double(double v);

}  // namespace slipns
