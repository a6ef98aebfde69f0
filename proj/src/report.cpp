#include "slipns/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slipns/errors.hpp"

namespace slipns {

bool ExperimentReport::passed() const {
    for (const auto& r : rows)
        if (r.verdict == "fail") return false;
    return true;
}

void ExperimentReport::add_check(const std::string& quantity, double value, double tolerance,
                                 bool pass, double nu, double beta, double t) {
    rows.push_back({experiment, nu, beta, t, quantity, value, tolerance, pass ? "pass" : "fail"});
}

void ExperimentReport::add_info(const std::string& quantity, double value, double nu, double beta,
                                double t) {
    rows.push_back({experiment, nu, beta, t, quantity, value, 0.0, "info"});
}

void ensure_writable_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    require(!ec, ErrorCode::io_error, "output directory cannot be created: " + dir);
    const std::string probe = dir + "/.write_probe";
    {
        std::ofstream os(probe, std::ios::trunc);
        require(os.good(), ErrorCode::io_error, "output directory is not writable: " + dir);
    }
    std::filesystem::remove(probe, ec);
}

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_outputs(const ExperimentReport& report, const std::string& outdir) {
    ensure_writable_dir(outdir);
    const std::uint64_t chash = report.config.hash();

    {
        std::ofstream os(outdir + "/manifest.txt", std::ios::trunc);
        require(os.good(), ErrorCode::io_error, "cannot write manifest in " + outdir);
        os << "manifest_version = 1\n";
        os << "experiment = " << report.experiment << "\n";
        os << "code = slipns 0.1.0\n";
        char hash_buf[32];
        std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, chash);
        os << "config_hash = " << hash_buf << "\n";
        const std::time_t now = std::time(nullptr);
        char when[64];
        std::strftime(when, sizeof(when), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "generated_utc = " << when << "\n";
        os << "verdict = " << (report.passed() ? "pass" : "fail") << "\n";
        os << "\n[fitted_constants]\n";
        for (const auto& c : report.constants)
            os << c.name << " = " << format_double(c.value) << "  # residual "
               << format_double(c.residual) << "; sweep " << c.sweep_domain << "\n";
        os << "\n[config]\n";
        os << report.config.serialize();
    }

    {
        std::ofstream os(outdir + "/" + report.experiment + ".csv", std::ios::trunc);
        require(os.good(), ErrorCode::io_error, "cannot write CSV in " + outdir);
        char hash_buf[32];
        std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, chash);
        os << "# config_hash = " << hash_buf << "\n";
        os << "experiment,nu,beta,t,quantity,value,tolerance,verdict\n";
        for (const auto& r : report.rows)
            os << r.experiment << ',' << format_double(r.nu) << ',' << format_double(r.beta) << ','
               << format_double(r.t) << ',' << r.quantity << ',' << format_double(r.value) << ','
               << format_double(r.tolerance) << ',' << r.verdict << "\n";
        require(os.good(), ErrorCode::io_error, "CSV write failed in " + outdir);
    }

    for (const auto& c : report.curves) {
        std::ofstream os(outdir + "/" + report.experiment + "__" + c.name + ".dat", std::ios::trunc);
        require(os.good(), ErrorCode::io_error, "cannot write curve file in " + outdir);
        for (const auto& p : c.points)
            os << format_double(p[0]) << ' ' << format_double(p[1]) << "\n";
    }
}

std::vector<ReportRow> parse_report_csv(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), ErrorCode::io_error, "cannot open CSV " + path);
    std::vector<ReportRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            require(line == "experiment,nu,beta,t,quantity,value,tolerance,verdict",
                    ErrorCode::io_error, "unexpected CSV header in " + path);
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        ReportRow r;
        std::getline(ls, r.experiment, ',');
        std::getline(ls, field, ',');
        r.nu = std::strtod(field.c_str(), nullptr);
        std::getline(ls, field, ',');
        r.beta = std::strtod(field.c_str(), nullptr);
        std::getline(ls, field, ',');
        r.t = std::strtod(field.c_str(), nullptr);
        std::getline(ls, r.quantity, ',');
        std::getline(ls, field, ',');
        r.value = std::strtod(field.c_str(), nullptr);
        std::getline(ls, field, ',');
        r.tolerance = std::strtod(field.c_str(), nullptr);
        std::getline(ls, r.verdict, ',');
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace slipns
