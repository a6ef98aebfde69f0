#include "slipns.h"

#include <cstring>
#include <string>

#include "slipns/errors.hpp"
#include "slipns/experiments.hpp"
#include "slipns/report.hpp"

struct slipns_run {
    slipns::RunConfig config;
    slipns::ExperimentReport report;
    bool has_report = false;
    std::string last_error;
};

namespace {

slipns_status status_from(const slipns::Error& e) {
    switch (e.code()) {
        case slipns::ErrorCode::invalid_argument: return SLIPNS_ERR_INVALID_ARGUMENT;
        case slipns::ErrorCode::domain_error: return SLIPNS_ERR_DOMAIN;
        case slipns::ErrorCode::branch_cut: return SLIPNS_ERR_BRANCH_CUT;
        case slipns::ErrorCode::not_converged: return SLIPNS_ERR_NOT_CONVERGED;
        case slipns::ErrorCode::io_error: return SLIPNS_ERR_IO;
        case slipns::ErrorCode::internal: return SLIPNS_ERR_INTERNAL;
    }
    return SLIPNS_ERR_INTERNAL;
}

template <class Fn>
slipns_status guarded(slipns_run* run, Fn&& fn) {
    if (!run) return SLIPNS_ERR_INVALID_ARGUMENT;
    try {
        fn();
        return SLIPNS_OK;
    } catch (const slipns::Error& e) {
        run->last_error = e.what();
        return status_from(e);
    } catch (const std::exception& e) {
        run->last_error = e.what();
        return SLIPNS_ERR_INTERNAL;
    }
}

int copy_string(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) return -1;
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
    return static_cast<int>(s.size());
}

}  // namespace

extern "C" {

const char* slipns_version(void) { return "0.1.0"; }

slipns_status slipns_run_create(slipns_run** out) {
    if (!out) return SLIPNS_ERR_INVALID_ARGUMENT;
    *out = new (std::nothrow) slipns_run();
    return *out ? SLIPNS_OK : SLIPNS_ERR_INTERNAL;
}

void slipns_run_destroy(slipns_run* run) { delete run; }

slipns_status slipns_load_config(slipns_run* run, const char* path) {
    return guarded(run, [&] {
        slipns::require(path != nullptr, slipns::ErrorCode::invalid_argument, "null config path");
        run->config = slipns::RunConfig::from_file(path);
    });
}

slipns_status slipns_set_option(slipns_run* run, const char* key, const char* value) {
    return guarded(run, [&] {
        slipns::require(key && value, slipns::ErrorCode::invalid_argument, "null option");
        run->config.set(key, value);
    });
}

slipns_status slipns_execute(slipns_run* run, const char* experiment, const char* out_dir) {
    return guarded(run, [&] {
        const std::string name = experiment ? experiment : "";
        if (out_dir && *out_dir) slipns::ensure_writable_dir(out_dir);
        run->report = slipns::run_experiment(run->config, name);
        run->has_report = true;
        if (out_dir && *out_dir) slipns::emit_outputs(run->report, out_dir);
    });
}

int slipns_row_count(const slipns_run* run) {
    if (!run || !run->has_report) return 0;
    return static_cast<int>(run->report.rows.size());
}

int slipns_row_quantity(const slipns_run* run, int idx, char* buf, size_t cap) {
    if (!run || !run->has_report || idx < 0 || idx >= slipns_row_count(run)) return -1;
    return copy_string(run->report.rows[static_cast<std::size_t>(idx)].quantity, buf, cap);
}

int slipns_row_verdict(const slipns_run* run, int idx, char* buf, size_t cap) {
    if (!run || !run->has_report || idx < 0 || idx >= slipns_row_count(run)) return -1;
    return copy_string(run->report.rows[static_cast<std::size_t>(idx)].verdict, buf, cap);
}

slipns_status slipns_row_values(const slipns_run* run, int idx, double* value, double* tolerance,
                                double* nu, double* beta, double* t) {
    if (!run || !run->has_report || idx < 0 || idx >= slipns_row_count(run))
        return SLIPNS_ERR_INVALID_ARGUMENT;
    const auto& r = run->report.rows[static_cast<std::size_t>(idx)];
    if (value) *value = r.value;
    if (tolerance) *tolerance = r.tolerance;
    if (nu) *nu = r.nu;
    if (beta) *beta = r.beta;
    if (t) *t = r.t;
    return SLIPNS_OK;
}

int slipns_passed(const slipns_run* run) {
    if (!run || !run->has_report) return 0;
    return run->report.passed() ? 1 : 0;
}

const char* slipns_last_error(const slipns_run* run) {
    return run ? run->last_error.c_str() : "null run handle";
}

}  // extern "C"
