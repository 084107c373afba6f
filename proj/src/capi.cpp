#include "mvchain.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "mvchain/engine.hpp"

struct mvc_job {
    std::string spec;
    bool ran = false;
    mvc::JobResult result;
};

extern "C" {

mvc_job* mvc_job_create_from_json(const char* spec_text) {
    if (!spec_text) return nullptr;
    auto* job = new (std::nothrow) mvc_job;
    if (job) job->spec = spec_text;
    return job;
}

mvc_job* mvc_job_create_from_file(const char* path) {
    if (!path) return nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return nullptr;
    std::ostringstream buf;
    buf << in.rdbuf();
    return mvc_job_create_from_json(buf.str().c_str());
}

int mvc_job_run(mvc_job* job) {
    if (!job) return MVC_EPARSE;
    if (!job->ran) {
        job->result = mvc::run_job(job->spec);
        job->ran = true;
    }
    return job->result.status;
}

const char* mvc_job_report(const mvc_job* job) {
    return job ? job->result.report_json.c_str() : "";
}

const char* mvc_job_report_text(const mvc_job* job) {
    return job ? job->result.report_text.c_str() : "";
}

const char* mvc_job_last_error(const mvc_job* job) {
    return job ? job->result.error.c_str() : "";
}

void mvc_job_destroy(mvc_job* job) { delete job; }

const char* mvc_version(void) { return "1.0.0"; }

}  // extern "C"
