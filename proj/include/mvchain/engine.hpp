#ifndef MVCHAIN_ENGINE_HPP
#define MVCHAIN_ENGINE_HPP

#include <cstdint>
#include <string>

namespace mvc {

/// Outcome of one batch job. status follows the process exit convention:
/// 0 success (or positive verdict), 1 negative verdict, 2 parse/validation
/// error, 3 resource cap exceeded.
struct JobResult {
    int status = 0;
    std::string report_json;  // canonical: sorted keys, no whitespace
    std::string report_text;
    std::string error;  // set for status 2 and 3, and for negative verdicts
};

/// Runs a JSON job specification. Never throws; all failures are encoded in
/// the result. Reports embed the FNV-1a hash of the canonicalized spec.
JobResult run_job(const std::string& spec_text);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace mvc

#endif
