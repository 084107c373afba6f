// Batch front-end: one job per invocation, configured by a JSON file. The
// subcommand fixes the job's command; a few flags override config fields.
// Exit codes: 0 success/positive, 1 negative verdict, 2 parse/validation
// error, 3 resource cap exceeded.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvchain.h"

namespace {

struct Options {
    std::string config;
    bool json_mode = false;
    std::int64_t cap = -1;
    std::string method;
    std::string mode;
    bool show_idempotents = false;
    int threads = 1;  // reserved; the engine is single-threaded
};

int run(const std::string& command, const Options& opt) {
    std::ifstream in(opt.config, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", opt.config.c_str());
        return MVC_EPARSE;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    // patch the config; an unparseable file is passed through so the engine
    // reports the position
    auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (!parsed.is_discarded()) {
        parsed["command"] = command;
        if (opt.cap >= 0) parsed["cap"] = opt.cap;
        if (!opt.method.empty()) parsed["method"] = opt.method;
        if (!opt.mode.empty()) parsed["subcommand"] = opt.mode;
        if (opt.show_idempotents) parsed["show_idempotents"] = true;
        text = parsed.dump();
    }

    mvc_job* job = mvc_job_create_from_json(text.c_str());
    if (!job) {
        std::fprintf(stderr, "error: out of memory\n");
        return MVC_EPARSE;
    }
    int status = mvc_job_run(job);
    if (status == MVC_EPARSE || status == MVC_ECAP) {
        std::fprintf(stderr, "error: %s\n", mvc_job_last_error(job));
    } else {
        std::fputs(opt.json_mode ? mvc_job_report(job)
                                 : mvc_job_report_text(job),
                   stdout);
        if (opt.json_mode) std::fputc('\n', stdout);
        if (status == MVC_NEGATIVE && !opt.json_mode)
            std::fprintf(stdout, "verdict: negative\n");
    }
    mvc_job_destroy(job);
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multivariable modular codes over finite chain rings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mvc_version()));

    Options opt;
    std::string command;
    auto add = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("config", opt.config, "JSON job file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_flag("--json", opt.json_mode,
                      "emit the canonical JSON report");
        sub->add_option("--cap", opt.cap, "enumeration/scan cap");
        sub->add_option("--threads", opt.threads, "reserved");
        sub->callback([&command, name] { command = name; });
        return sub;
    };

    add("check-pir", "decide the principal ideal property");
    CLI::App* dec = add("decompose", "chain-summand decomposition table");
    dec->add_flag("--show-idempotents", opt.show_idempotents,
                  "include idempotent and uniformizer tensors");
    add("enumerate", "list every code with its cardinality");
    CLI::App* dist = add("distance", "minimum Hamming distance of one code");
    dist->add_option("--method", opt.method, "exhaustive, quotient, or both")
        ->check(CLI::IsMember({"exhaustive", "quotient", "both"}));
    CLI::App* addv = add("additive", "additive F4 codes: count, rank, quantum");
    addv->add_option("--mode", opt.mode, "count, rank, or quantum")
        ->check(CLI::IsMember({"count", "rank", "quantum"}));

    CLI11_PARSE(app, argc, argv);
    return run(command, opt);
}
