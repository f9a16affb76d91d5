#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "varpois/dsl.hpp"

namespace vp {

using ojson = nlohmann::ordered_json;

struct ReportResult {
    std::string name;
    std::string status;  // ok, fail, flagged, error
    ojson value;
    ojson witness;       // only for fail
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ReportResult> results;
    double timing_ms = 0;

    int exit_code() const;  // 0 all ok, 1 any fail, 2 any error
    ojson body() const;     // everything but the timing
    std::string json(bool timing = true) const;
    std::string text(bool timing = true) const;
};

struct CommandArgs {
    std::string H, K, A, B, M, P, S;
    std::string seed;
    unsigned k = 0;
    unsigned steps = 3;
    int degree_bound = -1;
};

const std::vector<std::string>& command_names();
Report dispatch(const std::string& command, const CommandArgs& args, const Session& session);  // throws UnknownCommand
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vp
