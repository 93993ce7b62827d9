#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pfk/error.hpp"
#include "pfk/rewriting.hpp"

namespace pfk::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { Text, Json };

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> source;
    std::optional<std::string> target;
    std::optional<std::string> param_map;
    std::optional<std::string> out;
    ReductionBudget budget;
    Format format = Format::Text;
    bool assume_checked = false;
    /// Start theories from the prelude (default) or from the empty signature.
    bool prelude = true;
    std::uint64_t seed = 1;
};

struct Record {
    enum class Status { Pass, Fail, Error };

    Status status = Status::Pass;
    std::string kind;
    std::string name;
    std::string cause;
    SourcePos pos;
};

std::string_view to_string(Record::Status s);

struct Report {
    std::string command;
    std::vector<Record> records;

    std::size_t count(Record::Status s) const;
    /// 2 when any record is an error, 1 when any failed, 0 otherwise.
    int exit_code() const;
};

std::string render(const Report& report, Format format);

Report cmd_check(const RunConfig& cfg);
Report cmd_interp(const RunConfig& cfg);
Report cmd_transfer(const RunConfig& cfg);
Report cmd_selftest(const RunConfig& cfg);
Report cmd_proptest(const RunConfig& cfg);
Report cmd_emit_prelude(const RunConfig& cfg);

/// Parses arguments, runs the command, prints the report on `out` and
/// returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfk::cli
