#include "pfk/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "pfk/generator.hpp"
#include "pfk/interp.hpp"
#include "pfk/prelude.hpp"
#include "pfk/surface.hpp"
#include "pfk/typing.hpp"

namespace pfk::cli {

namespace fs = std::filesystem;

std::string_view to_string(Record::Status s) {
    switch (s) {
        case Record::Status::Pass: return "PASS";
        case Record::Status::Fail: return "FAIL";
        case Record::Status::Error: return "ERROR";
    }
    return "?";
}

std::size_t Report::count(Record::Status s) const {
    std::size_t n = 0;
    for (const auto& r : records)
        if (r.status == s) ++n;
    return n;
}

int Report::exit_code() const {
    if (count(Record::Status::Error) > 0) return 2;
    if (count(Record::Status::Fail) > 0) return 1;
    return 0;
}

namespace {

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

std::string render_text(const Report& report) {
    std::string out;
    for (const auto& r : report.records) {
        out += std::string(to_string(r.status)) + " " + r.kind + " " + r.name;
        if (!r.cause.empty()) out += " " + one_line(r.cause);
        out += "\n";
    }
    out += "SUMMARY total=" + std::to_string(report.records.size()) +
           " passed=" + std::to_string(report.count(Record::Status::Pass)) +
           " failed=" + std::to_string(report.count(Record::Status::Fail)) +
           " errors=" + std::to_string(report.count(Record::Status::Error)) + "\n";
    return out;
}

std::string render_json(const Report& report) {
    using json = nlohmann::ordered_json;
    json records = json::array();
    for (const auto& r : report.records) {
        json rec;
        rec["status"] = to_string(r.status);
        rec["kind"] = r.kind;
        rec["name"] = r.name;
        rec["cause"] = r.cause.empty() ? json(nullptr) : json(r.cause);
        if (r.pos.known())
            rec["position"] = {{"file", r.pos.file}, {"line", r.pos.line}, {"column", r.pos.column}};
        else
            rec["position"] = nullptr;
        records.push_back(std::move(rec));
    }
    json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = report.command;
    doc["records"] = std::move(records);
    doc["summary"] = {{"total", report.records.size()},
                      {"passed", report.count(Record::Status::Pass)},
                      {"failed", report.count(Record::Status::Fail)},
                      {"errors", report.count(Record::Status::Error)}};
    doc["exit_code"] = report.exit_code();
    return doc.dump(2) + "\n";
}

Record error_record(std::string kind, std::string name, const Error& e) {
    return Record{Record::Status::Error, std::move(kind), std::move(name), e.describe(), e.pos()};
}

LoadOptions load_options(const RunConfig& cfg) {
    LoadOptions opts;
    opts.budget = cfg.budget;
    opts.search_path = search_path_from_env();
    opts.builtin_modules["prelude"] = std::string(prelude_text());
    return opts;
}

// Records the outcome of loader items from `from` on. Failures count as
// `failure` (FAIL when checking files, ERROR when they are inputs to another command).
void record_items(const Loader& loader, std::size_t from, Record::Status failure, const std::string& role,
                  Report& report) {
    const auto& results = loader.results();
    for (std::size_t i = from; i < results.size(); ++i) {
        const ItemResult& r = results[i];
        if (r.ok()) {
            if (role.empty()) report.records.push_back({Record::Status::Pass, r.kind, r.name, {}, r.pos});
            continue;
        }
        std::string kind = role.empty() ? r.kind : role + " " + r.kind;
        report.records.push_back({failure, kind, r.name, r.error->describe(), r.error->pos()});
    }
}

// Loads a theory used as input to interp/transfer; input problems are errors.
std::optional<Loader> load_input(const RunConfig& cfg, const std::string& path, const std::string& role,
                                 Report& report) {
    Loader loader(base_theory(cfg.prelude), load_options(cfg));
    try {
        loader.load_file(path);
    } catch (const Error& e) {
        report.records.push_back(error_record(role, path, e));
        return std::nullopt;
    }
    record_items(loader, 0, Record::Status::Error, role, report);
    if (!loader.ok()) return std::nullopt;
    return loader;
}

struct Inputs {
    Loader source;
    Loader target;
    ParamMap map;
};

std::optional<Inputs> load_inputs(const RunConfig& cfg, Report& report) {
    auto source = load_input(cfg, *cfg.source, "source", report);
    auto target = load_input(cfg, *cfg.target, "target", report);
    if (!source || !target) return std::nullopt;
    try {
        RawParamMap raw = parse_param_map(read_file(*cfg.param_map), *cfg.param_map);
        const ParamMap* defaults =
            source->theory().prelude_included() && target->theory().prelude_included() ? &prelude_param_map()
                                                                                        : nullptr;
        ParamMap map = resolve_param_map(raw, source->theory(), target->theory(), defaults);
        return Inputs{std::move(*source), std::move(*target), std::move(map)};
    } catch (const Error& e) {
        report.records.push_back(error_record("map", *cfg.param_map, e));
        return std::nullopt;
    }
}

void record_obligations(const std::vector<Obligation>& obligations, Report& report) {
    for (const auto& ob : obligations) {
        Record r{ob.passed() ? Record::Status::Pass : Record::Status::Fail, std::string(to_string(ob.kind)),
                 ob.subject, {}, ob.pos};
        if (ob.cause) r.cause = ob.cause->describe();
        report.records.push_back(std::move(r));
    }
}

bool run_obligations(const RunConfig& cfg, const Inputs& in, Report& report) {
    try {
        auto obligations = check_interpretation(in.source.theory(), in.target.theory(), in.map, cfg.budget);
        record_obligations(obligations, report);
        return all_passed(obligations);
    } catch (const Error& e) {
        report.records.push_back(error_record("map", *cfg.param_map, e));
        return false;
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
}

// Property names as single tokens for the line format.
std::string slug(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ' ') c = '-';
    return out;
}

}  // namespace

std::string render(const Report& report, Format format) {
    return format == Format::Json ? render_json(report) : render_text(report);
}

Report cmd_check(const RunConfig& cfg) {
    Report report{"check", {}};
    Loader loader(base_theory(cfg.prelude), load_options(cfg));
    for (const auto& path : cfg.inputs) {
        std::size_t before = loader.results().size();
        try {
            loader.load_file(path);
        } catch (const Error& e) {
            record_items(loader, before, Record::Status::Fail, "", report);
            report.records.push_back(error_record("file", path, e));
            continue;
        }
        record_items(loader, before, Record::Status::Fail, "", report);
    }
    return report;
}

Report cmd_interp(const RunConfig& cfg) {
    Report report{"interp", {}};
    auto in = load_inputs(cfg, report);
    if (in) run_obligations(cfg, *in, report);
    return report;
}

Report cmd_transfer(const RunConfig& cfg) {
    Report report{"transfer", {}};
    auto in = load_inputs(cfg, report);
    if (!in) return report;
    if (!cfg.assume_checked && !run_obligations(cfg, *in, report)) return report;
    // Passing obligations were only needed as a precondition.
    report.records.clear();

    const std::string& path = cfg.inputs.front();
    SourceFile theorems;
    try {
        theorems = parse_file(read_file(path), path);
        std::size_t before = in->source.results().size();
        in->source.load_requires(theorems, fs::path(path).parent_path());
        record_items(in->source, before, Record::Status::Error, "source", report);
        if (!in->source.ok()) return report;
    } catch (const Error& e) {
        report.records.push_back(error_record("file", path, e));
        return report;
    }

    TransferOutput result =
        transfer_theorems(in->source.theory(), in->target.theory(), in->map, theorems, cfg.budget);
    for (const auto& r : result.records) {
        if (r.ok()) {
            report.records.push_back({Record::Status::Pass, r.kind, r.name, {}, r.pos});
            continue;
        }
        auto status = r.error->kind() == ErrorKind::TransferFailure ? Record::Status::Fail : Record::Status::Error;
        report.records.push_back({status, r.kind, r.name, r.error->describe(), r.error->pos()});
    }
    if (cfg.out && report.count(Record::Status::Error) == 0) {
        try {
            write_file(*cfg.out, "(; Transferred from " + fs::path(path).filename().string() + ". ;)\n\n" +
                                     print_file(result.emitted));
        } catch (const Error& e) {
            report.records.push_back(error_record("file", *cfg.out, e));
        }
    }
    return report;
}

Report cmd_selftest(const RunConfig& cfg) {
    Report report{"selftest", {}};
    record_obligations(verify_prelude(cfg.budget), report);
    return report;
}

Report cmd_proptest(const RunConfig& cfg) {
    Report report{"proptest", {}};
    auto results = run_property_suites(cfg.seed);
    auto kernel = run_kernel_suites(cfg.seed);
    results.insert(results.end(), kernel.begin(), kernel.end());
    for (const auto& r : results) {
        Record rec{r.ok() ? Record::Status::Pass : Record::Status::Fail, "property", slug(r.name), {}, {}};
        rec.cause = std::to_string(r.cases) + " cases";
        if (r.failures > 0) {
            rec.cause = std::to_string(r.failures) + " of " + rec.cause + " failed";
            for (const auto& ex : r.examples) rec.cause += "; " + ex;
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

Report cmd_emit_prelude(const RunConfig& cfg) {
    Report report{"emit-prelude", {}};
    fs::path dir = *cfg.out;
    for (auto [name, text] : {std::pair{"prelude.pfk", prelude_text()}, std::pair{"prelude.pfm", prelude_params_text()}}) {
        std::string path = (dir / name).string();
        try {
            write_file(path, std::string(text));
            report.records.push_back({Record::Status::Pass, "file", path, {}, {}});
        } catch (const Error& e) {
            report.records.push_back(error_record("file", path, e));
        }
    }
    return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type checker for the lambda-Pi calculus modulo theory, with interpretation checking and proof transfer",
                 "pfk"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "text";
    bool no_prelude = false;
    app.add_option("--budget", cfg.budget.max_steps, "Maximum reduction steps per check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_flag("--no-prelude", no_prelude, "Start from the empty signature instead of the prelude");

    auto* check = app.add_subcommand("check", "Check theory files in order");
    check->add_option("files", cfg.inputs, "Files to check")->required();

    auto add_triple = [&](CLI::App* sub) {
        sub->add_option("--source", cfg.source, "Source theory")->required();
        sub->add_option("--target", cfg.target, "Target theory")->required();
        sub->add_option("--map", cfg.param_map, "Parameter map (.pfm)")->required();
    };
    auto* interp = app.add_subcommand("interp", "Check an interpretation of the source theory in the target");
    add_triple(interp);

    auto* transfer = app.add_subcommand("transfer", "Translate theorems of the source theory into the target");
    add_triple(transfer);
    transfer->add_option("theorems", cfg.inputs, "Theorem file over the source theory")->required()->expected(1);
    transfer->add_option("--out", cfg.out, "Where to write the translated theorems");
    transfer->add_flag("--assume-checked", cfg.assume_checked, "Skip re-checking the interpretation");

    auto* selftest = app.add_subcommand("selftest", "Check the prelude's interpretation in itself");

    auto* proptest = app.add_subcommand("proptest", "Run the randomized property suites");
    proptest->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

    auto* emit = app.add_subcommand("emit-prelude", "Write prelude.pfk and prelude.pfm into a directory");
    emit->add_option("--out", cfg.out, "Directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.format = format == "json" ? Format::Json : Format::Text;
    cfg.prelude = !no_prelude;

    Report report;
    try {
        if (*check) {
            cfg.command = "check";
            report = cmd_check(cfg);
        } else if (*interp) {
            cfg.command = "interp";
            report = cmd_interp(cfg);
        } else if (*transfer) {
            cfg.command = "transfer";
            report = cmd_transfer(cfg);
        } else if (*selftest) {
            cfg.command = "selftest";
            report = cmd_selftest(cfg);
        } else if (*proptest) {
            cfg.command = "proptest";
            report = cmd_proptest(cfg);
        } else if (*emit) {
            cfg.command = "emit-prelude";
            report = cmd_emit_prelude(cfg);
        }
    } catch (const Error& e) {
        report.command = cfg.command;
        report.records.push_back(error_record("internal", cfg.command, e));
    }
    out << render(report, cfg.format);
    return report.exit_code();
}

}  // namespace pfk::cli
