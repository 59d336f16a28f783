#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "dieudet/job.hpp"
#include "dieudet/selfcheck.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitNumeric = 4;

int exit_code_for(const dieudet::Error& e) {
    switch (e.kind()) {
        case dieudet::ErrorKind::ParseError: return kExitParse;
        case dieudet::ErrorKind::UnsupportedGroup: return kExitUnsupported;
        default: return kExitNumeric;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) dieudet::fail(dieudet::ErrorKind::ParseError, "cannot open input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const json& report, const std::string& output) {
    if (output.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        if (!out) dieudet::fail(dieudet::ErrorKind::ParseError, "cannot open output file " + output);
        out << report.dump(2) << "\n";
    }
}

// Applies --precision / --series overrides to the raw document before the
// typed parse, since payload scalars are read at context precision.
std::string apply_overrides(const std::string& text, std::uint32_t precision, int series) {
    if (precision == 0 && series == 0) return text;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        dieudet::fail(dieudet::ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("context") || !doc.at("context").is_object())
        dieudet::fail(dieudet::ErrorKind::ParseError, "job document needs a context object");
    if (precision != 0) doc["context"]["padic_precision"] = precision;
    if (series != 0) doc["context"]["series_precision"] = series;
    return doc.dump();
}

json checks_json(const std::vector<dieudet::checks::CheckResult>& results) {
    json arr = json::array();
    for (const auto& r : results) {
        json item{{"name", r.name}, {"passed", r.passed}};
        if (!r.detail.empty()) item["detail"] = r.detail;
        arr.push_back(item);
    }
    return arr;
}

int run_checks_command(const std::string& command, const std::vector<dieudet::checks::CheckResult>& results,
                       const json& context, double ms, const std::string& output) {
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.passed;
    }
    json res{{"checks", checks_json(results)},
             {"fingerprint", std::to_string(dieudet::checks::fingerprint(results))},
             {"all_passed", all}};
    json report = dieudet::make_report(command, context, res, ms);
    if (!output.empty()) emit(report, output);
    std::cout << (all ? "all checks passed" : "FAILURES present") << " (fingerprint "
              << res["fingerprint"].get<std::string>() << ")\n";
    return all ? kExitOk : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dieudet: exact Dieudonne determinants over p-adic group rings and Iwasawa algebras"};
    app.require_subcommand(1);

    std::string input, output;
    std::uint32_t precision = 0;
    int series = 0;
    std::uint64_t seed = 42;
    int cases = 100;

    auto add_io = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("--input", input, "job file (JSON)")->required();
        cmd->add_option("--output", output, "report file (default stdout)");
        cmd->add_option("--precision", precision, "override p-adic precision N");
        cmd->add_option("--series", series, "override series truncation M");
    };

    CLI::App* cmd_det = app.add_subcommand("det", "determinant class and integrality certificate of a matrix");
    add_io(cmd_det, true);
    CLI::App* cmd_wp = app.add_subcommand("weierstrass", "Weierstrass preparation of a series over the 2-adic order");
    add_io(cmd_wp, true);
    CLI::App* cmd_iso = app.add_subcommand("isogeny-check", "Fitting-ideal identity check mod p^2");
    add_io(cmd_iso, true);
    CLI::App* cmd_paper = app.add_subcommand("verify-paper", "run the fixed worked-example suite");
    cmd_paper->add_option("--output", output, "report file (default stdout)");
    CLI::App* cmd_prop = app.add_subcommand("proptest", "run the seeded property suites");
    cmd_prop->add_option("--output", output, "report file (default stdout)");
    cmd_prop->add_option("--seed", seed, "generator seed");
    cmd_prop->add_option("--cases", cases, "cases per property (>= 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (cmd_paper->parsed()) {
            auto results = dieudet::checks::run_paper_checks();
            return run_checks_command("verify-paper", results, json::object(), elapsed_ms(), output);
        }
        if (cmd_prop->parsed()) {
            if (cases < 1) dieudet::fail(dieudet::ErrorKind::ParseError, "--cases must be at least 1");
            auto results = dieudet::checks::run_property_checks(cases, seed);
            json ctx{{"cases", cases}, {"seed", seed}};
            return run_checks_command("proptest", results, ctx, elapsed_ms(), output);
        }

        const std::string text = apply_overrides(read_file(input), precision, series);
        dieudet::Job job = dieudet::parse_job(text);
        json results;
        std::string command;
        if (cmd_det->parsed()) {
            command = "det";
            results = dieudet::run_det_job(job);
        } else if (cmd_wp->parsed()) {
            command = "weierstrass";
            results = dieudet::run_weierstrass_job(job);
        } else {
            command = "isogeny-check";
            results = dieudet::run_isogeny_job(job);
        }
        json report = dieudet::make_report(command, dieudet::context_json(job.ctx), results, elapsed_ms());
        emit(report, output);
        if (command == "isogeny-check" && !results.at("holds").get<bool>()) return kExitVerificationFailure;
        return kExitOk;
    } catch (const dieudet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
