#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "fbs/job.hpp"

namespace {

std::string read_all(std::istream& is) { return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()}; }

std::string default_name(const std::string& command, const std::string& format) { return command + "." + format; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Crystal and twisted-cube computations for flag Bott-Samelson varieties"};
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::size_t budget = fbs::default_vertex_budget;
    bool echo_word = false;
    std::optional<std::string> format;
    app.add_option("--config", config_path, "job config file, or - for standard input")->required();
    app.add_option("--out", out_dir, "directory for output artifacts");
    app.add_option("--seed", seed, "override the Monte-Carlo seed");
    app.add_option("--budget", budget, "vertex/element budget for crystal generation")->check(CLI::PositiveNumber);
    app.add_flag("--echo-word", echo_word, "record automatically chosen reduced words");
    app.add_option("--format", format, "artifact format")->check(CLI::IsMember({"json", "csv", "svg", "dot"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        fbs::json cfg;
        if (config_path == "-") {
            cfg = fbs::json::parse(read_all(std::cin));
        } else {
            std::ifstream is(config_path);
            if (!is) throw fbs::InvalidInput("cannot read config file " + config_path);
            cfg = fbs::json::parse(read_all(is));
        }
        fbs::JobOptions opt;
        opt.seed = seed;
        opt.budget = budget;
        opt.echo_word = echo_word;
        opt.format = format;
        const auto res = fbs::run_job(cfg, opt);

        std::optional<std::filesystem::path> target;
        if (res.path) {
            std::filesystem::path p(*res.path);
            target = (!out_dir.empty() && p.is_relative()) ? std::filesystem::path(out_dir) / p : p;
        } else if (!out_dir.empty()) {
            target = std::filesystem::path(out_dir) / default_name(cfg.at("command").get<std::string>(), res.format);
        }
        if (target) fbs::write_atomic(*target, res.artifact);
        std::cout << res.summary << (target ? " -> " + target->string() : std::string()) << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << fbs::error_json(e).dump() << '\n';
        return fbs::exit_code_for(e);
    }
}
