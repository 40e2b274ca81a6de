#include "btoric/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

bool read_all(const std::string& path, std::string& out) {
    if (path == "-") {
        out.assign(std::istreambuf_iterator<char>(std::cin), {});
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"b-symplectic toric classification: validation, Delzant checks, cuts and surface numerics"};
    app.require_subcommand(1, 1);

    btoric::cli::Options opts;
    std::string in_path = "-";
    std::string out_path;
    double tolerance = 0;
    std::string ladder;

    for (const auto& name : btoric::cli::commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--in", in_path, "input JSON file ('-' for stdin)");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--tolerance", tolerance, "numeric tolerance override");
        sub->add_option("--epsilon-ladder", ladder, "cutoffs: comma list or start:stop:ratio");
        sub->add_option("--format", opts.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
        sub->add_option("--schema-version", opts.schema_version, "report schema version");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    opts.command = app.get_subcommands().front()->get_name();
    auto* sub = app.get_subcommands().front();
    if (sub->count("--tolerance")) opts.tolerance = tolerance;
    if (sub->count("--epsilon-ladder")) opts.epsilon_ladder = ladder;

    std::string input;
    btoric::cli::Outcome result;
    if (!read_all(in_path, input)) result = btoric::cli::failure(opts, "", "cannot read input file \"" + in_path + "\"");
    else result = btoric::cli::run(opts, input);

    if (out_path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        out << result.output;
    }
    return result.exit_code;
}
