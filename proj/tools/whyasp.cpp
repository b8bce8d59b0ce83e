#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "whyasp/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw whyasp::Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explain why an atom is true or false in an answer set"};

    std::string program_path;
    std::string answer_set_path;
    std::string format = "dot";
    std::string out_path;
    whyasp::RunConfig config;

    app.add_option("--program", program_path, "program file")->required();
    app.add_option("--answer-set", answer_set_path, "answer set file (computed by brute force when omitted)");
    app.add_option("--query", config.query, "ground atom to explain")->required();
    app.add_option("--format", format, "dot, json, trace or facts")
        ->check(CLI::IsMember({"dot", "json", "trace", "facts"}));
    app.add_option("--count", config.count, "number of explanations")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_flag("--trust-answer-set", config.trust_answer_set, "skip the answer set check");
    app.add_option("--extra-atom", config.extra_atoms, "additional ground atom for the base (repeatable)");
    app.add_option("--arith-depth", config.arith_depth, "arithmetic nesting cap during grounding");
    app.add_option("--oracle-cap", config.oracle_cap, "max atoms guessed when computing an answer set");
    app.add_flag("--full-instantiation", config.full_instantiation, "ground over all constants");

    CLI11_PARSE(app, argc, argv);

    try {
        config.program = read_file(program_path);
        if (!answer_set_path.empty()) config.answer_set = read_file(answer_set_path);
    } catch (const whyasp::Error& e) {
        std::cerr << "whyasp: " << e.what() << "\n";
        return 1;
    }
    config.format = whyasp::parse_format(format);

    auto result = whyasp::run(config);
    if (result.status != 0) {
        std::cerr << "whyasp: " << result.message << "\n";
        return result.status;
    }
    if (out_path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "whyasp: cannot write " << out_path << "\n";
            return 1;
        }
        out << result.output;
    }
    return 0;
}
