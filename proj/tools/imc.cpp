#include "imc/cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Imprecise Markov chain analysis"};
    std::string command;
    imc::cli::CommandOptions opt;
    app.add_option("command", command, "validate|classify|permanent|evolve|invariant|convergence|report")
        ->required()
        ->check(CLI::IsMember(imc::cli::command_names()));
    app.add_option("--model", opt.model_path, "model JSON file")->required();
    app.add_option("--gamble", opt.gamble, "indicator:<labels> or comma separated values");
    app.add_option("--steps", opt.steps, "number of steps");
    app.add_option("--initial", opt.initial, "vacuous, vacuous_on:<labels>, point:<label>, precise:<values>");
    app.add_option("--tol", opt.tol, "convergence tolerance");
    app.add_option("--max-iter", opt.max_iter, "iteration cap");
    app.add_option("--max-strong-states", opt.max_strong_states, "state cap for subset-lattice work");
    CLI11_PARSE(app, argc, argv);

    if (const char* path = std::getenv("IMC_CONFIG"); path != nullptr && *path != '\0') {
        opt.config_path = path;
    }
    const auto result = imc::cli::run_command(command, opt);
    std::cout << result.output;
    if (!result.error.empty()) {
        std::cerr << result.error << (result.error.back() == '\n' ? "" : "\n");
    }
    return result.exit_code;
}
