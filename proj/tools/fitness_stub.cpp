// Reference endpoint for the external-fitness line protocol: reads one
// JSON request per line from stdin, replies with {"id": ..., "fitness": ...}
// on stdout. Useful for wiring tests and as a template for real trainers.
//
// Options:
//   --fitness V    reply with the constant V (default 0.0256)
//   --score        reply with the surrogate fitness of the decoded config
//   --malformed    emit a non-JSON line instead of a reply
//   --wrong-id     reply with id + 1
//   --silent       never reply (forces caller timeouts)
//   --log PATH     append each received line to PATH

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "gego/hpo.hpp"

int main(int argc, char** argv) {
    double fitness = 0.0256;
    bool use_score = false;
    bool malformed = false;
    bool wrong_id = false;
    bool silent = false;
    std::string log_path;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--fitness" && i + 1 < argc) fitness = std::stod(argv[++i]);
        else if (arg == "--score") use_score = true;
        else if (arg == "--malformed") malformed = true;
        else if (arg == "--wrong-id") wrong_id = true;
        else if (arg == "--silent") silent = true;
        else if (arg == "--log" && i + 1 < argc) log_path = argv[++i];
        else {
            std::cerr << "fitness_stub: unknown option " << arg << "\n";
            return 2;
        }
    }

    std::ofstream log;
    if (!log_path.empty()) log.open(log_path, std::ios::app);

    std::string line;
    while (std::getline(std::cin, line)) {
        if (log.is_open()) log << line << "\n" << std::flush;

        const nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
        if (request.is_discarded()) continue;
        if (request.contains("cmd") && request["cmd"] == "shutdown") break;
        if (!request.contains("id")) continue;

        if (silent) continue;
        if (malformed) {
            std::cout << "this is not json\n" << std::flush;
            continue;
        }

        double value = fitness;
        if (use_score && request.contains("config")) {
            gego::AnnConfig config;
            for (const auto& layer : request["config"]["layers"])
                config.layers.push_back({layer["neurons"].get<int>(), layer["dropout"].get<double>()});
            config.batch_size = request["config"]["batch_size"].get<int>();
            config.learning_rate = request["config"]["learning_rate"].get<double>();
            value = gego::surrogate_fitness(config);
        }

        nlohmann::ordered_json reply;
        reply["id"] = request["id"].get<std::int64_t>() + (wrong_id ? 1 : 0);
        reply["fitness"] = value;
        std::cout << reply.dump() << "\n" << std::flush;
    }
    return 0;
}
