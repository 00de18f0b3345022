// Writes the shipped model fixtures and their interpretations to a directory.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "prpkit/fixtures.hpp"
#include "prpkit/model_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Regenerate the model fixtures"};
    std::string dir = "fixtures";
    app.add_option("dir", dir, "Output directory");
    CLI11_PARSE(app, argc, argv);
    std::filesystem::create_directories(dir);
    for (const auto& fx : prpkit::fixtures::all()) {
        prpkit::Model M = fx.build();
        auto rep = prpkit::validate_model(M);
        if (!rep.ok()) {
            std::cerr << fx.name << ": invalid model: " << rep.violations.front().constraint << " "
                      << rep.violations.front().detail << "\n";
            return 1;
        }
        nlohmann::json j = prpkit::model_to_json(M);
        j["interpretation"] = fx.interp;
        std::ofstream(dir + "/" + fx.name + ".json") << j.dump(1) << "\n";
        std::size_t entries = 0;
        for (const auto& [op, t] : M.ops) entries += t.size();
        std::cout << fx.name << ": " << M.size() << " elements, " << entries << " entries\n";
    }
    return 0;
}
