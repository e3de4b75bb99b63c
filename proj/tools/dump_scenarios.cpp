// Regenerates the checked-in scenario files from the built-in examples.
// Usage: dump_scenarios [output-dir]   (default: scenarios)

#include <filesystem>
#include <fstream>
#include <iostream>

#include "condensa/scenario.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "scenarios";
  std::filesystem::create_directories(dir);
  for (const auto& name : condensa::builtin_scenario_names()) {
    const auto path = dir / (name + ".json");
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << condensa::scenario_to_string(condensa::builtin_scenario(name));
    std::cout << path.string() << "\n";
  }
  return 0;
}
