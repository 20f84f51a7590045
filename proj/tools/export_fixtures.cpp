// Writes the built-in walks and spectral systems as JSON files into a directory.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "cuntzwalk/fixtures.hpp"
#include "cuntzwalk/spectral.hpp"
#include "cuntzwalk/walk_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: export_fixtures DIR\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& [name, walk] : cuntz::fixtures::all_walks()) {
    cuntz::save_walk_file(walk, (dir / (name + ".json")).string());
  }
  auto system = [&](const std::string& name, const cuntz::SpectralSystem& sys) {
    std::ofstream out(dir / (name + ".json"));
    out << cuntz::spectral_to_json(sys).dump(2) << '\n';
  };
  system("quarter_cantor", cuntz::fixtures::quarter_cantor_system());
  system("unit_interval", cuntz::fixtures::unit_interval_system());
  return 0;
}
