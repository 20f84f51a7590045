#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// Document layout:
///   {"vertices": [id...], "labels": [id...],
///    "edges": [{"from": id, "label": id, "to": id, "alpha": {"re": x, "im": y}}...]}
/// Ids may be strings or integers; integers are converted to their decimal
/// string. Omitted edges have amplitude 0.
LabeledWalk walk_from_json(const nlohmann::json& doc);
nlohmann::json walk_to_json(const LabeledWalk& walk);

LabeledWalk load_walk(const std::string& text);
std::string save_walk(const LabeledWalk& walk);

LabeledWalk load_walk_file(const std::filesystem::path& path);
void save_walk_file(const LabeledWalk& walk, const std::filesystem::path& path);

/// {"re": x, "im": y}; doubles are printed with round-trip precision.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace cuntz
