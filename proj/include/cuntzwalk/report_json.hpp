#pragma once

#include "json.hpp"
#include "cuntzwalk/dilation.hpp"
#include "cuntzwalk/intertwiners.hpp"
#include "cuntzwalk/product_analysis.hpp"
#include "cuntzwalk/spectral.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// Dense matrix as {"rows", "cols", "data"} with data row-major re/im pairs.
nlohmann::json matrix_to_json(const DenseMatrix& m);

nlohmann::json to_json(const ValidationReport& report, const LabeledWalk& walk);
nlohmann::json to_json(const MinimalSetReport& report, const ProductGraph& pg);
nlohmann::json to_json(const CuntzReport& report);
nlohmann::json to_json(const OracleComparison& cmp);
nlohmann::json to_json(const AssumptionReport& report);
nlohmann::json to_json(const MinSet& m, const SpectralSystem& sys);

}  // namespace cuntz
