#pragma once

// Internal reporting plumbing: JSON fragments for the domain types and the
// canonical rendering the determinism contract is asserted on. Not installed;
// the public surface (pipeline.hpp) hands out rendered strings only.

#include <string>

#include <json.hpp>

#include "galoscope/branch_locus.hpp"
#include "galoscope/fiber_products.hpp"
#include "galoscope/group.hpp"
#include "galoscope/monodromy.hpp"
#include "galoscope/system.hpp"

namespace galoscope {

using Json = nlohmann::json;

// Canonical rendering: UTF-8, object keys sorted, floats with 17 significant
// digits, two-space indent, trailing newline. Identical values render to
// identical bytes.
std::string render_json(const Json& value);

// {"im": .., "re": ..}
Json complex_json(const Complex& z);

// List of complex coordinates.
Json vector_json(const Vector& v);

Json line_json(const LineEmbedding& line);

// Witness points with multiplicities plus solve bookkeeping.
Json witness_json(const BranchWitness& witness);

Json group_report_json(const GroupReport& report);

// Cycle text plus provenance for each generator.
Json generators_json(const std::vector<MonodromyPermutation>& generators);

Json decomposition_json(const WitnessDecomposition& dec);

}  // namespace galoscope
