#pragma once

#include <string>

#include "json.hpp"
#include "widthlab/cyclespace.hpp"
#include "widthlab/plmaps.hpp"

namespace widthlab {

// Complex <-> JSON: {"space": "S2", "dim": 2, "vertices": [[...],...],
// "simplices": {"0": [...], ..., "dim": [...]}}; torus lifts and marked
// vertices travel in optional "lifts" / "marked" fields. Deserialization
// revalidates every structural invariant and reports the offending path.
nlohmann::json complex_to_json(const SimplicialComplex& K);
ComplexPtr complex_from_json(const nlohmann::json& j);

// PLMap <-> JSON: {"source": <complex>, "target": "R^m" | <complex>,
// "images": [[...],...], "id": string}.
nlohmann::json plmap_to_json(const PLMap& f);
PLMap plmap_from_json(const nlohmann::json& j);

// Fold-event log as JSON lines, one event per line.
std::string event_log_lines(const std::vector<EventRecord>& events);

ComplexPtr complex_from_file(const std::string& path);
PLMap plmap_from_file(const std::string& path);

}  // namespace widthlab
