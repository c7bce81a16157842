#pragma once

// Deterministic Graphviz renderings. Nodes appear in the stored order,
// edges in the stored order.

#include <string>

#include "analogy/olog.hpp"
#include "analogy/wiring_diagram.hpp"

namespace analogy {

// Vertices show their id and label triples.
std::string wd_to_dot(const WiringDiagram& w, const std::string& name = "wd");
// Nodes show the display text; edges carry the aspect text.
std::string olog_to_dot(const Olog& o, const std::string& name = "olog");

}  // namespace analogy
