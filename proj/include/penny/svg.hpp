#pragma once

#include <string>

#include "penny/field.hpp"
#include "penny/triangulate.hpp"

namespace penny {

/// One <circle> per disk and one <line> per contact edge.
std::string packing_svg(const PennyGraph& g);

/// Packing drawing plus one <polygon> per triangle.
std::string mesh_svg(const PennyGraph& g, const Triangulation& mesh);

/// One <circle> per disk filled by its field value on a blue-to-red ramp.
std::string field_svg(const PennyGraph& g, const ScalarField& f);

}  // namespace penny
