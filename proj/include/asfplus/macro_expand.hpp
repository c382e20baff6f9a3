#pragma once

#include <vector>

#include "asfplus/core_model.hpp"

namespace asfplus {

using ExpandedEquation = Equation;

// Expands one macro-equation into labelled conditional equations. The
// module is only consulted for the enclosing variable declarations. Leaf
// numbering starts at first, so overloaded heads keep distinct labels.
std::vector<ExpandedEquation> expand_macro(const MacroEquation& me, const Module9& m, int first = 1);

Module9 expand_module(const Module9& m);

// Expands the module of a normal form and registers origins for the
// generated labels.
NormalFormTriple expand_triple(const NormalFormTriple& nf);

}  // namespace asfplus
