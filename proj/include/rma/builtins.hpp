#pragma once

#include <string>
#include <vector>

#include "rma/annihilator.hpp"
#include "rma/pinchuk.hpp"
#include "rma/rmap.hpp"

namespace rma {

// Named example maps for the command line and the demos.  "pinchuk" is the
// everywhere-defined polynomial counterexample; the three univariate maps
// exercise each dense-image verdict (odd degree, hole in the image, degree
// drop on a scanned point).
inline std::vector<std::string> builtin_names() {
  return {"pinchuk", "example-uni", "cubic-demo", "square"};
}

inline RMap builtin_map(const std::string& name) {
  if (name == "pinchuk") return pinchuk_map(build_pinchuk());
  const MPoly x = MPoly::variable(1, 0);
  if (name == "example-uni")
    return RMap(1, {RatFunc::make(MPoly::constant(1, ExactRational(1)),
                                  x * x + MPoly::constant(1, ExactRational(1)))});
  if (name == "cubic-demo") return RMap(1, {RatFunc(x + x * x * x)});
  if (name == "square") return RMap(1, {RatFunc(x * x)});
  throw StructuralError("unknown builtin map '" + name + "'");
}

// Annihilator of a coordinate (or, for the Pinchuk map, of h) over the image
// field.  For arbitrary square maps of higher arity the primitive-element
// search does the same job; the Pinchuk case keeps the hand-built degree-6
// polynomial so fibers agree with the rest of the toolkit bit for bit.
inline AnnihilatorPoly annihilator_for(const RMap& F) {
  if (F.domain_arity == 1)
    return eliminate_minimal_poly(F, RatFunc::variable(1, 0));
  PrimitiveElementResult pe = find_primitive_element(F);
  return pe.annihilator;
}

inline AnnihilatorPoly builtin_annihilator(const std::string& name) {
  if (name == "pinchuk") return pinchuk_minimal_poly(build_pinchuk());
  return annihilator_for(builtin_map(name));
}

}  // namespace rma
