#pragma once

#include <string>

#include "advdiff/errors.hpp"

namespace advdiff {

// The three discretizations under comparison.
enum class Formulation {
  Galerkin,
  ArtificialDiffusion,
  WeightedVariational,
};

inline const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::Galerkin: return "galerkin";
    case Formulation::ArtificialDiffusion: return "artificial";
    case Formulation::WeightedVariational: return "weighted";
  }
  return "unknown";
}

inline Formulation parse_formulation(const std::string& name) {
  if (name == "galerkin") return Formulation::Galerkin;
  if (name == "artificial") return Formulation::ArtificialDiffusion;
  if (name == "weighted") return Formulation::WeightedVariational;
  throw Error(ErrorCode::InvalidArgument, "unknown formulation '" + name + "'");
}

}  // namespace advdiff
