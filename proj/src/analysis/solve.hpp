#pragma once

#include "fmu/analysis.hpp"

namespace fmu {

constexpr int kTransient = -2;
constexpr int kZero = -1;

// Least solution of the absorption equations. cls[v] >= 0 marks v as
// absorbing into column cls[v], kZero as absorbing with value 0, kTransient
// as an expanded node whose out-edges define its equation. Returns one row
// of k probabilities per node.
std::vector<std::vector<Rational>> solve_absorbing(const ChainGraph& g, const std::vector<int>& cls, size_t k);

}  // namespace fmu
