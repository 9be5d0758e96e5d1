#pragma once

// Brute-force oracles used by the tests. These deliberately avoid the
// library's algorithms: rewrite closure instead of bidirectional search,
// comma-category colimits instead of the chase, exhaustive assignment
// enumeration instead of backtracking with propagation.

#include <vector>

#include "modelspace/leftkan.hpp"

namespace oracles {

using namespace modelspace;

// All composable paths in p from `from` to `to` of length <= maxlen.
std::vector<Path> all_paths(const FinCatPresentation& p, int from, int to, int maxlen);

// Congruence closure over all paths of length <= maxlen by single rewrite
// steps; true iff lhs and rhs land in the same class.
bool congruent_upto(const FinCatPresentation& p, const Path& lhs, const Path& rhs, int maxlen);

// Every functor a -> b whose generator images have length <= max_path_len and
// whose equation preservation is certified by congruent_upto.
std::vector<FinFunctor> enumerate_functors(const FinCatPtr& a, const FinCatPtr& b,
                                           int max_path_len, int closure_len = 6);

// Every C-set morphism x -> y, by filtering all component assignments.
std::vector<CSetMorphism> enumerate_homs(const CSet& x, const CSet& y, bool monic);

// Every natural transformation between parallel Set diagrams.
std::vector<std::vector<std::vector<int>>> enumerate_set_nats(const SetDiagram& x,
                                                              const SetDiagram& y);

// Pointwise left Kan cardinalities via the comma category F(j) -> i; the
// shapes must be free (paths enumerable), which the random instances ensure.
std::vector<int> comma_lan_sizes(const SetDiagram& x, const FinFunctor& f, int maxlen);

// Fiber product of two Petri-schema legs over their codomain, counted per
// schema object by direct enumeration.
std::vector<int> fiber_product_sizes(const CSetMorphism& f, const CSetMorphism& g);

} // namespace oracles
