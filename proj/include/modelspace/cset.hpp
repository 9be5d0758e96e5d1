#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modelspace/fincat.hpp"

namespace modelspace {

/// A copresheaf on a presented schema: a finite set of elements 0..n-1 per
/// schema object and a total map per schema generator.
struct CSet {
    FinCatPtr schema;
    std::vector<int> parts;                // cardinality per schema object
    std::vector<std::vector<int>> actions; // per generator, size parts[src]

    bool operator==(const CSet& o) const {
        return (schema == o.schema || *schema == *o.schema) && parts == o.parts &&
               actions == o.actions;
    }
};

CSet empty_cset(const FinCatPtr& schema);

/// Applies the action of a generator path to an element of parts[path_src].
int apply_path(const CSet& x, const Path& p, int elem);

/// Returns [] iff all action values are in range and every schema equation
/// holds elementwise. Each entry names the offending generator/equation and
/// element.
std::vector<std::string> validate(const CSet& x);

struct CSetMorphism {
    CSet dom;
    CSet cod;
    std::vector<std::vector<int>> components; // per schema object

    bool operator==(const CSetMorphism& o) const {
        return dom == o.dom && cod == o.cod && components == o.components;
    }
};

CSetMorphism identity_morphism(const CSet& x);
CSetMorphism compose(const CSetMorphism& f, const CSetMorphism& g);

/// Naturality: components commute with every generator action.
bool is_natural(const CSetMorphism& f);
bool is_mono(const CSetMorphism& f);

// ---------------------------------------------------------------------------
// Homomorphism search
// ---------------------------------------------------------------------------

/// Backtracking search for C-set morphisms x -> y with forward checking on
/// generator constraints. Exhaustive in a fixed canonical order; stops after
/// `limit` results when limit > 0. `parallel` splits on the first free
/// element's candidate values across OpenMP threads; the result list is
/// identical to the serial one.
std::vector<CSetMorphism> hom_search(const CSet& x, const CSet& y, bool monic = false,
                                     int limit = 0, bool parallel = false);

// ---------------------------------------------------------------------------
// Finite limits
// ---------------------------------------------------------------------------

/// A diagram of C-sets handed to limit/colimit: one C-set per shape object,
/// one morphism per shape generator.
struct CSetDiagramData {
    FinCatPtr shape;
    std::vector<CSet> ob;
    std::vector<CSetMorphism> hom;
};

/// Throws MalformedInput unless endpoints line up, every hom is natural, and
/// every shape equation holds as an equality of composites.
void check_functorial(const CSetDiagramData& d);

CSetMorphism compose_along(const CSetDiagramData& d, const Path& p, int src_node);

struct LimitResult {
    CSet apex;
    std::vector<CSetMorphism> legs; // one per shape object
    // tuples[schema_obj][apex_elem][shape_obj] = chosen element
    std::vector<std::vector<std::vector<int>>> tuples;
};

/// Pointwise limit in finite sets: product tuples filtered by the generator
/// conditions, with induced actions. Elements are canonical tuples in
/// lexicographic order.
LimitResult limit(const CSetDiagramData& d);

LimitResult product(const std::vector<CSet>& xs);
LimitResult cset_equalizer(const std::vector<CSetMorphism>& fs);
LimitResult pullback(const std::vector<CSetMorphism>& legs);

/// Unique mediating morphism from a commuting cone into the computed apex.
/// Throws MalformedInput if the cone does not commute or fails to factor.
CSetMorphism limit_factorize(const CSetDiagramData& d, const LimitResult& lim,
                             const CSet& w, const std::vector<CSetMorphism>& cone);

// ---------------------------------------------------------------------------
// Finite colimits
// ---------------------------------------------------------------------------

struct ColimitResult {
    CSet apex;
    std::vector<CSetMorphism> injections; // one per shape object
    // reps[schema_obj][apex_elem] = least (shape_node, element) in the class
    std::vector<std::vector<std::pair<int, int>>> reps;
};

/// Pointwise colimit: disjoint union quotiented by the union-find closure of
/// generator images along shape morphisms; classes are represented by their
/// least member in (node, element) order.
ColimitResult colimit(const CSetDiagramData& d);

ColimitResult cset_coproduct(const std::vector<CSet>& xs);
ColimitResult cset_coequalizer(const std::vector<CSetMorphism>& fs);
ColimitResult cset_pushout(const std::vector<CSetMorphism>& legs);

CSetMorphism colimit_factorize(const CSetDiagramData& d, const ColimitResult& col,
                               const CSet& w, const std::vector<CSetMorphism>& cocone);

/// Quotient of a single C-set by given element pairs, closed under actions.
/// Used for pointwise coequalizers where the quotient must stay a C-set.
struct QuotientResult {
    CSet apex;
    CSetMorphism proj;
    std::vector<std::vector<int>> class_of; // per object: element -> apex element
};

QuotientResult quotient_by_pairs(const CSet& y,
                                 const std::vector<std::vector<std::pair<int, int>>>& pairs);

} // namespace modelspace
