#pragma once

#include <vector>

#include "modelspace/diagram.hpp"

namespace modelspace {

/// Where an element of a chased diagram came from: an element of the input
/// diagram pushed forward along a generator path of the target shape.
struct Provenance {
    int origin_node = -1;
    int origin_elem = -1;
    std::vector<int> path; // generator indices in the lan shape

    bool operator==(const Provenance& o) const = default;
};

/// A Set-valued diagram on a presented shape: a finite set per object and a
/// total map per generator. Provenance is populated by the chase.
struct SetDiagram {
    FinCatPtr shape;
    std::vector<int> sets;
    std::vector<std::vector<int>> maps;
    std::vector<std::vector<Provenance>> provenance; // empty when not tracked
};

std::vector<std::string> validate_set_diagram(const SetDiagram& x);

int apply_set_path(const SetDiagram& x, const Path& p, int elem);

struct KanResult {
    SetDiagram lan;
    std::vector<std::vector<int>> unit; // per dom object: into lan at F(j)
};

/// Pushout-based chase: freely adds elements for undefined generator actions
/// and merges elements forced equal by shape equations and by naturality of
/// the unit, until saturation. Throws ChaseBudgetExceeded after `budget`
/// rounds, which signals a potentially infinite Kan extension.
KanResult chase_set(const SetDiagram& x, const FinFunctor& f, int budget = 1000);

/// Mediating maps lan -> target induced by a natural cocone x -> F;target,
/// computed through element provenance. Throws IllFormedCocone when the
/// cocone is not natural or the induced maps are inconsistent.
std::vector<std::vector<int>> transpose_set(const KanResult& kan, const SetDiagram& x,
                                            const FinFunctor& f, const SetDiagram& target,
                                            const std::vector<std::vector<int>>& cocone);

// ---------------------------------------------------------------------------
// Tensor-hom: diagrams in C-Set over J <-> diagrams in Set over J x C
// ---------------------------------------------------------------------------

struct TensorHom {
    FinCatProduct shape_product; // product of (shape, schema)
    SetDiagram set_diagram;
};

TensorHom tensor_hom(const Diagram& d);

Diagram tensor_hom_inverse(const SetDiagram& sd, const FinCatProduct& prod,
                           const FinCatPtr& shape, const FinCatPtr& schema);

// ---------------------------------------------------------------------------
// Left Kan extension of C-set-valued diagrams
// ---------------------------------------------------------------------------

struct CSetKanResult {
    Diagram lan;          // over the codomain shape
    DiagramMorphism unit; // shape map F
    KanResult set_result; // over (cod shape) x schema, with provenance
    SetDiagram x_prime;   // tensor-hommed input
    FinFunctor f_prime;   // F x id_schema
    FinCatProduct dom_product;
    FinCatProduct cod_product;
};

/// leftkan = tensor-hom, chase along F x C, inverse tensor-hom.
CSetKanResult leftkan_cset(const Diagram& d, const FinFunctor& f, int budget = 1000);

/// Universal factorization: the diagram morphism lan -> target (identity
/// shape map) induced by a natural cocone {X(j) -> target(F j)}.
DiagramMorphism transpose(const CSetKanResult& kan, const Diagram& target,
                          const std::vector<CSetMorphism>& cocone);

} // namespace modelspace
