#pragma once

#include <vector>

#include "modelspace/cset.hpp"

namespace modelspace {

/// A model space: a functor from a presented shape category into C-Set,
/// stored on generators. Same data layout the cset (co)limit routines take.
using Diagram = CSetDiagramData;

/// Throws MalformedInput unless the diagram is functorial (endpoints agree,
/// homs natural, shape equations hold as equalities of composites).
inline void validate_diagram(const Diagram& d) { check_functorial(d); }

bool diagrams_equal(const Diagram& a, const Diagram& b);

/// A morphism of diagrams: a shape functor F plus a natural family of C-set
/// morphisms phi[i] : X(i) -> Y(F i).
struct DiagramMorphism {
    Diagram dom;
    Diagram cod;
    FinFunctor shape_map;
    std::vector<CSetMorphism> phi;
};

void validate_diagram_morphism(const DiagramMorphism& m);
DiagramMorphism identity_diagram_morphism(const Diagram& d);
DiagramMorphism compose(const DiagramMorphism& f, const DiagramMorphism& g);

/// Componentwise equality; shape maps compared up to the path congruence.
bool diagram_morphisms_equal(const DiagramMorphism& a, const DiagramMorphism& b,
                             int budget = 10000);

/// A diagram of models typed over a base C-set X (slice-style): one typing
/// morphism per node, commuting with every hom.
struct TypedDiagram {
    Diagram diagram;
    CSet base;
    std::vector<CSetMorphism> typing;
};

void validate_typed_diagram(const TypedDiagram& t);

Diagram constant_diagram(const FinCatPtr& shape, const CSet& x);

// ---------------------------------------------------------------------------
// Limits and colimits in Diag(C-Set)
// ---------------------------------------------------------------------------

struct DiagramProduct {
    Diagram apex;
    std::vector<DiagramMorphism> projections;
    FinCatProduct shape_product;
    std::vector<LimitResult> node_limits; // per apex shape object
};

/// Shape is the product of shapes; node contents are pointwise products with
/// hom maps induced coordinatewise.
DiagramProduct product(const std::vector<Diagram>& ds);

struct DiagramEqualizer {
    Diagram apex;
    DiagramMorphism inclusion;
    FinCatEqualizer shape_equalizer;
    std::vector<LimitResult> node_limits;
};

/// Equalizer on the shape level (codomain shape must be free) and pointwise
/// C-set equalizers at each surviving node.
DiagramEqualizer equalizer(const std::vector<DiagramMorphism>& ms);

struct DiagramCoproduct {
    Diagram apex;
    std::vector<DiagramMorphism> inclusions;
    FinCatCoproduct shape_coproduct;
};

DiagramCoproduct coproduct(const std::vector<Diagram>& ds);

struct QuotientResult;          // cset.hpp
struct CSetKanResult;           // leftkan.hpp

struct DiagramCoequalizer {
    Diagram apex;         // (C, Z)
    DiagramMorphism proj; // (H, kappa;gamma)
    FinCatCoequalizer shape_coequalizer;
    // Intermediates of the construction, kept for factorization and typing:
    std::shared_ptr<CSetKanResult> lan_cod; // Lan_H Y with chase provenance
    std::shared_ptr<CSetKanResult> lan_dom; // Lan_{F1;H} X
    std::vector<DiagramMorphism> alphas;    // transposes Lan_{FH}X -> Lan_H Y
    DiagramMorphism gamma;                  // pointwise coequalizer projection
    std::vector<std::vector<std::vector<int>>> gamma_class; // node -> obj -> elem class
};

/// Coequalizer via the shape coequalizer H, the two left Kan extensions, and
/// a pointwise coequalizer of the transposed comparison maps.
DiagramCoequalizer coequalizer(const std::vector<DiagramMorphism>& ms, int chase_budget = 1000);

struct DiagramPushout {
    Diagram apex;
    DiagramMorphism left;  // from f.cod
    DiagramMorphism right; // from g.cod
    DiagramCoequalizer coeq;
    DiagramCoproduct cop;
};

DiagramPushout pushout(const DiagramMorphism& f, const DiagramMorphism& g,
                       int chase_budget = 1000);

struct DiagramPullback {
    Diagram apex;
    DiagramMorphism left;  // to f.dom
    DiagramMorphism right; // to g.dom
};

DiagramPullback pullback(const DiagramMorphism& f, const DiagramMorphism& g);

// ---------------------------------------------------------------------------
// Typed (slice-style) operations over a shared base X
// ---------------------------------------------------------------------------

struct TypedProduct {
    TypedDiagram apex;
    std::vector<DiagramMorphism> projections;
    FinCatProduct shape_product;
    std::vector<LimitResult> node_limits; // wide pullbacks over the base
};

/// Product in the slice over X: nodewise C-set pullbacks over the base, shape
/// product, typing given by the apex coordinate of each pullback.
TypedProduct typed_product(const std::vector<TypedDiagram>& ds);

struct TypedCoproduct {
    TypedDiagram apex;
    std::vector<DiagramMorphism> inclusions;
};

TypedCoproduct typed_coproduct(const std::vector<TypedDiagram>& ds);

struct TypedPushout {
    TypedDiagram apex;
    DiagramMorphism left;
    DiagramMorphism right;
    DiagramPushout underlying;
};

/// Pushout of typed diagrams along typing-compatible legs; the result typing
/// is induced through the chase provenance and verified.
TypedPushout typed_pushout(const TypedDiagram& base_a, const TypedDiagram& base_b,
                           const TypedDiagram& base_c, const DiagramMorphism& f,
                           const DiagramMorphism& g, int chase_budget = 1000);

/// Typing on a coequalizer apex, transposed from typing on the codomain
/// diagram and checked to be constant on glued classes.
std::vector<CSetMorphism> induce_coequalizer_typing(const DiagramCoequalizer& ce,
                                                    const CSet& base,
                                                    const std::vector<CSetMorphism>& cod_typing);

} // namespace modelspace
