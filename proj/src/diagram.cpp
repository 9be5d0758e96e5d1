#include "modelspace/diagram.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "modelspace/leftkan.hpp"

namespace modelspace {

bool diagrams_equal(const Diagram& a, const Diagram& b) {
    if (!(*a.shape == *b.shape)) return false;
    if (a.ob.size() != b.ob.size() || a.hom.size() != b.hom.size()) return false;
    for (size_t i = 0; i < a.ob.size(); ++i)
        if (!(a.ob[i] == b.ob[i])) return false;
    for (size_t g = 0; g < a.hom.size(); ++g)
        if (!(a.hom[g].components == b.hom[g].components)) return false;
    return true;
}

void validate_diagram_morphism(const DiagramMorphism& m) {
    validate_diagram(m.dom);
    validate_diagram(m.cod);
    check_functor_structure(m.shape_map);
    if (!(*m.shape_map.dom == *m.dom.shape) || !(*m.shape_map.cod == *m.cod.shape))
        throw MalformedInput("diagram morphism: shape map endpoints mismatch");
    if (m.phi.size() != m.dom.ob.size())
        throw MalformedInput("diagram morphism: phi arity mismatch");
    for (size_t i = 0; i < m.phi.size(); ++i) {
        if (!(m.phi[i].dom == m.dom.ob[i]) ||
            !(m.phi[i].cod == m.cod.ob[m.shape_map.object_map[i]]))
            throw MalformedInput(fmt::format("diagram morphism: phi[{}] endpoints mismatch", i));
        if (!is_natural(m.phi[i]))
            throw MalformedInput(fmt::format("diagram morphism: phi[{}] is not natural", i));
    }
    const FinCatPresentation& A = *m.dom.shape;
    for (size_t g = 0; g < A.generators.size(); ++g) {
        const Generator& gen = A.generators[g];
        CSetMorphism lhs = compose(m.phi[gen.src],
                                   compose_along(m.cod, m.shape_map.generator_map[g],
                                                 m.shape_map.object_map[gen.src]));
        CSetMorphism rhs = compose(m.dom.hom[g], m.phi[gen.tgt]);
        if (!(lhs.components == rhs.components))
            throw MalformedInput(
                fmt::format("diagram morphism: phi not natural along '{}'", gen.name));
    }
}

DiagramMorphism identity_diagram_morphism(const Diagram& d) {
    DiagramMorphism m;
    m.dom = m.cod = d;
    m.shape_map = identity_functor(d.shape);
    for (const auto& x : d.ob) m.phi.push_back(identity_morphism(x));
    return m;
}

DiagramMorphism compose(const DiagramMorphism& f, const DiagramMorphism& g) {
    if (!diagrams_equal(f.cod, g.dom))
        throw MalformedInput("compose: diagram morphism endpoints mismatch");
    DiagramMorphism h;
    h.dom = f.dom;
    h.cod = g.cod;
    h.shape_map = compose(f.shape_map, g.shape_map);
    for (size_t i = 0; i < f.phi.size(); ++i)
        h.phi.push_back(compose(f.phi[i], g.phi[f.shape_map.object_map[i]]));
    return h;
}

bool diagram_morphisms_equal(const DiagramMorphism& a, const DiagramMorphism& b, int budget) {
    if (!diagrams_equal(a.dom, b.dom) || !diagrams_equal(a.cod, b.cod)) return false;
    if (a.shape_map.object_map != b.shape_map.object_map) return false;
    for (size_t g = 0; g < a.shape_map.generator_map.size(); ++g)
        if (path_equal(*a.cod.shape, a.shape_map.generator_map[g],
                       b.shape_map.generator_map[g], budget) != Tri::equal)
            return false;
    for (size_t i = 0; i < a.phi.size(); ++i)
        if (!(a.phi[i].components == b.phi[i].components)) return false;
    return true;
}

void validate_typed_diagram(const TypedDiagram& t) {
    validate_diagram(t.diagram);
    if (t.typing.size() != t.diagram.ob.size())
        throw MalformedInput("typed diagram: typing arity mismatch");
    for (size_t i = 0; i < t.typing.size(); ++i) {
        if (!(t.typing[i].dom == t.diagram.ob[i]) || !(t.typing[i].cod == t.base))
            throw MalformedInput("typed diagram: typing endpoints mismatch");
        if (!is_natural(t.typing[i]))
            throw MalformedInput("typed diagram: typing is not natural");
    }
    const FinCatPresentation& shape = *t.diagram.shape;
    for (size_t g = 0; g < shape.generators.size(); ++g) {
        const Generator& gen = shape.generators[g];
        if (!(compose(t.diagram.hom[g], t.typing[gen.tgt]).components ==
              t.typing[gen.src].components))
            throw MalformedInput(fmt::format(
                "typed diagram: typing does not commute with '{}'", shape.generators[g].name));
    }
}

Diagram constant_diagram(const FinCatPtr& shape, const CSet& x) {
    Diagram d;
    d.shape = shape;
    d.ob.assign(shape->objects.size(), x);
    d.hom.assign(shape->generators.size(), identity_morphism(x));
    return d;
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

namespace {

int tuple_index(const std::vector<std::vector<int>>& tuples, const std::vector<int>& t) {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
    if (it == tuples.end() || *it != t) return -1;
    return static_cast<int>(it - tuples.begin());
}

} // namespace

DiagramProduct product(const std::vector<Diagram>& ds) {
    if (ds.empty()) throw MalformedInput("product of zero diagrams");
    for (const auto& d : ds) check_functorial(d);
    const FinCatPtr schema = ds[0].ob.empty() ? nullptr : ds[0].ob[0].schema;
    if (!schema) throw MalformedInput("product: empty factor diagram");

    DiagramProduct res;
    std::vector<FinCatPtr> shapes;
    for (const auto& d : ds) shapes.push_back(d.shape);
    res.shape_product = product(shapes);
    const FinCatProduct& sp = res.shape_product;

    res.apex.shape = sp.apex;
    for (const auto& t : sp.object_tuple) {
        std::vector<CSet> factors;
        for (size_t i = 0; i < ds.size(); ++i) factors.push_back(ds[i].ob[t[i]]);
        res.node_limits.push_back(product(factors));
        res.apex.ob.push_back(res.node_limits.back().apex);
    }
    size_t nschema = schema->objects.size();
    for (size_t pg = 0; pg < sp.gen_origin.size(); ++pg) {
        const auto& origin = sp.gen_origin[pg];
        int src_node = sp.apex->generators[pg].src;
        int tgt_node = sp.apex->generators[pg].tgt;
        const LimitResult& src_lim = res.node_limits[src_node];
        const LimitResult& tgt_lim = res.node_limits[tgt_node];
        const CSetMorphism& mover = ds[origin.factor].hom[origin.gen];
        CSetMorphism m;
        m.dom = src_lim.apex;
        m.cod = tgt_lim.apex;
        m.components.resize(nschema);
        for (size_t c = 0; c < nschema; ++c) {
            for (const auto& t : src_lim.tuples[c]) {
                std::vector<int> img = t;
                img[origin.factor] = mover.components[c][t[origin.factor]];
                int k = tuple_index(tgt_lim.tuples[c], img);
                if (k < 0) throw InternalError("diagram product: induced hom image missing");
                m.components[c].push_back(k);
            }
        }
        res.apex.hom.push_back(std::move(m));
    }
    validate_diagram(res.apex);

    for (size_t i = 0; i < ds.size(); ++i) {
        DiagramMorphism proj;
        proj.dom = res.apex;
        proj.cod = ds[i];
        proj.shape_map = sp.projections[i];
        for (size_t node = 0; node < res.apex.ob.size(); ++node)
            proj.phi.push_back(res.node_limits[node].legs[i]);
        res.projections.push_back(std::move(proj));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Equalizer
// ---------------------------------------------------------------------------

DiagramEqualizer equalizer(const std::vector<DiagramMorphism>& ms) {
    if (ms.empty()) throw MalformedInput("equalizer of an empty family");
    for (const auto& m : ms)
        if (!diagrams_equal(m.dom, ms[0].dom) || !diagrams_equal(m.cod, ms[0].cod))
            throw MalformedInput("equalizer: morphisms must be parallel");

    DiagramEqualizer res;
    std::vector<FinFunctor> fs;
    for (const auto& m : ms) fs.push_back(m.shape_map);
    res.shape_equalizer = equalizer(fs); // throws NonFreeCodomain when B is not free
    const FinCatEqualizer& se = res.shape_equalizer;
    const Diagram& A = ms[0].dom;
    const Diagram& B = ms[0].cod;

    res.apex.shape = se.sub;
    for (int a : se.object_sel) {
        std::vector<CSetMorphism> legs;
        for (const auto& m : ms) legs.push_back(m.phi[a]);
        res.node_limits.push_back(cset_equalizer(legs));
        res.apex.ob.push_back(res.node_limits.back().apex);
    }
    size_t nschema = A.ob.empty() ? 0 : A.ob[0].schema->objects.size();
    for (size_t g2 = 0; g2 < se.sub->generators.size(); ++g2) {
        int g = se.gen_sel[g2];
        const Generator& gen = A.shape->generators[g];
        int src_sub = se.sub->generators[g2].src;
        int tgt_sub = se.sub->generators[g2].tgt;
        const LimitResult& src_lim = res.node_limits[src_sub];
        const LimitResult& tgt_lim = res.node_limits[tgt_sub];
        // Pairs (x, y) move by (X(g), Y(F g)).
        const CSetMorphism& xmove = A.hom[g];
        CSetMorphism ymove = compose_along(B, ms[0].shape_map.generator_map[g],
                                           ms[0].shape_map.object_map[gen.src]);
        CSetMorphism m;
        m.dom = src_lim.apex;
        m.cod = tgt_lim.apex;
        m.components.resize(nschema);
        for (size_t c = 0; c < nschema; ++c) {
            for (const auto& t : src_lim.tuples[c]) {
                std::vector<int> img = {xmove.components[c][t[0]], ymove.components[c][t[1]]};
                int k = tuple_index(tgt_lim.tuples[c], img);
                if (k < 0) throw InternalError("diagram equalizer: induced hom image missing");
                m.components[c].push_back(k);
            }
        }
        res.apex.hom.push_back(std::move(m));
    }
    validate_diagram(res.apex);

    DiagramMorphism incl;
    incl.dom = res.apex;
    incl.cod = A;
    incl.shape_map = se.inclusion;
    for (size_t i = 0; i < res.apex.ob.size(); ++i) incl.phi.push_back(res.node_limits[i].legs[0]);
    res.inclusion = std::move(incl);
    validate_diagram_morphism(res.inclusion);
    return res;
}

// ---------------------------------------------------------------------------
// Coproduct
// ---------------------------------------------------------------------------

DiagramCoproduct coproduct(const std::vector<Diagram>& ds) {
    if (ds.empty()) throw MalformedInput("coproduct of zero diagrams");
    for (const auto& d : ds) check_functorial(d);
    DiagramCoproduct res;
    std::vector<FinCatPtr> shapes;
    for (const auto& d : ds) shapes.push_back(d.shape);
    res.shape_coproduct = coproduct(shapes);
    res.apex.shape = res.shape_coproduct.apex;
    for (const auto& d : ds) {
        res.apex.ob.insert(res.apex.ob.end(), d.ob.begin(), d.ob.end());
        res.apex.hom.insert(res.apex.hom.end(), d.hom.begin(), d.hom.end());
    }
    for (size_t i = 0; i < ds.size(); ++i) {
        DiagramMorphism inc;
        inc.dom = ds[i];
        inc.cod = res.apex;
        inc.shape_map = res.shape_coproduct.inclusions[i];
        for (const auto& x : ds[i].ob) inc.phi.push_back(identity_morphism(x));
        res.inclusions.push_back(std::move(inc));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Coequalizer via left Kan extensions
// ---------------------------------------------------------------------------

DiagramCoequalizer coequalizer(const std::vector<DiagramMorphism>& ms, int chase_budget) {
    if (ms.empty()) throw MalformedInput("coequalizer of an empty family");
    for (const auto& m : ms)
        if (!diagrams_equal(m.dom, ms[0].dom) || !diagrams_equal(m.cod, ms[0].cod))
            throw MalformedInput("coequalizer: morphisms must be parallel");
    const Diagram& A = ms[0].dom;
    const Diagram& B = ms[0].cod;

    DiagramCoequalizer res;
    std::vector<FinFunctor> fs;
    for (const auto& m : ms) fs.push_back(m.shape_map);
    res.shape_coequalizer = coequalizer(fs);
    const FinFunctor& H = res.shape_coequalizer.proj;

    res.lan_cod = std::make_shared<CSetKanResult>(leftkan_cset(B, H, chase_budget));
    FinFunctor F1H = compose(ms[0].shape_map, H);
    res.lan_dom = std::make_shared<CSetKanResult>(leftkan_cset(A, F1H, chase_budget));
    const Diagram& Z1 = res.lan_cod->lan;

    for (const auto& m : ms) {
        std::vector<CSetMorphism> cocone;
        for (size_t a = 0; a < A.ob.size(); ++a)
            cocone.push_back(
                compose(m.phi[a], res.lan_cod->unit.phi[m.shape_map.object_map[a]]));
        res.alphas.push_back(transpose(*res.lan_dom, Z1, cocone));
    }

    // Pointwise coequalizer of the alphas, one quotient per apex node.
    size_t nschema = B.ob[0].schema->objects.size();
    const FinCatPtr C = res.shape_coequalizer.apex;
    res.apex.shape = C;
    res.gamma.dom = Z1;
    res.gamma.shape_map = identity_functor(C);
    for (size_t c = 0; c < C->objects.size(); ++c) {
        std::vector<std::vector<std::pair<int, int>>> pairs(nschema);
        for (size_t s = 0; s < nschema; ++s) {
            int n0 = res.lan_dom->lan.ob[c].parts[s];
            for (int e = 0; e < n0; ++e)
                for (size_t i = 1; i < res.alphas.size(); ++i)
                    pairs[s].emplace_back(res.alphas[0].phi[c].components[s][e],
                                          res.alphas[i].phi[c].components[s][e]);
        }
        QuotientResult q = quotient_by_pairs(Z1.ob[c], pairs);
        res.gamma_class.push_back(q.class_of);
        res.apex.ob.push_back(q.apex);
        res.gamma.phi.push_back(q.proj);
    }
    // Induced homs on the quotients.
    for (size_t g = 0; g < C->generators.size(); ++g) {
        const Generator& gen = C->generators[g];
        CSetMorphism m;
        m.dom = res.apex.ob[gen.src];
        m.cod = res.apex.ob[gen.tgt];
        m.components.resize(nschema);
        for (size_t s = 0; s < nschema; ++s) {
            m.components[s].assign(res.apex.ob[gen.src].parts[s], -1);
            for (int e = 0; e < Z1.ob[gen.src].parts[s]; ++e) {
                int k = res.gamma_class[gen.src][s][e];
                int img = res.gamma_class[gen.tgt][s][Z1.hom[g].components[s][e]];
                if (m.components[s][k] == -1)
                    m.components[s][k] = img;
                else if (m.components[s][k] != img)
                    throw InternalError("diagram coequalizer: quotient hom ill-defined");
            }
        }
        res.apex.hom.push_back(std::move(m));
    }
    res.gamma.cod = res.apex;
    validate_diagram(res.apex);

    res.proj.dom = B;
    res.proj.cod = res.apex;
    res.proj.shape_map = H;
    for (size_t b = 0; b < B.ob.size(); ++b)
        res.proj.phi.push_back(
            compose(res.lan_cod->unit.phi[b], res.gamma.phi[H.object_map[b]]));
    validate_diagram_morphism(res.proj);
    return res;
}

DiagramPushout pushout(const DiagramMorphism& f, const DiagramMorphism& g, int chase_budget) {
    if (!diagrams_equal(f.dom, g.dom))
        throw MalformedInput("pushout: span legs must share their apex diagram");
    DiagramPushout res;
    res.cop = coproduct({f.cod, g.cod});
    DiagramMorphism m1 = compose(f, res.cop.inclusions[0]);
    DiagramMorphism m2 = compose(g, res.cop.inclusions[1]);
    res.coeq = coequalizer({m1, m2}, chase_budget);
    res.apex = res.coeq.apex;
    res.left = compose(res.cop.inclusions[0], res.coeq.proj);
    res.right = compose(res.cop.inclusions[1], res.coeq.proj);
    return res;
}

DiagramPullback pullback(const DiagramMorphism& f, const DiagramMorphism& g) {
    if (!diagrams_equal(f.cod, g.cod))
        throw MalformedInput("pullback: cospan legs must share their codomain");
    DiagramProduct prod = product({f.dom, g.dom});
    DiagramMorphism m1 = compose(prod.projections[0], f);
    DiagramMorphism m2 = compose(prod.projections[1], g);
    DiagramEqualizer eq = equalizer({m1, m2});
    DiagramPullback res;
    res.apex = eq.apex;
    res.left = compose(eq.inclusion, prod.projections[0]);
    res.right = compose(eq.inclusion, prod.projections[1]);
    return res;
}

// ---------------------------------------------------------------------------
// Typed operations
// ---------------------------------------------------------------------------

TypedProduct typed_product(const std::vector<TypedDiagram>& ds) {
    if (ds.empty()) throw MalformedInput("typed product of zero diagrams");
    for (const auto& d : ds) validate_typed_diagram(d);
    for (size_t i = 1; i < ds.size(); ++i)
        if (!(ds[i].base == ds[0].base))
            throw MalformedInput("typed product: bases differ");
    const CSet& base = ds[0].base;
    size_t nschema = base.schema->objects.size();

    TypedProduct res;
    std::vector<FinCatPtr> shapes;
    for (const auto& d : ds) shapes.push_back(d.diagram.shape);
    res.shape_product = product(shapes);
    const FinCatProduct& sp = res.shape_product;

    res.apex.base = base;
    res.apex.diagram.shape = sp.apex;
    for (const auto& t : sp.object_tuple) {
        std::vector<CSetMorphism> legs;
        for (size_t i = 0; i < ds.size(); ++i) legs.push_back(ds[i].typing[t[i]]);
        res.node_limits.push_back(pullback(legs));
        res.apex.diagram.ob.push_back(res.node_limits.back().apex);
        res.apex.typing.push_back(res.node_limits.back().legs.back());
    }
    for (size_t pg = 0; pg < sp.gen_origin.size(); ++pg) {
        const auto& origin = sp.gen_origin[pg];
        int src_node = sp.apex->generators[pg].src;
        int tgt_node = sp.apex->generators[pg].tgt;
        const LimitResult& src_lim = res.node_limits[src_node];
        const LimitResult& tgt_lim = res.node_limits[tgt_node];
        const CSetMorphism& mover = ds[origin.factor].diagram.hom[origin.gen];
        CSetMorphism m;
        m.dom = src_lim.apex;
        m.cod = tgt_lim.apex;
        m.components.resize(nschema);
        for (size_t c = 0; c < nschema; ++c) {
            for (const auto& t : src_lim.tuples[c]) {
                std::vector<int> img = t; // base coordinate is untouched
                img[origin.factor] = mover.components[c][t[origin.factor]];
                int k = tuple_index(tgt_lim.tuples[c], img);
                if (k < 0) throw InternalError("typed product: induced hom image missing");
                m.components[c].push_back(k);
            }
        }
        res.apex.diagram.hom.push_back(std::move(m));
    }
    validate_typed_diagram(res.apex);

    for (size_t i = 0; i < ds.size(); ++i) {
        DiagramMorphism proj;
        proj.dom = res.apex.diagram;
        proj.cod = ds[i].diagram;
        proj.shape_map = sp.projections[i];
        for (size_t node = 0; node < res.apex.diagram.ob.size(); ++node)
            proj.phi.push_back(res.node_limits[node].legs[i]);
        validate_diagram_morphism(proj);
        res.projections.push_back(std::move(proj));
    }
    return res;
}

TypedCoproduct typed_coproduct(const std::vector<TypedDiagram>& ds) {
    if (ds.empty()) throw MalformedInput("typed coproduct of zero diagrams");
    for (size_t i = 1; i < ds.size(); ++i)
        if (!(ds[i].base == ds[0].base))
            throw MalformedInput("typed coproduct: bases differ");
    std::vector<Diagram> under;
    for (const auto& d : ds) under.push_back(d.diagram);
    DiagramCoproduct cp = coproduct(under);
    TypedCoproduct res;
    res.apex.diagram = cp.apex;
    res.apex.base = ds[0].base;
    for (const auto& d : ds)
        res.apex.typing.insert(res.apex.typing.end(), d.typing.begin(), d.typing.end());
    res.inclusions = cp.inclusions;
    validate_typed_diagram(res.apex);
    return res;
}

TypedPushout typed_pushout(const TypedDiagram& apex_t, const TypedDiagram& left_t,
                           const TypedDiagram& right_t, const DiagramMorphism& f,
                           const DiagramMorphism& g, int chase_budget) {
    validate_typed_diagram(apex_t);
    validate_typed_diagram(left_t);
    validate_typed_diagram(right_t);
    if (!(left_t.base == apex_t.base) || !(right_t.base == apex_t.base))
        throw MalformedInput("typed pushout: bases differ");
    if (!diagrams_equal(f.dom, apex_t.diagram) || !diagrams_equal(g.dom, apex_t.diagram))
        throw MalformedInput("typed pushout: span legs must share the apex diagram");
    if (!diagrams_equal(f.cod, left_t.diagram) || !diagrams_equal(g.cod, right_t.diagram))
        throw MalformedInput("typed pushout: leg codomains do not match the typed inputs");
    // Legs must respect typing.
    for (size_t a = 0; a < apex_t.diagram.ob.size(); ++a) {
        if (!(compose(f.phi[a], left_t.typing[f.shape_map.object_map[a]]).components ==
              apex_t.typing[a].components) ||
            !(compose(g.phi[a], right_t.typing[g.shape_map.object_map[a]]).components ==
              apex_t.typing[a].components))
            throw MalformedInput("typed pushout: span legs do not respect the typing");
    }

    DiagramPushout po = pushout(f, g, chase_budget);

    // Typing on the coproduct (B ⊔ C) descends to the glued space.
    std::vector<CSetMorphism> cp_typing = left_t.typing;
    cp_typing.insert(cp_typing.end(), right_t.typing.begin(), right_t.typing.end());

    TypedPushout res;
    res.apex.diagram = po.apex;
    res.apex.base = apex_t.base;
    res.apex.typing = induce_coequalizer_typing(po.coeq, apex_t.base, cp_typing);
    validate_typed_diagram(res.apex);
    res.left = po.left;
    res.right = po.right;
    res.underlying = std::move(po);
    return res;
}

std::vector<CSetMorphism> induce_coequalizer_typing(const DiagramCoequalizer& ce,
                                                    const CSet& base,
                                                    const std::vector<CSetMorphism>& cod_typing) {
    // Transpose the typing cocone through Lan_H, then check it is constant on
    // the classes of the pointwise coequalizer gamma.
    const FinCatPtr C = ce.shape_coequalizer.apex;
    Diagram constX = constant_diagram(C, base);
    DiagramMorphism t1 = transpose(*ce.lan_cod, constX, cod_typing);

    std::vector<CSetMorphism> out;
    size_t nschema = base.schema->objects.size();
    for (size_t c = 0; c < C->objects.size(); ++c) {
        CSetMorphism typing;
        typing.dom = ce.apex.ob[c];
        typing.cod = base;
        typing.components.resize(nschema);
        for (size_t s = 0; s < nschema; ++s) {
            typing.components[s].assign(ce.apex.ob[c].parts[s], -1);
            int n = ce.lan_cod->lan.ob[c].parts[s];
            for (int e = 0; e < n; ++e) {
                int k = ce.gamma_class[c][s][e];
                int v = t1.phi[c].components[s][e];
                if (typing.components[s][k] == -1)
                    typing.components[s][k] = v;
                else if (typing.components[s][k] != v)
                    throw MalformedInput("typing is not constant on glued classes");
            }
        }
        out.push_back(std::move(typing));
    }
    return out;
}

} // namespace modelspace
